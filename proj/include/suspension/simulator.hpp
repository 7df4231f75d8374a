#pragma once

// Suspension flow evaluation, cylinder hitting times, witness families and
// residue diagnostics for mixing.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "roofs.hpp"
#include "shift.hpp"

namespace suspension {

/// (x, h) with 0 <= h < r(x).
struct SuspensionPoint {
  EventuallyPeriodicPoint base;
  double height = 0.0;
  /// Set when the final height landed within the float guard of a fiber end.
  bool precision_warning = false;
};

namespace detail {

constexpr double kHeightGuard = 1e-12;

/// Signed Birkhoff sum S_pos along the itinerary of one base point: exact
/// QVector sums for locally constant roofs, doubles for evaluable ones.
class ExactWalker {
public:
  ExactWalker(const LocallyConstantRoof& r, const EventuallyPeriodicPoint& p) : r_(r), p_(p), sum_(r.basis()) {}

  double sum() const { return sum_.value(); }
  const QVector& exact_sum() const { return sum_; }
  long position() const { return pos_; }
  double next_value() const { return r_.at(p_, pos_).value(); }
  double prev_value() const { return r_.at(p_, pos_ - 1).value(); }

  void forward() {
    sum_ += r_.at(p_, pos_);
    ++pos_;
  }
  void backward() {
    --pos_;
    sum_ -= r_.at(p_, pos_);
  }

  /// Jumps whole right-tail periods while sum + k·period <= limit.
  void skip_forward(double limit) {
    const long past = static_cast<long>(r_.past());
    if (pos_ - past < p_.core_end())
      return;
    const long len = static_cast<long>(p_.right_period().size());
    QVector per(r_.basis());
    for (long j = 0; j < len; ++j)
      per += r_.at(p_, pos_ + j);
    const double pv = per.value();
    const double room = limit - sum();
    if (room <= 2 * pv)
      return;
    const long k = static_cast<long>(std::floor(room / pv)) - 1;
    if (k <= 0)
      return;
    sum_ += per * Rational(k);
    pos_ += k * len;
  }

  /// Mirror image in the left tail, keeping sum - k·period > limit.
  void skip_backward(double limit) {
    const long future = static_cast<long>(r_.future());
    if (pos_ - 1 + future >= p_.core_start())
      return;
    const long len = static_cast<long>(p_.left_period().size());
    QVector per(r_.basis());
    for (long j = 1; j <= len; ++j)
      per += r_.at(p_, pos_ - j);
    const double pv = per.value();
    const double room = sum() - limit;
    if (room <= 2 * pv)
      return;
    const long k = static_cast<long>(std::floor(room / pv)) - 1;
    if (k <= 0)
      return;
    sum_ -= per * Rational(k);
    pos_ -= k * len;
  }

private:
  const LocallyConstantRoof& r_;
  const EventuallyPeriodicPoint& p_;
  QVector sum_;
  long pos_ = 0;
};

class FloatWalker {
public:
  FloatWalker(const EvaluableRoof& r, const EventuallyPeriodicPoint& p) : r_(r), p_(p) {}

  double sum() const { return sum_; }
  long position() const { return pos_; }
  double next_value() { return value_at(pos_); }
  double prev_value() { return value_at(pos_ - 1); }

  void forward() {
    sum_ += value_at(pos_);
    ++pos_;
  }
  void backward() {
    --pos_;
    sum_ -= value_at(pos_);
  }
  void skip_forward(double) {}
  void skip_backward(double) {}

private:
  static constexpr long kChunk = 512;

  double value_at(long j) {
    if (!filled_ || j < chunk_start_ || j >= chunk_start_ + kChunk) {
      chunk_start_ = (!filled_ || j >= chunk_start_) ? j : j - kChunk + 1;
      r_.values(p_, chunk_start_, cache_);
      filled_ = true;
    }
    return cache_[static_cast<std::size_t>(j - chunk_start_)];
  }

  const EvaluableRoof& r_;
  const EventuallyPeriodicPoint& p_;
  double sum_ = 0.0;
  long pos_ = 0;
  long chunk_start_ = 0;
  bool filled_ = false;
  std::vector<double> cache_ = std::vector<double>(kChunk);
};

template <class Walker>
SuspensionPoint flow_with(Walker walker, const EventuallyPeriodicPoint& base, double height, double t) {
  const double target = height + t;
  if (target >= 0) {
    for (;;) {
      walker.skip_forward(target);
      if (walker.sum() + walker.next_value() > target)
        break;
      walker.forward();
    }
  } else {
    while (walker.sum() > target) {
      walker.skip_backward(target);
      walker.backward();
    }
  }
  const double h = target - walker.sum();
  SuspensionPoint out{base.shifted(walker.position()), h, false};
  double r = walker.next_value();
  double scale = std::max(1.0, std::abs(target));
  if (h < 0) {
    out.precision_warning = h < -kHeightGuard * scale;
    out.height = 0.0;
  } else if (h >= r - kHeightGuard * scale) {
    out.precision_warning = h >= r;
    walker.forward();
    out.base = base.shifted(walker.position());
    out.height = std::max(0.0, h - r);
  }
  return out;
}

} // namespace detail

/// phi^t(x, h): the point (sigma^n x, h') with S_n r(x) + h' = t + h and
/// 0 <= h' < r(sigma^n x). Negative t runs the flow backwards.
inline SuspensionPoint flow(const SuspensionPoint& p, double t, const LocallyConstantRoof& roof) {
  const double r0 = roof.at(p.base).value();
  if (p.height < 0 || p.height >= r0 + detail::kHeightGuard)
    throw InvalidArgument("height outside [0, r(base))");
  return detail::flow_with(detail::ExactWalker(roof, p.base), p.base, p.height, t);
}

inline SuspensionPoint flow(const SuspensionPoint& p, double t, const EvaluableRoof& roof) {
  const double r0 = roof(p.base);
  if (p.height < 0 || p.height >= r0 + detail::kHeightGuard)
    throw InvalidArgument("height outside [0, r(base))");
  return detail::flow_with(detail::FloatWalker(roof, p.base), p.base, p.height, t);
}

struct ReturnTimeSeries {
  Word target;
  double epsilon = 0.0;
  double omega = 1.0;
  std::vector<double> times;
};

struct HittingOptions {
  std::size_t max_hits_per_member = 0; ///< 0: no cap
  std::size_t threads = 0;             ///< 0: hardware concurrency
};

namespace detail {

inline bool in_cylinder(const EventuallyPeriodicPoint& p, long pos, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (p.at(pos + static_cast<long>(i)) != w[i])
      return false;
  return true;
}

template <class Walker>
void member_hits(Walker walker, const SuspensionPoint& m, const Word& target, double horizon, std::size_t cap,
                 std::vector<double>& out) {
  std::size_t count = 0;
  for (;;) {
    double t = walker.sum() - m.height;
    if (t > horizon)
      return;
    if (t >= 0 && in_cylinder(m.base, walker.position(), target)) {
      out.push_back(t);
      if (cap && ++count >= cap)
        return;
    }
    walker.forward();
  }
}

/// Locally constant roofs: once the itinerary is inside the right tail, one
/// period of hits repeats with the period's Birkhoff sum.
inline void member_hits_periodic(const LocallyConstantRoof& r, const SuspensionPoint& m, const Word& target,
                                 double horizon, std::size_t cap, std::vector<double>& out) {
  const auto& p = m.base;
  const long past = static_cast<long>(r.past());
  const long tail_start = std::max(p.core_end() + past, p.core_end());
  QVector sum(r.basis());
  std::size_t count = 0;
  long pos = 0;
  // Walk to the start of the periodic regime (or to the horizon).
  if (tail_start > 0) {
    for (; pos < tail_start; ++pos) {
      double t = sum.value() - m.height;
      if (t > horizon)
        return;
      if (t >= 0 && in_cylinder(p, pos, target)) {
        out.push_back(t);
        if (cap && ++count >= cap)
          return;
      }
      sum += r.at(p, pos);
    }
  } else {
    // Before the start, still in the tail regime; hits at pos >= 0 only.
    pos = 0;
  }
  const long len = static_cast<long>(p.right_period().size());
  std::vector<QVector> offsets;
  QVector acc(r.basis());
  for (long j = 0; j < len; ++j) {
    if (in_cylinder(p, pos + j, target))
      offsets.push_back(acc);
    acc += r.at(p, pos + j);
  }
  if (offsets.empty())
    return;
  for (long k = 0;; ++k) {
    QVector base = sum + acc * Rational(k);
    for (const auto& off : offsets) {
      double t = (base + off).value() - m.height;
      if (t > horizon)
        return;
      if (t >= 0) {
        out.push_back(t);
        if (cap && ++count >= cap)
          return;
      }
    }
  }
}

inline std::vector<double> merge_sorted_unique(std::vector<std::vector<double>> parts) {
  std::vector<double> all;
  for (auto& p : parts)
    all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double t : all)
    if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, std::abs(t)))
      out.push_back(t);
  return out;
}

template <class Fn>
std::vector<double> parallel_members(std::size_t members, std::size_t threads, Fn fn) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(members, 1));
  std::vector<std::future<std::vector<double>>> jobs;
  for (std::size_t t = 0; t < threads; ++t)
    jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, [=, &fn] {
      std::vector<double> out;
      for (std::size_t i = t; i < members; i += threads)
        fn(i, out);
      return out;
    }));
  std::vector<std::vector<double>> parts;
  for (auto& j : jobs)
    parts.push_back(j.get());
  return merge_sorted_unique(std::move(parts));
}

} // namespace detail

/// Times t <= horizon at which the segment {x} × (h, h + ε) of some family
/// member (x, h) is carried onto [target] × (0, ε): t = S_n r(x) - h with
/// sigma^n x in [target].
inline ReturnTimeSeries hitting_times(const std::vector<SuspensionPoint>& family, const Word& target, double epsilon,
                                      const LocallyConstantRoof& roof, double horizon, double omega,
                                      HittingOptions options = {}) {
  if (family.empty())
    throw InvalidArgument("hitting_times needs a nonempty family");
  if (!(epsilon > 0) || epsilon >= roof.min_value())
    throw InvalidArgument("epsilon must lie strictly between 0 and the minimum roof value");
  if (!(omega > 0))
    throw InvalidArgument("reference period must be positive");
  ReturnTimeSeries out{target, epsilon, omega, {}};
  out.times = detail::parallel_members(family.size(), options.threads, [&](std::size_t i, std::vector<double>& acc) {
    detail::member_hits_periodic(roof, family[i], target, horizon, options.max_hits_per_member, acc);
  });
  return out;
}

inline ReturnTimeSeries hitting_times(const std::vector<SuspensionPoint>& family, const Word& target, double epsilon,
                                      const EvaluableRoof& roof, double horizon, double omega,
                                      HittingOptions options = {}) {
  if (family.empty())
    throw InvalidArgument("hitting_times needs a nonempty family");
  if (!(epsilon > 0) || epsilon >= roof.floor())
    throw InvalidArgument("epsilon must lie strictly between 0 and the roof floor");
  if (!(omega > 0))
    throw InvalidArgument("reference period must be positive");
  ReturnTimeSeries out{target, epsilon, omega, {}};
  out.times = detail::parallel_members(family.size(), options.threads, [&](std::size_t i, std::vector<double>& acc) {
    detail::member_hits(detail::FloatWalker(roof, family[i].base), family[i], target, horizon,
                        options.max_hits_per_member, acc);
  });
  return out;
}

struct WitnessPoint {
  std::size_t first_count;
  std::size_t second_count;
  EventuallyPeriodicPoint point;
};

/// Points L^∞ u w v1^n v2^m ζ^∞ with p_0 the first symbol of u, for n in
/// `first_counts` and m in `second_counts`. The left tail is a cycle of the
/// presentation that can precede the rest.
inline std::vector<WitnessPoint> witness_family(const EdgeShift& shift, const Word& u, const Word& w, const Word& v1,
                                                const Word& v2, const Word& zeta,
                                                const std::vector<std::size_t>& first_counts,
                                                const std::vector<std::size_t>& second_counts) {
  if (zeta.empty())
    throw InvalidArgument("right tail word must be nonempty");
  std::vector<WitnessPoint> out;
  const std::size_t nv = shift.vertex_count();
  const Word tail = power(zeta, nv + 1);
  for (auto n : first_counts)
    for (auto m : second_counts) {
      Word core = concat({u, w, power(v1, n), power(v2, m)});
      std::optional<EventuallyPeriodicPoint> found;
      for (std::size_t s = 0; s < nv && !found; ++s) {
        VertexSet start(nv, false);
        start[s] = true;
        if (!any_of(shift.follow(shift.follow(start, core), tail)))
          continue;
        EventuallyPeriodicPoint candidate(cycle_through(shift, s), core, zeta, 0);
        if (is_point_admissible(shift, candidate))
          found = candidate;
      }
      if (!found)
        throw NotAdmissible("witness concatenation is not admissible for n = " + std::to_string(n) +
                            ", m = " + std::to_string(m));
      out.push_back({n, m, *found});
    }
  return out;
}

struct DenseSolution {
  long n;
  long m;
  long k;
};

/// Naturals n, m <= bound (not both zero) and an integer k with
/// |n a + m b - x - k ω| < δ. Scans by increasing n + m, or decreasing when
/// large solutions are preferred.
inline std::optional<DenseSolution> gcd_dense_solve(double a, double b, double omega, double x, double delta,
                                                    long bound, bool prefer_large = false) {
  if (!(a > 0) || !(b > 0) || !(omega > 0) || !(delta > 0))
    throw InvalidArgument("a, b, omega and delta must be positive");
  if (bound < 0)
    throw InvalidArgument("search bound must be non-negative");
  auto test = [&](long n, long m) -> std::optional<DenseSolution> {
    double y = static_cast<double>(n) * a + static_cast<double>(m) * b - x;
    long k = std::lround(y / omega);
    if (std::abs(y - static_cast<double>(k) * omega) < delta)
      return DenseSolution{n, m, k};
    return std::nullopt;
  };
  if (!prefer_large) {
    for (long s = 1; s <= 2 * bound; ++s)
      for (long n = std::max(0L, s - bound); n <= std::min(s, bound); ++n)
        if (auto hit = test(n, s - n))
          return hit;
  } else {
    for (long s = 2 * bound; s >= 1; --s)
      for (long n = std::min(s, bound); n >= std::max(0L, s - bound); --n)
        if (auto hit = test(n, s - n))
          return hit;
  }
  return std::nullopt;
}

struct DiagnosticOptions {
  std::size_t bins = 10;
  double grid_threshold = 0.99;
  std::size_t min_samples = 10;
};

struct MixingDiagnostic {
  double omega = 1.0;
  double epsilon = 0.0;
  std::vector<double> residues; ///< sorted, in [0, omega)
  double max_gap = 0.0;         ///< circular
  std::optional<double> candidate_delta;
  std::optional<double> grid_fraction;
  std::string suggestion;
  std::string note;
  std::vector<std::size_t> bin_counts;
  std::vector<double> bin_max_gap;
};

/// Residues of the hitting times modulo ω and their largest circular gap.
/// Gaps no larger than ε are what mixing predicts; times concentrating
/// within 2ε of a grid δZ are what non-mixing forces.
inline MixingDiagnostic density_diagnostic(const ReturnTimeSeries& series, std::optional<double> candidate_delta,
                                           DiagnosticOptions options = {}) {
  if (series.times.size() < options.min_samples)
    throw InvalidArgument("under-sampled: " + std::to_string(series.times.size()) + " hitting times, need at least " +
                          std::to_string(options.min_samples));
  if (options.bins == 0)
    throw InvalidArgument("need at least one bin");
  MixingDiagnostic d;
  d.omega = series.omega;
  d.epsilon = series.epsilon;
  d.candidate_delta = candidate_delta;
  const double w = series.omega;
  for (double t : series.times) {
    double r = std::fmod(t, w);
    if (r < 0)
      r += w;
    if (r >= w)
      r = 0;
    d.residues.push_back(r);
  }
  std::sort(d.residues.begin(), d.residues.end());
  d.max_gap = w - d.residues.back() + d.residues.front();
  for (std::size_t i = 1; i < d.residues.size(); ++i)
    d.max_gap = std::max(d.max_gap, d.residues[i] - d.residues[i - 1]);
  d.max_gap = std::min(d.max_gap, w);

  d.bin_counts.assign(options.bins, 0);
  d.bin_max_gap.assign(options.bins, 0.0);
  const double width = w / static_cast<double>(options.bins);
  std::vector<double> last(options.bins);
  for (std::size_t b = 0; b < options.bins; ++b)
    last[b] = static_cast<double>(b) * width;
  for (double r : d.residues) {
    auto b = std::min(options.bins - 1, static_cast<std::size_t>(r / width));
    ++d.bin_counts[b];
    d.bin_max_gap[b] = std::max(d.bin_max_gap[b], r - last[b]);
    last[b] = r;
  }
  for (std::size_t b = 0; b < options.bins; ++b)
    d.bin_max_gap[b] = std::max(d.bin_max_gap[b], static_cast<double>(b + 1) * width - last[b]);

  if (candidate_delta) {
    if (!(*candidate_delta > 0))
      throw InvalidArgument("candidate delta must be positive");
    std::size_t near = 0;
    for (double t : series.times) {
      double off = t - *candidate_delta * std::round(t / *candidate_delta);
      if (std::abs(off) <= 2 * series.epsilon)
        ++near;
    }
    d.grid_fraction = static_cast<double>(near) / static_cast<double>(series.times.size());
  }
  if (d.grid_fraction && *d.grid_fraction >= options.grid_threshold) {
    d.suggestion = "non-mixing-consistent";
    d.note = "hitting times concentrate near the candidate grid";
  } else if (d.max_gap <= series.epsilon) {
    d.suggestion = "mixing-consistent";
    d.note = "residues cover the period with gaps below epsilon";
  } else {
    d.suggestion = "inconclusive";
    d.note = "residue gaps exceed epsilon; more samples or a longer horizon may help";
  }
  return d;
}

namespace detail {

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream f(path);
  if (!f)
    throw Error("cannot open " + path + ": " + std::strerror(errno));
  f << std::setprecision(17);
  return f;
}

inline void finish_write(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f)
    throw Error("write to " + path + " failed: " + std::strerror(errno));
}

} // namespace detail

/// CSV "time,residue", one row per hitting time in increasing order.
inline void export_series(const ReturnTimeSeries& series, const std::string& path) {
  auto f = detail::open_for_write(path);
  f << "time,residue\n";
  for (double t : series.times) {
    double r = std::fmod(t, series.omega);
    if (r < 0)
      r += series.omega;
    f << t << ',' << r << '\n';
  }
  detail::finish_write(f, path);
}

/// CSV "bin,count,max_gap".
inline void export_diagnostic(const MixingDiagnostic& d, const std::string& path) {
  auto f = detail::open_for_write(path);
  f << "bin,count,max_gap\n";
  for (std::size_t b = 0; b < d.bin_counts.size(); ++b)
    f << b << ',' << d.bin_counts[b] << ',' << d.bin_max_gap[b] << '\n';
  detail::finish_write(f, path);
}

/// Rows of a numeric CSV written by the exporters (header skipped).
inline std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw Error("cannot open " + path + ": " + std::strerror(errno));
  std::string line;
  std::getline(f, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.empty())
      continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace suspension
