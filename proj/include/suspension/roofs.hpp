#pragma once

// Roof functions: locally constant roofs with exact values, float roofs
// with a variation modulus, Birkhoff sums and edge-weight translation.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "commensurability.hpp"
#include "shift.hpp"

namespace suspension {

/// f(x) = table[x_{start} ... x_{start+length-1}]. Used for roofs and for
/// transfer functions; values need not be positive.
class WindowFunction {
public:
  WindowFunction(BasisPtr basis, long start, std::size_t length, std::map<Word, QVector> table)
      : basis_(std::move(basis)), start_(start), length_(length), table_(std::move(table)) {
    for (const auto& [w, v] : table_) {
      if (w.size() != length_)
        throw InvalidArgument("window of length " + std::to_string(w.size()) + ", expected " +
                              std::to_string(length_));
      if (!same_basis(v.basis(), basis_))
        throw InvalidArgument("table value uses a different basis");
    }
  }

  const BasisPtr& basis() const { return basis_; }
  long start() const { return start_; }
  std::size_t length() const { return length_; }
  const std::map<Word, QVector>& table() const { return table_; }

  const QVector& value(const Word& window) const {
    auto it = table_.find(window);
    if (it == table_.end())
      throw NotAdmissible("no table entry for window");
    return it->second;
  }

  /// f(sigma^i p).
  const QVector& at(const EventuallyPeriodicPoint& p, long i = 0) const {
    return value(p.window(i + start_, length_));
  }

private:
  BasisPtr basis_;
  long start_;
  std::size_t length_;
  std::map<Word, QVector> table_;
};

using TransferFunction = WindowFunction;

/// r(x) depends on x_{-past} ... x_{future}; every value must be positive.
class LocallyConstantRoof : public WindowFunction {
public:
  LocallyConstantRoof(BasisPtr basis, std::size_t past, std::size_t future, std::map<Word, QVector> table)
      : WindowFunction(std::move(basis), -static_cast<long>(past), past + future + 1, std::move(table)),
        past_(past), future_(future) {
    if (this->table().empty())
      throw InvalidArgument("roof table is empty");
    for (const auto& [w, v] : this->table())
      if (!is_positive(v))
        throw InvalidArgument("roof value " + to_string(v) + " is not positive");
  }

  /// r(x) = values[x_0].
  static LocallyConstantRoof from_symbols(BasisPtr basis, const std::vector<QVector>& values) {
    std::map<Word, QVector> table;
    for (std::size_t s = 0; s < values.size(); ++s)
      table.emplace(Word{static_cast<Symbol>(s)}, values[s]);
    return LocallyConstantRoof(std::move(basis), 0, 0, std::move(table));
  }

  static LocallyConstantRoof constant(BasisPtr basis, const QVector& c, const Alphabet& alphabet) {
    return from_symbols(std::move(basis), std::vector<QVector>(alphabet.size(), c));
  }

  std::size_t past() const { return past_; }
  std::size_t future() const { return future_; }

  /// Throws unless every admissible window of the shift has a table entry.
  void check_covers(const EdgeShift& shift) const {
    for (const auto& w : admissible_words(shift, length()))
      if (!table().count(w))
        throw InvalidArgument("roof table misses admissible window " + suspension::to_string(w, shift.alphabet()));
  }

  double min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& [w, v] : table())
      m = std::min(m, v.value());
    return m;
  }

  /// The smallest exact value when all values are rational.
  std::optional<QVector> min_exact() const {
    std::optional<QVector> best;
    for (const auto& [w, v] : table()) {
      if (!v.is_rational())
        return std::nullopt;
      if (!best || v.rational_part() < best->rational_part())
        best = v;
    }
    return best;
  }

private:
  std::size_t past_;
  std::size_t future_;
};

/// Non-increasing bound on |r(x) - r(y)| for x, y agreeing on [-k, k]:
/// table entries for small k, then `tail(k)`.
struct VariationModulus {
  std::vector<double> table;
  std::function<double(std::size_t)> tail;

  double operator()(std::size_t k) const {
    if (k < table.size())
      return table[k];
    if (!tail)
      return table.empty() ? std::numeric_limits<double>::infinity() : table.back();
    return tail(k);
  }
};

/// Roof given by a float evaluator on eventually periodic points. An
/// optional batch evaluator fills r(sigma^j p) for consecutive j without
/// materializing the shifted points.
class EvaluableRoof {
public:
  using Evaluator = std::function<double(const EventuallyPeriodicPoint&)>;
  using Batch = std::function<void(const EventuallyPeriodicPoint&, long, std::span<double>)>;

  EvaluableRoof(std::string name, Evaluator eval, VariationModulus modulus, double floor, Batch batch = {})
      : name_(std::move(name)), eval_(std::move(eval)), batch_(std::move(batch)), modulus_(std::move(modulus)),
        floor_(floor) {
    if (!(floor_ > 0.0))
      throw InvalidArgument("roof floor must be positive");
    for (std::size_t k = 1; k < modulus_.table.size(); ++k)
      if (modulus_.table[k] > modulus_.table[k - 1])
        throw InvalidArgument("variation modulus must be non-increasing");
  }

  const std::string& name() const { return name_; }
  const VariationModulus& modulus() const { return modulus_; }
  double floor() const { return floor_; }

  double operator()(const EventuallyPeriodicPoint& p) const { return checked(eval_(p)); }

  double at(const EventuallyPeriodicPoint& p, long i) const { return (*this)(p.shifted(i)); }

  /// r(sigma^j p) for j = start .. start + out.size() - 1.
  void values(const EventuallyPeriodicPoint& p, long start, std::span<double> out) const {
    if (batch_)
      batch_(p, start, out);
    else
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = eval_(p.shifted(start + static_cast<long>(i)));
    for (double v : out)
      checked(v);
  }

private:
  double checked(double v) const {
    if (!(v >= floor_))
      throw InvalidArgument(name_ + ": value " + std::to_string(v) + " below the declared floor");
    return v;
  }

  std::string name_;
  Evaluator eval_;
  Batch batch_;
  VariationModulus modulus_;
  double floor_;
};

namespace detail {

/// Zeros starting at position j, or -1 when they never end.
inline long zero_run(const EventuallyPeriodicPoint& p, long j) {
  const long stop = std::max(p.core_end(), j) + static_cast<long>(p.right_period().size());
  for (long i = j; i <= stop; ++i)
    if (p.at(i) != 0)
      return i - j;
  return -1;
}

} // namespace detail

/// On {0,1}^Z: r(x) = 1 + 1/(1 + rho(x)) when x_0 = 0, where rho(x) counts
/// the zeros x_0 x_1 ... before the first 1, and r(x) = 1 otherwise
/// (including x_{[0,inf)} = 000..., by continuity).
inline EvaluableRoof example_roof_harmonic() {
  auto value = [](long run) { return run < 0 ? 1.0 : 1.0 + 1.0 / (1.0 + static_cast<double>(run)); };
  auto eval = [value](const EventuallyPeriodicPoint& p) { return p.at(0) != 0 ? 1.0 : value(detail::zero_run(p, 0)); };
  auto batch = [value](const EventuallyPeriodicPoint& p, long start, std::span<double> out) {
    const long end = start + static_cast<long>(out.size());
    long run = detail::zero_run(p, end);
    for (long j = end - 1; j >= start; --j) {
      if (p.at(j) != 0) {
        run = 0;
        out[static_cast<std::size_t>(j - start)] = 1.0;
      } else {
        if (run >= 0)
          ++run;
        out[static_cast<std::size_t>(j - start)] = value(run);
      }
    }
  };
  VariationModulus modulus{{1.0}, [](std::size_t k) { return 1.0 / (static_cast<double>(k) + 2.0); }};
  return EvaluableRoof("harmonic", eval, modulus, 1.0, batch);
}

/// S_n r(p) = sum_{j<n} r(sigma^j p) for n >= 0, and -sum_{j=n}^{-1} for n < 0.
inline QVector birkhoff_sum(const LocallyConstantRoof& r, const EventuallyPeriodicPoint& p, long n) {
  QVector s(r.basis());
  if (n >= 0)
    for (long j = 0; j < n; ++j)
      s += r.at(p, j);
  else
    for (long j = n; j < 0; ++j)
      s -= r.at(p, j);
  return s;
}

inline double birkhoff_sum(const EvaluableRoof& r, const EventuallyPeriodicPoint& p, long n) {
  double s = 0.0;
  if (n >= 0)
    for (long j = 0; j < n; ++j)
      s += r.at(p, j);
  else
    for (long j = n; j < 0; ++j)
      s -= r.at(p, j);
  return s;
}

/// A higher-block presentation carrying a weight per edge. The edge for
/// position i of a point is the block x[i - alignment .. i - alignment + depth].
struct WeightedGraph {
  BlockPresentation blocks;
  std::vector<QVector> weights;
  std::size_t alignment = 0;

  const EdgeShift& graph() const { return blocks.graph; }
};

namespace detail {

/// Weight of a window function on each edge block, with the block starting
/// `alignment` symbols before the evaluated position.
inline std::vector<QVector> edge_values(const BlockPresentation& bp, std::size_t alignment, const WindowFunction& f) {
  const long offset = static_cast<long>(alignment) + f.start();
  if (offset < 0 || static_cast<std::size_t>(offset) + f.length() > bp.depth + 1)
    throw InvalidArgument("window does not fit inside the edge blocks");
  std::vector<QVector> out;
  out.reserve(bp.edge_blocks.size());
  for (const auto& b : bp.edge_blocks) {
    Word w(b.begin() + offset, b.begin() + offset + static_cast<long>(f.length()));
    out.push_back(f.value(w));
  }
  return out;
}

} // namespace detail

/// Translates a locally constant roof into weights on the edges of the
/// label-block presentation of depth max(past + future, memory, min_depth).
inline WeightedGraph roof_as_edge_weights(const LocallyConstantRoof& r, const EdgeShift& shift,
                                          std::size_t min_depth = 1) {
  const std::size_t k = detail::minimal_block_depth(shift, std::max(r.past() + r.future(), min_depth));
  WeightedGraph g{higher_block_recode(shift, k), {}, r.past()};
  g.weights = detail::edge_values(g.blocks, g.alignment, r);
  return g;
}

/// Walters norm 2 |r|_inf + sup_{m>=1} sup { |S_m r(x) - S_m r(y)| :
/// x, y agree on [-m, m] }.
struct WaltersNorm {
  double value;
  double sup_norm;
  double variation;
  std::optional<Rational> exact; ///< set when every roof value is rational
};

inline WaltersNorm walters_norm(const LocallyConstantRoof& r, const EdgeShift& shift) {
  r.check_covers(shift);
  const long past = static_cast<long>(r.past());
  const long future = static_cast<long>(r.future());
  bool exact = true;
  Rational sup_exact = 0;
  double sup_float = 0.0;
  for (const auto& [w, v] : r.table()) {
    if (!is_word_admissible(shift, w))
      continue;
    if (v.is_rational()) {
      Rational a = abs(v.rational_part());
      sup_exact = std::max(sup_exact, a);
    } else {
      exact = false;
    }
    sup_float = std::max(sup_float, std::abs(v.value()));
  }
  // Beyond m = past + future the difference only involves the right edge of
  // the agreement window, so the supremum is reached for m <= past+future+1.
  QVector best_var(r.basis());
  double best_var_float = 0.0;
  for (long m = 1; m <= past + future + 1; ++m) {
    const long lo = std::min(-m, -past);
    const long hi = std::max(m, m - 1 + future);
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::map<Word, std::vector<QVector>> groups;
    for (const auto& w : admissible_words(shift, len)) {
      QVector s(r.basis());
      for (long j = 0; j < m; ++j) {
        Word window(w.begin() + (j - past - lo), w.begin() + (j + future - lo) + 1);
        s += r.value(window);
      }
      Word key(w.begin() + (-m - lo), w.begin() + (m - lo) + 1);
      groups[key].push_back(std::move(s));
    }
    for (const auto& [key, sums] : groups)
      for (std::size_t a = 0; a < sums.size(); ++a)
        for (std::size_t b = a + 1; b < sums.size(); ++b) {
          QVector d = sums[a] - sums[b];
          double dv = std::abs(d.value());
          if (dv > best_var_float) {
            best_var_float = dv;
            best_var = d.is_rational() && d.rational_part() < 0 ? -d : d;
          }
          if (!d.is_rational())
            exact = false;
        }
  }
  WaltersNorm out{2.0 * sup_float + best_var_float, sup_float, best_var_float, std::nullopt};
  if (exact)
    out.exact = 2 * sup_exact + best_var.rational_part();
  return out;
}

} // namespace suspension
