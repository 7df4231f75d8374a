#pragma once

// Mixing dichotomy for suspension flows over SFTs and synchronized shifts,
// cohomology tests, normalization onto a delta-grid and unit cross-sections.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "commensurability.hpp"
#include "roofs.hpp"
#include "shift.hpp"

namespace suspension {

/// Spanning in-tree to `root` with potentials. For a tree edge v -> u the
/// potential satisfies p(v) = p(u) - w(e), and every edge gets the cycle
/// value c(e) = p(source) + w(e) - p(target), zero on tree edges.
///
/// The sum of w over a closed walk equals the sum of c over it (the
/// potentials telescope). Conversely each c(e) is itself the difference of
/// two closed walks through the root: (path root -> source, e, tree path to
/// root) minus (the same path root -> source, tree path source -> root). So
/// the group generated by the c(e) is exactly the group generated by the
/// closed-walk sums.
struct CycleData {
  std::size_t root = 0;
  std::vector<std::optional<std::size_t>> tree_edge;
  std::vector<QVector> potential;
  std::vector<QVector> cycle_value;
};

inline CycleData cycle_data(const EdgeShift& g, std::span<const QVector> weights) {
  if (weights.size() != g.edge_count())
    throw InvalidArgument("one weight per edge required");
  if (!is_transitive(g))
    throw InvalidArgument("cycle data needs a strongly connected graph");
  const BasisPtr& basis = weights.front().basis();
  const std::size_t n = g.vertex_count();
  CycleData cd;
  cd.tree_edge.assign(n, std::nullopt);
  cd.potential.assign(n, QVector(basis));
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> queue;
  seen[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop();
    for (auto e : g.in_edges(v)) {
      auto s = g.edge(e).source;
      if (seen[s])
        continue;
      seen[s] = true;
      cd.tree_edge[s] = e;
      cd.potential[s] = cd.potential[v] - weights[e];
      queue.push(s);
    }
  }
  cd.cycle_value.reserve(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    cd.cycle_value.push_back(cd.potential[ed.source] + weights[e] - cd.potential[ed.target]);
  }
  return cd;
}

namespace detail {

/// Shortest edge path from a to b (empty when a == b).
inline std::vector<std::size_t> shortest_path(const EdgeShift& g, std::size_t a, std::size_t b) {
  if (a == b)
    return {};
  std::vector<long> via(g.vertex_count(), -1);
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<std::size_t> queue;
  seen[a] = true;
  queue.push(a);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop();
    for (auto e : g.out_edges(v)) {
      auto t = g.edge(e).target;
      if (seen[t])
        continue;
      seen[t] = true;
      via[t] = static_cast<long>(e);
      if (t == b) {
        std::vector<std::size_t> path;
        for (auto x = b; x != a; x = g.edge(static_cast<std::size_t>(via[x])).source)
          path.push_back(static_cast<std::size_t>(via[x]));
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push(t);
    }
  }
  throw InvalidArgument("target vertex unreachable");
}

/// Closed walk root -> source(e), e, tree path back to the root.
inline std::vector<std::size_t> fundamental_walk(const EdgeShift& g, const CycleData& cd, std::size_t e) {
  auto walk = shortest_path(g, cd.root, g.edge(e).source);
  walk.push_back(e);
  for (auto v = g.edge(e).target; v != cd.root;) {
    auto te = *cd.tree_edge[v];
    walk.push_back(te);
    v = g.edge(te).target;
  }
  return walk;
}

inline Word walk_labels(const EdgeShift& g, const std::vector<std::size_t>& walk) {
  Word w;
  for (auto e : walk)
    w.push_back(g.edge(e).label);
  return w;
}

} // namespace detail

enum class VerdictKind { TopMixing, NotTopMixing, NotMixingUpToBound, Unknown };

inline std::string to_string(VerdictKind k) {
  switch (k) {
  case VerdictKind::TopMixing:
    return "TopMixing";
  case VerdictKind::NotTopMixing:
    return "NotTopMixing";
  case VerdictKind::NotMixingUpToBound:
    return "NotMixingUpToBound";
  case VerdictKind::Unknown:
    return "Unknown";
  }
  return "Unknown";
}

struct MixingVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<QVector> delta;
  std::size_t bound = 0;
  std::string reason;
  /// Periodic-orbit sums (or cycle values) the verdict was derived from.
  std::vector<QVector> generators;
  /// Words w whose periodic points w̄ realize some of the generators.
  std::vector<Word> witnesses;
  std::vector<std::string> warnings;

  static MixingVerdict unknown(std::string why) {
    MixingVerdict v;
    v.reason = std::move(why);
    return v;
  }
};

namespace detail {

/// "δ·Z", parenthesized when δ has several terms.
inline std::string grid_name(const QVector& delta) {
  std::string d = to_string(delta);
  return (d.find(' ') == std::string::npos ? d : "(" + d + ")") + "·Z";
}

} // namespace detail

/// Mixing dichotomy over a transitive SFT with a locally constant roof: the
/// flow is not mixing iff all closed-walk sums lie in one group δℤ.
inline MixingVerdict decide_mixing_sft(const EdgeShift& shift, const LocallyConstantRoof& roof) {
  if (!is_transitive(shift))
    return MixingVerdict::unknown("base not transitive, the mixing criterion does not apply");
  if (!presentation_memory(shift))
    return MixingVerdict::unknown("labels do not present a shift of finite type on this graph");
  roof.check_covers(shift);
  WeightedGraph wg = roof_as_edge_weights(roof, shift);
  const EdgeShift& g = wg.graph();
  CycleData cd = cycle_data(g, wg.weights);

  MixingVerdict out;
  std::vector<std::size_t> generator_edges;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const QVector& c = cd.cycle_value[e];
    if (c.is_zero())
      continue;
    if (std::find(out.generators.begin(), out.generators.end(), c) == out.generators.end()) {
      out.generators.push_back(c);
      generator_edges.push_back(e);
    }
  }
  if (g.edge_count() == g.vertex_count())
    out.warnings.push_back("base is a single periodic orbit; the dichotomy is vacuous there");
  for (std::size_t i = 0; i < generator_edges.size() && i < 4; ++i)
    out.witnesses.push_back(detail::walk_labels(g, detail::fundamental_walk(g, cd, generator_edges[i])));

  if (auto delta = setwise_commensurate(cd.cycle_value)) {
    out.kind = VerdictKind::NotTopMixing;
    out.delta = *delta;
    out.reason = "all periodic orbit lengths lie in " + detail::grid_name(*delta);
  } else {
    out.kind = VerdictKind::TopMixing;
    out.reason = "periodic orbit lengths span a group of rank at least 2";
  }
  return out;
}

/// Black-box access to a shift space.
struct ShiftOracle {
  Alphabet alphabet;
  std::function<bool(const Word&)> admissible;
  std::function<bool(const Word&)> periodic_admissible;
  /// nullopt when the oracle cannot decide.
  std::function<std::optional<bool>(const Word&)> synchronizing;
};

inline ShiftOracle oracle_from_edge_shift(const EdgeShift& shift) {
  return ShiftOracle{
      shift.alphabet(),
      [shift](const Word& w) { return is_word_admissible(shift, w); },
      [shift](const Word& w) { return is_periodic_word_admissible(shift, w); },
      [shift](const Word& v) -> std::optional<bool> {
        if (!is_word_admissible(shift, v))
          return false;
        return is_synchronizing(shift, v);
      },
  };
}

/// Primitive words w with |w| <= bound, w̄ a point of the shift, and
/// w̄ in the cylinder [v] (positions 0 .. |v|-1 spell v).
inline std::vector<Word> periodic_words_in_cylinder(const ShiftOracle& oracle, const Word& v, std::size_t bound) {
  std::vector<Word> out;
  Word cur;
  auto consider = [&] {
    if (cur.size() < v.size())
      for (std::size_t j = cur.size(); j < v.size(); ++j)
        if (v[j] != cur[j % cur.size()])
          return;
    if (is_primitive(cur) && oracle.periodic_admissible(cur))
      out.push_back(cur);
  };
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty())
      consider();
    if (cur.size() == bound)
      return;
    for (std::size_t s = 0; s < oracle.alphabet.size(); ++s) {
      Symbol sym = static_cast<Symbol>(s);
      if (cur.size() < v.size() && v[cur.size()] != sym)
        continue;
      cur.push_back(sym);
      if (oracle.admissible(cur))
        self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// Semidecision over a synchronized base: enumerates periodic points in [v]
/// up to the period bound. Rank >= 2 certifies mixing; otherwise the
/// commensurability is only established up to the bound.
inline MixingVerdict decide_mixing_synchronized(const ShiftOracle& oracle, const LocallyConstantRoof& roof,
                                                const Word& v, std::size_t bound) {
  if (v.empty())
    throw InvalidArgument("synchronizing word must be nonempty");
  auto words = periodic_words_in_cylinder(oracle, v, bound);
  MixingVerdict out;
  out.bound = bound;
  if (words.empty()) {
    out.reason = "no periodic point in the cylinder within the period bound";
    return out;
  }
  for (const auto& w : words) {
    QVector s = birkhoff_sum(roof, EventuallyPeriodicPoint::periodic(w), static_cast<long>(w.size()));
    if (std::find(out.generators.begin(), out.generators.end(), s) == out.generators.end()) {
      out.generators.push_back(s);
      out.witnesses.push_back(w);
    }
  }
  std::optional<bool> sync = oracle.synchronizing ? oracle.synchronizing(v) : std::nullopt;
  if (sync && !*sync) {
    out.kind = VerdictKind::Unknown;
    out.reason = "cylinder word is not synchronizing; orbit sums reported as diagnostics only";
    return out;
  }
  if (!sync)
    out.warnings.push_back("synchronizing property of the cylinder word is asserted, not verified");
  if (span_rank(out.generators) >= 2) {
    out.kind = VerdictKind::TopMixing;
    out.reason = "periodic orbit sums in the cylinder span a group of rank at least 2";
  } else {
    out.kind = VerdictKind::NotMixingUpToBound;
    out.delta = setwise_commensurate(out.generators);
    out.reason = "periodic orbit sums up to period " + std::to_string(bound) + " lie in " + detail::grid_name(*out.delta);
  }
  return out;
}

/// Sum of (r - s) over one period of a periodic point.
inline QVector periodic_obstruction(const WindowFunction& r, const WindowFunction& s, const EventuallyPeriodicPoint& p) {
  auto per = p.period();
  if (!per)
    throw InvalidArgument("periodic_obstruction needs a periodic point");
  QVector total(r.basis());
  for (long j = 0; j < static_cast<long>(*per); ++j)
    total += r.at(p, j) - s.at(p, j);
  return total;
}

struct CohomologyResult {
  bool cohomologous = false;
  std::optional<TransferFunction> transfer;
  /// When not cohomologous: w with w̄ a periodic point of nonzero obstruction.
  std::optional<Word> witness;
  std::optional<QVector> obstruction;
  std::size_t depth = 0;
  std::size_t vertex_count = 0;
};

namespace detail {

/// A shortest simple cycle whose d-sum is nonzero, by iterative deepening
/// from each start vertex through larger vertices only; falls back to
/// fundamental walks when the search budget runs out.
inline std::vector<std::size_t> nonzero_cycle(const EdgeShift& g, const CycleData& cd) {
  const std::size_t n = g.vertex_count();
  std::size_t budget = 2'000'000;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  std::optional<std::vector<std::size_t>> found;
  auto dfs = [&](auto&& self, std::size_t start, std::size_t v, const QVector& sum, std::size_t left) -> void {
    if (found || budget == 0 || left == 0)
      return;
    --budget;
    for (auto e : g.out_edges(v)) {
      auto t = g.edge(e).target;
      QVector next = sum + cd.cycle_value[e];
      if (t == start) {
        if (left == 1 && !next.is_zero()) {
          path.push_back(e);
          found = path;
          return;
        }
        continue;
      }
      if (t < start || on_path[t] || left == 1)
        continue;
      on_path[t] = true;
      path.push_back(e);
      self(self, start, t, next, left - 1);
      if (found)
        return;
      path.pop_back();
      on_path[t] = false;
    }
  };
  const BasisPtr& basis = cd.potential.front().basis();
  for (std::size_t len = 1; len <= n && !found && budget > 0; ++len)
    for (std::size_t s = 0; s < n && !found; ++s) {
      on_path.assign(n, false);
      on_path[s] = true;
      path.clear();
      dfs(dfs, s, s, QVector(basis), len);
    }
  if (found)
    return *found;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto walk = fundamental_walk(g, cd, e);
    QVector sum(basis);
    for (auto f : walk)
      sum += cd.cycle_value[f];
    if (!sum.is_zero())
      return walk;
  }
  throw Error("internal: nonzero cycle values without a nonzero closed walk");
}

} // namespace detail

/// Livšic test for locally constant roofs over an SFT: r and s are
/// cohomologous iff r - s sums to zero around every cycle of a common block
/// presentation. The transfer function is the potential of r - s.
inline CohomologyResult are_cohomologous(const LocallyConstantRoof& r, const LocallyConstantRoof& s,
                                         const EdgeShift& shift) {
  if (!same_basis(r.basis(), s.basis()))
    throw InvalidArgument("roofs use different bases");
  if (!is_transitive(shift))
    throw InvalidArgument("cohomology test needs a transitive base");
  r.check_covers(shift);
  s.check_covers(shift);
  const std::size_t past = std::max(r.past(), s.past());
  const std::size_t future = std::max(r.future(), s.future());
  const std::size_t k = detail::minimal_block_depth(shift, past + future);
  BlockPresentation bp = higher_block_recode(shift, k);
  auto rv = detail::edge_values(bp, past, r);
  auto sv = detail::edge_values(bp, past, s);
  std::vector<QVector> d;
  d.reserve(rv.size());
  for (std::size_t e = 0; e < rv.size(); ++e)
    d.push_back(rv[e] - sv[e]);
  CycleData cd = cycle_data(bp.graph, d);

  CohomologyResult out;
  out.depth = k;
  out.vertex_count = bp.graph.vertex_count();
  bool all_zero = std::all_of(cd.cycle_value.begin(), cd.cycle_value.end(), [](const QVector& c) { return c.is_zero(); });
  if (all_zero) {
    std::map<Word, QVector> table;
    for (std::size_t v = 0; v < bp.vertex_blocks.size(); ++v)
      table.emplace(bp.vertex_blocks[v], cd.potential[v]);
    TransferFunction g(r.basis(), -static_cast<long>(past), k, std::move(table));
    for (std::size_t e = 0; e < d.size(); ++e) {
      const auto& ed = bp.graph.edge(e);
      if (d[e] != cd.potential[ed.target] - cd.potential[ed.source])
        throw Error("internal: transfer function fails the coboundary identity");
    }
    out.cohomologous = true;
    out.transfer = std::move(g);
    return out;
  }
  auto cycle = detail::nonzero_cycle(bp.graph, cd);
  QVector sum(r.basis());
  for (auto e : cycle)
    sum += d[e];
  out.witness = detail::walk_labels(bp.graph, cycle);
  out.obstruction = sum;
  return out;
}

struct NormalizedRoof {
  TransferFunction g;
  LocallyConstantRoof s;
  QVector delta; ///< possibly shrunk so that delta < min r
};

namespace detail {

/// floor(x / delta), exact when x is a rational multiple of delta and float
/// guided otherwise.
inline Integer floor_ratio(const QVector& x, const QVector& delta) {
  if (auto q = x.ratio_to(delta))
    return floor_of(*q);
  if (x.is_zero())
    return 0;
  double ratio = x.value() / delta.value();
  double f = std::floor(ratio);
  if (ratio - f < 1e-9 || f + 1.0 - ratio < 1e-9)
    throw PrecisionError("reduction modulo delta too close to a grid point to decide in floating point");
  return Integer(static_cast<long long>(f));
}

/// Sign of a - b: exact for rational differences, guarded float otherwise.
inline bool less_than(const QVector& a, const QVector& b) { return is_positive(b - a); }

} // namespace detail

/// Cohomologous roof s = r - g + g∘σ with every value in δ·Z and s >= δ.
inline NormalizedRoof normalize_to_delta_grid(const EdgeShift& shift, const LocallyConstantRoof& roof, QVector delta) {
  if (!same_basis(delta.basis(), roof.basis()))
    throw InvalidArgument("delta uses a different basis than the roof");
  if (!is_positive(delta))
    throw InvalidArgument("delta must be positive");
  roof.check_covers(shift);
  WeightedGraph wg = roof_as_edge_weights(roof, shift);
  const EdgeShift& g = wg.graph();
  CycleData cd = cycle_data(g, wg.weights);

  QVector min_w = wg.weights.front();
  for (const auto& w : wg.weights)
    if (detail::less_than(w, min_w))
      min_w = w;
  if (!detail::less_than(delta, min_w)) {
    Integer k = detail::floor_ratio(delta, min_w) + 1;
    delta /= Rational(k);
    if (!detail::less_than(delta, min_w))
      delta /= 2;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto q = cd.cycle_value[e].ratio_to(delta);
    if (!cd.cycle_value[e].is_zero() && (!q || !is_integer(*q)))
      throw InvalidArgument("delta " + to_string(delta) + " does not divide cycle value " +
                            to_string(cd.cycle_value[e]));
  }
  std::vector<QVector> gv;
  gv.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    QVector x = -cd.potential[v];
    gv.push_back(x - delta * Rational(detail::floor_ratio(x, delta)));
  }
  std::map<Word, QVector> gtable;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    gtable.emplace(wg.blocks.vertex_blocks[v], gv[v]);
  std::map<Word, QVector> stable;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    QVector s = wg.weights[e] - gv[ed.source] + gv[ed.target];
    auto q = s.ratio_to(delta);
    if (!q || !is_integer(*q) || *q < 1)
      throw Error("internal: normalized value " + to_string(s) + " is not a positive multiple of delta");
    stable.emplace(wg.blocks.edge_blocks[e], s);
  }
  const std::size_t k = wg.blocks.depth;
  TransferFunction gf(roof.basis(), -static_cast<long>(wg.alignment), k, std::move(gtable));
  LocallyConstantRoof sroof(roof.basis(), wg.alignment, k - wg.alignment, std::move(stable));
  return NormalizedRoof{std::move(gf), std::move(sroof), std::move(delta)};
}

/// Return map of the section at heights 0, δ, 2δ, ...: a vertex shift whose
/// vertices are the pieces (block, level) and whose flow has constant roof δ.
struct CrossSection {
  EdgeShift graph;
  std::size_t depth = 0;
  std::vector<Word> blocks;          ///< block of each piece
  std::vector<std::size_t> levels;   ///< level of each piece
};

inline CrossSection unit_cross_section(const EdgeShift& shift, const LocallyConstantRoof& roof, const QVector& delta) {
  if (!same_basis(delta.basis(), roof.basis()))
    throw InvalidArgument("delta uses a different basis than the roof");
  if (!is_positive(delta))
    throw InvalidArgument("delta must be positive");
  roof.check_covers(shift);
  for (const auto& [w, v] : roof.table()) {
    auto q = v.ratio_to(delta);
    if (!q || !is_integer(*q) || *q < 1)
      throw InvalidArgument("roof value " + to_string(v) + " is not a positive integer multiple of " + to_string(delta));
  }
  // Smallest depth at which the weight of an edge depends on its source only;
  // depth past+future+1 always works.
  const std::size_t span = roof.past() + roof.future();
  std::size_t k = detail::minimal_block_depth(shift, span);
  for (;; ++k) {
    BlockPresentation bp = higher_block_recode(shift, k);
    auto w = detail::edge_values(bp, roof.past(), roof);
    std::vector<std::optional<QVector>> vertex_weight(bp.graph.vertex_count());
    bool determined = true;
    for (std::size_t e = 0; e < w.size() && determined; ++e) {
      auto& slot = vertex_weight[bp.graph.edge(e).source];
      if (!slot)
        slot = w[e];
      else if (*slot != w[e])
        determined = false;
    }
    if (!determined)
      continue;
    const std::size_t n = bp.graph.vertex_count();
    std::vector<std::size_t> first(n), len(n);
    std::vector<Word> blocks;
    std::vector<std::size_t> levels;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) {
      len[v] = static_cast<std::size_t>(numerator_of(*vertex_weight[v]->ratio_to(delta)));
      first[v] = names.size();
      for (std::size_t j = 0; j < len[v]; ++j) {
        names.push_back((k == 0 ? std::string("*") : to_string(bp.vertex_blocks[v], shift.alphabet())) + "@" +
                        std::to_string(j));
        blocks.push_back(bp.vertex_blocks[v]);
        levels.push_back(j);
      }
    }
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t j = 0; j + 1 < len[v]; ++j)
        edges.push_back({first[v] + j, first[v] + j + 1, static_cast<Symbol>(first[v] + j + 1)});
    for (const auto& e : bp.graph.edges())
      edges.push_back({first[e.source] + len[e.source] - 1, first[e.target], static_cast<Symbol>(first[e.target])});
    EdgeShift graph(Alphabet(names), names, std::move(edges));
    return CrossSection{std::move(graph), k, std::move(blocks), std::move(levels)};
  }
}

struct MultiSyncResult {
  bool precondition_holds = false;
  bool consistent = false;
  std::string note;
};

/// If the orbit sums through v all lie in δZ, checks the same for u.
inline MultiSyncResult check_multi_sync(const ShiftOracle& oracle, const LocallyConstantRoof& roof, const Word& v,
                                        const Word& u, const QVector& delta, std::size_t bound) {
  auto in_grid = [&](const Word& w) {
    QVector s = birkhoff_sum(roof, EventuallyPeriodicPoint::periodic(w), static_cast<long>(w.size()));
    auto q = s.ratio_to(delta);
    return q && is_integer(*q);
  };
  MultiSyncResult out;
  for (const auto& w : periodic_words_in_cylinder(oracle, v, bound))
    if (!in_grid(w)) {
      out.note = "orbit of " + to_string(w, oracle.alphabet) + " through the first word leaves the grid";
      return out;
    }
  out.precondition_holds = true;
  for (const auto& w : periodic_words_in_cylinder(oracle, u, bound))
    if (!in_grid(w)) {
      out.note = "orbit of " + to_string(w, oracle.alphabet) + " through the second word leaves the grid";
      return out;
    }
  out.consistent = true;
  out.note = "all orbit sums through both words lie in the grid";
  return out;
}

/// Float roof values on the windows x_{[-past, future]}.
struct RoofSamples {
  std::size_t past = 0;
  std::size_t future = 0;
  std::map<Word, double> values;
};

/// Evaluates a float roof on one admissible point per window.
inline RoofSamples sample_roof(const EvaluableRoof& roof, const EdgeShift& shift, std::size_t past, std::size_t future) {
  RoofSamples out{past, future, {}};
  for (const auto& w : admissible_words(shift, past + future + 1))
    out.values.emplace(w, roof(point_in_cylinder(shift, w, static_cast<long>(past))));
  return out;
}

/// Rational locally constant roof within eps of the samples, with
/// denominators ceil(1/eps).
inline LocallyConstantRoof approximate_locally_constant(const RoofSamples& samples, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidArgument("eps must be positive");
  const long long q = static_cast<long long>(std::ceil(1.0 / eps));
  auto basis = RealBasis::rational();
  std::map<Word, QVector> table;
  for (const auto& [w, x] : samples.values) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw InvalidArgument("roof samples must be positive");
    long long p = std::llround(x * static_cast<double>(q));
    if (p <= 0)
      p = 1;
    table.emplace(w, QVector::constant(basis, Rational(p, q)));
  }
  return LocallyConstantRoof(basis, samples.past, samples.future, std::move(table));
}

} // namespace suspension
