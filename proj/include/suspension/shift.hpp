#pragma once

// Alphabets, words, subshifts of finite type presented as labeled directed
// multigraphs (edge shifts), and eventually periodic points.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace suspension {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Symbols are the identifiers 0..size()-1, each with a display name.
class Alphabet {
public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty())
      throw InvalidArgument("alphabet must be nonempty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty())
        throw InvalidArgument("empty symbol name");
      if (!seen.insert(n).second)
        throw InvalidArgument("duplicate symbol '" + n + "'");
    }
  }

  /// {"0", "1", ..., "k-1"}.
  static Alphabet digits(int k) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i)
      names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  bool contains(Symbol s) const { return s >= 0 && static_cast<std::size_t>(s) < names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Symbol> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return static_cast<Symbol>(i);
    return std::nullopt;
  }

  bool single_character() const {
    return std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
  }

  bool operator==(const Alphabet&) const = default;

private:
  std::vector<std::string> names_;
};

inline std::string to_string(const Word& w, const Alphabet& alphabet) {
  std::string out;
  const bool compact = alphabet.single_character();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0)
      out += '.';
    out += alphabet.name(w[i]);
  }
  return out;
}

/// Single-character alphabets read one symbol per character; otherwise
/// symbols are separated by '.' or whitespace.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w;
  if (alphabet.single_character()) {
    for (char c : text) {
      if (c == ' ' || c == '\t')
        continue;
      auto s = alphabet.find(std::string_view(&c, 1));
      if (!s)
        throw InvalidArgument("symbol '" + std::string(1, c) + "' is not in the alphabet");
      w.push_back(*s);
    }
    return w;
  }
  std::string token;
  auto flush = [&] {
    if (token.empty())
      return;
    auto s = alphabet.find(token);
    if (!s)
      throw InvalidArgument("symbol '" + token + "' is not in the alphabet");
    w.push_back(*s);
    token.clear();
  };
  for (char c : text) {
    if (c == '.' || c == ' ' || c == '\t')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return w;
}

inline Word power(const Word& w, std::size_t n) {
  Word out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i)
    out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts)
    out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Shortest u with w == u^k.
inline Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i)
      ok = w[i] == w[i - d];
    if (ok)
      return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return w;
}

inline bool is_primitive(const Word& w) { return !w.empty() && primitive_root(w).size() == w.size(); }

/// Rotation starting at index k: w[k], w[k+1], ...
inline Word rotate_left(const Word& w, std::size_t k) {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    out[i] = w[(i + k) % w.size()];
  return out;
}

struct Edge {
  std::size_t source;
  std::size_t target;
  Symbol label;
  bool operator==(const Edge&) const = default;
};

using VertexSet = std::vector<bool>;

/// Labeled directed multigraph whose bi-infinite walks present a shift.
/// Construction prunes every vertex that cannot lie on a bi-infinite walk, so
/// each remaining vertex has in- and out-degree at least one.
class EdgeShift {
public:
  EdgeShift(Alphabet alphabet, std::vector<std::string> vertex_names, std::vector<Edge> edges)
      : alphabet_(std::move(alphabet)) {
    const std::size_t n = vertex_names.size();
    for (const auto& e : edges) {
      if (e.source >= n || e.target >= n)
        throw InvalidArgument("edge endpoint out of range");
      if (!alphabet_.contains(e.label))
        throw InvalidArgument("edge label outside the alphabet");
    }
    // Iteratively strip vertices without in- or out-edges.
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> in(n, 0), out(n, 0);
      for (const auto& e : edges)
        if (alive[e.source] && alive[e.target]) {
          ++out[e.source];
          ++in[e.target];
        }
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && (in[v] == 0 || out[v] == 0)) {
          alive[v] = false;
          changed = true;
        }
    }
    std::vector<std::size_t> remap(n, SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) {
        remap[v] = names_.size();
        names_.push_back(vertex_names[v]);
      }
    if (names_.empty())
      throw EmptyShiftError("shift is empty: no bi-infinite walk exists");
    for (const auto& e : edges)
      if (alive[e.source] && alive[e.target])
        edges_.push_back({remap[e.source], remap[e.target], e.label});
    out_.assign(names_.size(), {});
    in_.assign(names_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_[edges_[i].source].push_back(i);
      in_[edges_[i].target].push_back(i);
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }
  std::span<const std::size_t> out_edges(std::size_t v) const { return out_.at(v); }
  std::span<const std::size_t> in_edges(std::size_t v) const { return in_.at(v); }

  std::optional<std::size_t> find_vertex(std::string_view name) const {
    for (std::size_t v = 0; v < names_.size(); ++v)
      if (names_[v] == name)
        return v;
    return std::nullopt;
  }

  /// No vertex has two out-edges with the same label.
  bool right_resolving() const {
    for (const auto& outs : out_) {
      std::set<Symbol> labels;
      for (auto e : outs)
        if (!labels.insert(edges_[e].label).second)
          return false;
    }
    return true;
  }

  VertexSet all_vertices() const { return VertexSet(names_.size(), true); }

  /// Vertices reachable from `from` along a path spelling `w`.
  VertexSet follow(VertexSet from, std::span<const Symbol> w) const {
    for (Symbol s : w) {
      if (!alphabet_.contains(s))
        throw InvalidArgument("symbol " + std::to_string(s) + " outside the alphabet");
      VertexSet next(names_.size(), false);
      for (std::size_t v = 0; v < names_.size(); ++v) {
        if (!from[v])
          continue;
        for (auto e : out_[v])
          if (edges_[e].label == s)
            next[edges_[e].target] = true;
      }
      from = std::move(next);
    }
    return from;
  }

private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

inline bool any_of(const VertexSet& s) { return std::find(s.begin(), s.end(), true) != s.end(); }
inline std::size_t count_of(const VertexSet& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

/// One vertex with a self-loop per symbol.
inline EdgeShift full_shift(const Alphabet& alphabet) {
  if (alphabet.empty())
    throw InvalidArgument("full shift over an empty alphabet");
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < alphabet.size(); ++s)
    edges.push_back({0, 0, static_cast<Symbol>(s)});
  return EdgeShift(alphabet, {"*"}, std::move(edges));
}

namespace detail {

inline bool contains_factor(const Word& w, const Word& f) {
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

inline bool avoids_all(const Word& w, const std::vector<Word>& forbidden) {
  for (const auto& f : forbidden)
    if (contains_factor(w, f))
      return false;
  return true;
}

inline void enumerate_words(const Alphabet& a, std::size_t n, Word& cur, std::vector<Word>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t s = 0; s < a.size(); ++s) {
    cur.push_back(static_cast<Symbol>(s));
    enumerate_words(a, n, cur, out);
    cur.pop_back();
  }
}

} // namespace detail

/// De Bruijn-style presentation: vertices are the allowed words of length
/// max|f|-1, an edge appends one symbol and is labeled by it.
inline EdgeShift sft_from_forbidden_words(const Alphabet& alphabet, const std::vector<Word>& forbidden) {
  std::size_t longest = 0;
  for (const auto& f : forbidden) {
    if (f.size() < 2)
      throw InvalidArgument("forbidden words must have length at least 2");
    for (Symbol s : f)
      if (!alphabet.contains(s))
        throw InvalidArgument("forbidden word uses a symbol outside the alphabet");
    longest = std::max(longest, f.size());
  }
  if (forbidden.empty())
    return full_shift(alphabet);
  const std::size_t window = longest - 1;
  std::vector<Word> all;
  Word cur;
  detail::enumerate_words(alphabet, window, cur, all);
  std::map<Word, std::size_t> index;
  std::vector<std::string> names;
  for (const auto& w : all)
    if (detail::avoids_all(w, forbidden)) {
      index[w] = names.size();
      names.push_back(to_string(w, alphabet));
    }
  std::vector<Edge> edges;
  for (const auto& [w, v] : index) {
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
      Word longer = w;
      longer.push_back(static_cast<Symbol>(s));
      if (!detail::avoids_all(longer, forbidden))
        continue;
      Word next(longer.begin() + 1, longer.end());
      edges.push_back({v, index.at(next), static_cast<Symbol>(s)});
    }
  }
  return EdgeShift(alphabet, std::move(names), std::move(edges));
}

inline bool is_word_admissible(const EdgeShift& shift, std::span<const Symbol> w) {
  for (Symbol s : w)
    if (!shift.alphabet().contains(s))
      throw InvalidArgument("symbol " + std::to_string(s) + " outside the alphabet");
  return any_of(shift.follow(shift.all_vertices(), w));
}

/// All admissible words of length n, in lexicographic order.
inline std::vector<Word> admissible_words(const EdgeShift& shift, std::size_t n) {
  std::vector<Word> out;
  Word cur;
  auto rec = [&](auto&& self, const VertexSet& at) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t s = 0; s < shift.alphabet().size(); ++s) {
      Symbol sym = static_cast<Symbol>(s);
      VertexSet next = shift.follow(at, std::span<const Symbol>(&sym, 1));
      if (!any_of(next))
        continue;
      cur.push_back(sym);
      self(self, next);
      cur.pop_back();
    }
  };
  rec(rec, shift.all_vertices());
  return out;
}

namespace detail {

inline std::vector<bool> reachable(const EdgeShift& g, std::size_t start, bool reverse) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    auto edges = reverse ? g.in_edges(v) : g.out_edges(v);
    for (auto e : edges) {
      auto w = reverse ? g.edge(e).source : g.edge(e).target;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

} // namespace detail

/// Strong connectivity of the presenting graph.
inline bool is_transitive(const EdgeShift& shift) {
  auto fwd = detail::reachable(shift, 0, false);
  auto back = detail::reachable(shift, 0, true);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(back.begin(), back.end(), [](bool b) { return b; });
}

/// gcd of all cycle lengths, via BFS levels: gcd over edges of
/// level(source) + 1 - level(target).
inline std::size_t base_period(const EdgeShift& shift) {
  if (!is_transitive(shift))
    throw InvalidArgument("base_period needs a strongly connected graph");
  std::vector<long> level(shift.vertex_count(), -1);
  std::queue<std::size_t> queue;
  level[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop();
    for (auto e : shift.out_edges(v)) {
      auto w = shift.edge(e).target;
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        queue.push(w);
      }
    }
  }
  long g = 0;
  for (const auto& e : shift.edges())
    g = std::gcd(g, std::labs(level[e.source] + 1 - level[e.target]));
  return static_cast<std::size_t>(g);
}

/// Smallest M such that every admissible word of length M has a unique
/// terminal vertex, or nullopt when no such M exists (the labels then do not
/// present a shift of finite type through this graph). Computed as one plus
/// the longest walk in the label-product graph that ends off the diagonal.
inline std::optional<std::size_t> presentation_memory(const EdgeShift& shift) {
  const std::size_t n = shift.vertex_count();
  if (n == 1)
    return 0;
  const std::size_t np = n * n;
  std::vector<std::vector<std::size_t>> succ(np), pred(np);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (auto e : shift.out_edges(p))
        for (auto f : shift.out_edges(q))
          if (shift.edge(e).label == shift.edge(f).label) {
            std::size_t a = p * n + q;
            std::size_t b = shift.edge(e).target * n + shift.edge(f).target;
            succ[a].push_back(b);
            pred[b].push_back(a);
          }
  // Pairs that can reach an off-diagonal pair.
  std::vector<bool> relevant(np, false);
  std::vector<std::size_t> stack;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (p != q) {
        relevant[p * n + q] = true;
        stack.push_back(p * n + q);
      }
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : pred[v])
      if (!relevant[u]) {
        relevant[u] = true;
        stack.push_back(u);
      }
  }
  // Longest path in the relevant subgraph (Kahn order); a cycle means infinite.
  std::vector<std::size_t> indegree(np, 0);
  for (std::size_t v = 0; v < np; ++v)
    if (relevant[v])
      for (auto w : succ[v])
        if (relevant[w])
          ++indegree[w];
  std::vector<std::size_t> longest(np, 0);
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < np; ++v)
    if (relevant[v] && indegree[v] == 0)
      order.push_back(v);
  std::size_t processed = 0;
  std::size_t best = 0;
  while (processed < order.size()) {
    auto v = order[processed++];
    if (v / n != v % n)
      best = std::max(best, longest[v]);
    for (auto w : succ[v])
      if (relevant[w]) {
        longest[w] = std::max(longest[w], longest[v] + 1);
        if (--indegree[w] == 0)
          order.push_back(w);
      }
  }
  std::size_t relevant_count = static_cast<std::size_t>(std::count(relevant.begin(), relevant.end(), true));
  if (processed != relevant_count)
    return std::nullopt;
  return best + 1;
}

/// Higher-block presentation on label blocks.
struct BlockPresentation {
  EdgeShift graph;
  std::size_t depth;
  std::vector<Word> vertex_blocks; ///< depth-blocks, indexed by vertex
  std::vector<Word> edge_blocks;   ///< (depth+1)-blocks, indexed by edge
};

/// Vertices are the admissible k-blocks, edges the admissible (k+1)-blocks,
/// each labeled by its last symbol. The label language is preserved whenever
/// k is at least the presentation memory; smaller k is rejected.
inline BlockPresentation higher_block_recode(const EdgeShift& shift, std::size_t k) {
  auto memory = presentation_memory(shift);
  if (!memory)
    throw InvalidArgument("labels do not determine a shift of finite type on this graph");
  if (k < *memory)
    throw InvalidArgument("recoding depth " + std::to_string(k) +
                          " is below the presentation memory " + std::to_string(*memory));
  std::vector<Word> vertices = admissible_words(shift, k);
  std::vector<Word> blocks = admissible_words(shift, k + 1);
  std::map<Word, std::size_t> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index[vertices[i]] = i;
    names.push_back(k == 0 ? std::string("*") : to_string(vertices[i], shift.alphabet()));
  }
  std::vector<Edge> edges;
  for (const auto& b : blocks) {
    Word from(b.begin(), b.end() - 1);
    Word to(b.begin() + 1, b.end());
    edges.push_back({index.at(from), index.at(to), b.back()});
  }
  EdgeShift graph(shift.alphabet(), names, edges);
  // Admissible blocks of an essential graph all survive pruning, so the
  // vertex and edge order match `vertices` and `blocks`.
  if (graph.vertex_count() != vertices.size() || graph.edge_count() != blocks.size())
    throw Error("internal: block presentation lost vertices during pruning");
  return BlockPresentation{std::move(graph), k, std::move(vertices), std::move(blocks)};
}

namespace detail {

inline std::size_t minimal_block_depth(const EdgeShift& shift, std::size_t at_least) {
  auto memory = presentation_memory(shift);
  if (!memory)
    throw InvalidArgument("labels do not determine a shift of finite type on this graph");
  return std::max(at_least, *memory);
}

} // namespace detail

/// Follower-set criterion on the subset construction: v is synchronizing iff
/// every reachable state S with S·v nonempty has the same follower set as
/// All·v. Follower sets are compared through Moore minimization.
inline bool is_synchronizing(const EdgeShift& shift, const Word& v) {
  const std::size_t k = shift.alphabet().size();
  std::map<VertexSet, std::size_t> id;
  std::vector<VertexSet> states;
  auto intern = [&](const VertexSet& s) -> std::size_t {
    auto [it, inserted] = id.emplace(s, states.size());
    if (inserted)
      states.push_back(s);
    return it->second;
  };
  intern(shift.all_vertices());
  std::vector<std::vector<long>> delta;
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<long> row(k, -1);
    for (std::size_t s = 0; s < k; ++s) {
      Symbol sym = static_cast<Symbol>(s);
      VertexSet next = shift.follow(states[i], std::span<const Symbol>(&sym, 1));
      if (any_of(next))
        row[s] = static_cast<long>(intern(next));
    }
    delta.push_back(std::move(row));
  }
  VertexSet target = shift.follow(shift.all_vertices(), v);
  if (!any_of(target))
    throw NotAdmissible("word is not admissible");
  // Moore refinement; the dead state is -1 and all live states start together.
  std::vector<long> cls(states.size(), 0);
  for (;;) {
    std::map<std::vector<long>, long> signature_id;
    std::vector<long> next(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::vector<long> sig{cls[i]};
      for (auto t : delta[i])
        sig.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
      auto [it, _] = signature_id.emplace(sig, static_cast<long>(signature_id.size()));
      next[i] = it->second;
    }
    bool stable = signature_id.size() == std::set<long>(cls.begin(), cls.end()).size();
    cls = std::move(next);
    if (stable)
      break;
  }
  auto class_of = [&](const VertexSet& s) {
    // Follow v from the state inside the DFA so `s` need not be interned.
    return cls.at(id.at(s));
  };
  const long reference = class_of(target);
  for (const auto& s : states) {
    VertexSet t = shift.follow(s, v);
    if (any_of(t) && class_of(t) != reference)
      return false;
  }
  return true;
}

/// Bi-infinite sequence ...LLL C RRR... with p_0 = C[origin_offset] (the
/// offset may point outside the core; lookup is total). Stored in canonical
/// form: primitive tails, a minimal core, and purely periodic points as
/// L = R, empty core, origin 0.
class EventuallyPeriodicPoint {
public:
  EventuallyPeriodicPoint(Word left_period, Word core, Word right_period, long origin_offset)
      : left_(std::move(left_period)), core_(std::move(core)), right_(std::move(right_period)),
        origin_(origin_offset) {
    if (left_.empty() || right_.empty())
      throw InvalidArgument("periodic tails must be nonempty");
    normalize();
  }

  /// The periodic point w̄ with p_0 = w[0].
  static EventuallyPeriodicPoint periodic(const Word& w) { return EventuallyPeriodicPoint(w, {}, w, 0); }

  const Word& left_period() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right_period() const { return right_; }
  long origin_offset() const { return origin_; }

  Symbol at(long i) const {
    long j = i + origin_;
    const long c = static_cast<long>(core_.size());
    if (j >= 0 && j < c)
      return core_[static_cast<std::size_t>(j)];
    if (j >= c) {
      long r = static_cast<long>(right_.size());
      return right_[static_cast<std::size_t>((j - c) % r)];
    }
    long l = static_cast<long>(left_.size());
    return left_[static_cast<std::size_t>(((j % l) + l) % l)];
  }

  /// p_start ... p_{start+length-1}.
  Word window(long start, std::size_t length) const {
    Word w(length);
    for (std::size_t i = 0; i < length; ++i)
      w[i] = at(start + static_cast<long>(i));
    return w;
  }

  /// sigma^n p; n may be negative.
  EventuallyPeriodicPoint shifted(long n = 1) const {
    EventuallyPeriodicPoint p = *this;
    p.origin_ += n;
    p.normalize();
    return p;
  }

  /// Minimal period when the point is periodic.
  std::optional<std::size_t> period() const {
    if (core_.empty() && left_ == right_)
      return right_.size();
    return std::nullopt;
  }

  /// Index (in point coordinates) of the first core position.
  long core_start() const { return -origin_; }
  long core_end() const { return -origin_ + static_cast<long>(core_.size()); }

  bool operator==(const EventuallyPeriodicPoint&) const = default;

private:
  void normalize() {
    left_ = primitive_root(left_);
    right_ = primitive_root(right_);
    while (!core_.empty() && core_.back() == right_.back()) {
      std::rotate(right_.rbegin(), right_.rbegin() + 1, right_.rend());
      core_.pop_back();
    }
    while (!core_.empty() && core_.front() == left_.front()) {
      std::rotate(left_.begin(), left_.begin() + 1, left_.end());
      core_.erase(core_.begin());
      --origin_;
    }
    if (!core_.empty())
      return;
    if (left_ == right_) {
      long r = static_cast<long>(right_.size());
      right_ = rotate_left(right_, static_cast<std::size_t>(((origin_ % r) + r) % r));
      left_ = right_;
      origin_ = 0;
      return;
    }
    // Empty core between different tails: slide the boundary fully left.
    std::size_t guard = left_.size() * right_.size() + 1;
    while (guard-- > 0 && left_.back() == right_.back()) {
      std::rotate(right_.rbegin(), right_.rbegin() + 1, right_.rend());
      std::rotate(left_.rbegin(), left_.rbegin() + 1, left_.rend());
      ++origin_;
    }
  }

  Word left_;
  Word core_;
  Word right_;
  long origin_;
};

inline EventuallyPeriodicPoint shift_point(const EventuallyPeriodicPoint& p) { return p.shifted(1); }

inline Symbol point_symbol(const EventuallyPeriodicPoint& p, long i) { return p.at(i); }

inline std::string to_string(const EventuallyPeriodicPoint& p, const Alphabet& a) {
  if (auto per = p.period())
    return "(" + to_string(p.right_period(), a) + ")^Z";
  return "(" + to_string(p.left_period(), a) + ")^-inf " + to_string(p.core(), a) + " (" +
         to_string(p.right_period(), a) + ")^inf @" + std::to_string(p.origin_offset());
}

/// The periodic point w̄, provided some closed path spells w.
inline EventuallyPeriodicPoint close_orbit(const EdgeShift& shift, const Word& w) {
  if (w.empty())
    throw InvalidArgument("close_orbit needs a nonempty word");
  for (std::size_t v = 0; v < shift.vertex_count(); ++v) {
    VertexSet start(shift.vertex_count(), false);
    start[v] = true;
    if (shift.follow(start, w)[v])
      return EventuallyPeriodicPoint::periodic(w);
  }
  throw NotAdmissible("no closed path spells the word");
}

/// Vertices at the end of arbitrarily long walks spelling w^j, i.e. the
/// possible positions right after a left-infinite walk spelling ...www.
inline VertexSet left_periodic_ends(const EdgeShift& shift, const Word& w) {
  VertexSet cur = shift.all_vertices();
  for (;;) {
    VertexSet next = shift.follow(cur, w);
    if (next == cur)
      return cur;
    // follow(All, w^(j+1)) is contained in follow(All, w^j), so this settles.
    cur = std::move(next);
  }
}

/// Vertices from which www... can be read forever.
inline VertexSet right_periodic_starts(const EdgeShift& shift, const Word& w) {
  const std::size_t n = shift.vertex_count();
  VertexSet alive = shift.all_vertices();
  for (;;) {
    VertexSet next(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v])
        continue;
      VertexSet start(n, false);
      start[v] = true;
      VertexSet end = shift.follow(start, w);
      for (std::size_t u = 0; u < n && !next[v]; ++u)
        if (end[u] && alive[u])
          next[v] = true;
    }
    if (next == alive)
      return alive;
    alive = std::move(next);
  }
}

/// Whether some bi-infinite walk spells the point. Exact for any finite
/// presentation (a finite graph carries a left-infinite walk ending at v as
/// soon as arbitrarily long ones do).
inline bool is_point_admissible(const EdgeShift& shift, const EventuallyPeriodicPoint& p) {
  VertexSet from = left_periodic_ends(shift, p.left_period());
  VertexSet mid = shift.follow(from, p.core());
  VertexSet tail = right_periodic_starts(shift, p.right_period());
  for (std::size_t v = 0; v < shift.vertex_count(); ++v)
    if (mid[v] && tail[v])
      return true;
  return false;
}

/// w̄ is a point of the shift iff some closed walk spells a power of w.
inline bool is_periodic_word_admissible(const EdgeShift& shift, const Word& w) {
  if (w.empty())
    return false;
  return is_point_admissible(shift, EventuallyPeriodicPoint::periodic(w));
}

/// Labels of a shortest closed walk through v.
inline Word cycle_through(const EdgeShift& shift, std::size_t v) {
  std::vector<long> parent_edge(shift.vertex_count(), -1);
  std::vector<bool> seen(shift.vertex_count(), false);
  std::queue<std::size_t> queue;
  for (auto e : shift.out_edges(v)) {
    auto t = shift.edge(e).target;
    if (t == v)
      return Word{shift.edge(e).label};
    if (!seen[t]) {
      seen[t] = true;
      parent_edge[t] = static_cast<long>(e);
      queue.push(t);
    }
  }
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop();
    for (auto e : shift.out_edges(x)) {
      auto t = shift.edge(e).target;
      if (t == v) {
        Word labels{shift.edge(e).label};
        for (auto y = x; parent_edge[y] >= 0;) {
          const auto& pe = shift.edge(static_cast<std::size_t>(parent_edge[y]));
          labels.push_back(pe.label);
          if (pe.source == v)
            break;
          y = pe.source;
        }
        std::reverse(labels.begin(), labels.end());
        return labels;
      }
      if (!seen[t]) {
        seen[t] = true;
        parent_edge[t] = static_cast<long>(e);
        queue.push(t);
      }
    }
  }
  throw InvalidArgument("vertex lies on no cycle");
}

/// Some admissible point whose symbols at [-origin, -origin+|w|) spell w,
/// with periodic tails read off cycles of the presentation.
inline EventuallyPeriodicPoint point_in_cylinder(const EdgeShift& shift, const Word& w, long origin = 0) {
  const std::size_t n = shift.vertex_count();
  for (std::size_t s = 0; s < n; ++s) {
    VertexSet start(n, false);
    start[s] = true;
    VertexSet end = shift.follow(start, w);
    for (std::size_t t = 0; t < n; ++t)
      if (end[t])
        return EventuallyPeriodicPoint(cycle_through(shift, s), w, cycle_through(shift, t), origin);
  }
  throw NotAdmissible("word is not admissible");
}

} // namespace suspension
