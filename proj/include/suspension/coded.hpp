#pragma once

// Coded shifts: closures of bi-infinite concatenations of generator words.
// Generators are a finite word list plus, optionally, the balanced family
// {a^n b^n : 1 <= n <= N} (N may be unbounded).

#include <optional>
#include <vector>

#include "decider.hpp"
#include "shift.hpp"

namespace suspension {

struct BalancedFamily {
  Symbol first;
  Symbol second;
  std::size_t max_n = 0; ///< 0 means unbounded
};

struct CodedGenerator {
  Alphabet alphabet;
  std::vector<Word> words;
  std::optional<BalancedFamily> family;

  CodedGenerator(Alphabet a, std::vector<Word> ws, std::optional<BalancedFamily> f = std::nullopt)
      : alphabet(std::move(a)), words(std::move(ws)), family(f) {
    for (const auto& w : words) {
      if (w.empty())
        throw InvalidArgument("generator words must be nonempty");
      for (Symbol s : w)
        if (!alphabet.contains(s))
          throw InvalidArgument("generator uses a symbol outside the alphabet");
    }
    if (family && (!alphabet.contains(family->first) || !alphabet.contains(family->second)))
      throw InvalidArgument("family uses a symbol outside the alphabet");
    if (words.empty() && !family)
      throw InvalidArgument("coded shift needs at least one generator");
  }

  /// {2^n 3^n : n >= 1} ∪ {0, 1} over {0, 1, 2, 3}.
  static CodedGenerator balanced_example() {
    return CodedGenerator(Alphabet::digits(4), {{0}, {1}}, BalancedFamily{2, 3, 0});
  }

  /// Every generator word of length at most `len`.
  std::vector<Word> instances(std::size_t len) const {
    std::vector<Word> out;
    for (const auto& w : words)
      if (w.size() <= len)
        out.push_back(w);
    if (family)
      for (std::size_t n = 1; 2 * n <= len && (family->max_n == 0 || n <= family->max_n); ++n) {
        Word w(n, family->first);
        w.insert(w.end(), n, family->second);
        out.push_back(std::move(w));
      }
    return out;
  }

  /// Longest generator, or nullopt when the family is unbounded.
  std::optional<std::size_t> max_length() const {
    if (family && family->max_n == 0)
      return std::nullopt;
    std::size_t m = 0;
    for (const auto& w : words)
      m = std::max(m, w.size());
    if (family)
      m = std::max(m, 2 * family->max_n);
    return m;
  }
};

namespace detail {

inline bool family_allows(const BalancedFamily& f, std::size_t n) { return n >= 1 && (f.max_n == 0 || n <= f.max_n); }

/// Whether seg is a (not necessarily proper) suffix of some generator.
inline bool is_generator_suffix(const CodedGenerator& g, std::span<const Symbol> seg) {
  for (const auto& w : g.words)
    if (seg.size() <= w.size() && std::equal(seg.begin(), seg.end(), w.end() - static_cast<long>(seg.size())))
      return true;
  if (!g.family)
    return false;
  const auto& f = *g.family;
  // seg = a^i b^j with j >= 1, and i <= j = n, or i = 0 and j <= n.
  std::size_t i = 0;
  while (i < seg.size() && seg[i] == f.first)
    ++i;
  std::size_t j = 0;
  while (i + j < seg.size() && seg[i + j] == f.second)
    ++j;
  if (i + j != seg.size() || j == 0)
    return false;
  if (i == 0)
    return f.max_n == 0 || j <= f.max_n;
  return i <= j && family_allows(f, j);
}

/// Whether seg is a (not necessarily proper) prefix of some generator.
inline bool is_generator_prefix(const CodedGenerator& g, std::span<const Symbol> seg) {
  for (const auto& w : g.words)
    if (seg.size() <= w.size() && std::equal(seg.begin(), seg.end(), w.begin()))
      return true;
  if (!g.family)
    return false;
  const auto& f = *g.family;
  std::size_t i = 0;
  while (i < seg.size() && seg[i] == f.first)
    ++i;
  std::size_t j = 0;
  while (i + j < seg.size() && seg[i + j] == f.second)
    ++j;
  if (i + j != seg.size() || i == 0)
    return false;
  if (j == 0)
    return f.max_n == 0 || i <= f.max_n;
  return j <= i && family_allows(f, i);
}

/// Whether seg is a factor of a single generator.
inline bool is_generator_factor(const CodedGenerator& g, std::span<const Symbol> seg) {
  for (const auto& w : g.words)
    if (std::search(w.begin(), w.end(), seg.begin(), seg.end()) != w.end())
      return true;
  if (!g.family)
    return false;
  const auto& f = *g.family;
  std::size_t i = 0;
  while (i < seg.size() && seg[i] == f.first)
    ++i;
  std::size_t j = 0;
  while (i + j < seg.size() && seg[i + j] == f.second)
    ++j;
  if (i + j != seg.size())
    return false;
  return f.max_n == 0 || std::max(i, j) <= f.max_n;
}

} // namespace detail

/// Exact membership in the language of the coded shift: w is a factor of a
/// finite concatenation of generators. Cuts are tracked by dynamic
/// programming; the first and last pieces may be a suffix or a prefix of a
/// generator.
inline bool coded_language_contains(const CodedGenerator& g, const Word& w) {
  const std::size_t n = w.size();
  if (n == 0)
    return true;
  std::span<const Symbol> ws(w);
  if (detail::is_generator_factor(g, ws))
    return true;
  // cut[i]: w[0..i) is (suffix of a generator) followed by whole generators.
  std::vector<bool> cut(n + 1, false);
  cut[0] = true;
  for (std::size_t i = 1; i <= n; ++i)
    if (detail::is_generator_suffix(g, ws.subspan(0, i)))
      cut[i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!cut[i])
      continue;
    for (const auto& gen : g.instances(n - i))
      if (std::equal(gen.begin(), gen.end(), w.begin() + static_cast<long>(i)))
        cut[i + gen.size()] = true;
  }
  if (cut[n])
    return true;
  for (std::size_t i = 0; i < n; ++i)
    if (cut[i] && detail::is_generator_prefix(g, ws.subspan(i)))
      return true;
  return false;
}

enum class Membership { No, Yes, Unknown };

/// Bounded search for u w v, |u|, |v| <= slack, decomposing into generator
/// words. Negative answers are certified by the exact language test.
inline Membership coded_member(const CodedGenerator& g, const Word& w, std::size_t slack) {
  if (w.empty())
    return Membership::Yes;
  const std::size_t n = w.size();
  auto gens = g.instances(n + 2 * slack);
  std::span<const Symbol> ws(w);
  // A single generator may cover all of w with at most `slack` on each side.
  for (const auto& gen : gens)
    for (std::size_t a = 0; a <= slack && a + n <= gen.size(); ++a)
      if (gen.size() - a - n <= slack && std::equal(w.begin(), w.end(), gen.begin() + static_cast<long>(a)))
        return Membership::Yes;
  std::vector<bool> cut(n + 1, false);
  cut[0] = true;
  for (const auto& gen : gens)
    for (std::size_t s = 1; s < gen.size() && s <= n; ++s)
      if (gen.size() - s <= slack && std::equal(gen.end() - static_cast<long>(s), gen.end(), w.begin()))
        cut[s] = true;
  bool yes = false;
  for (std::size_t i = 0; i <= n && !yes; ++i) {
    if (!cut[i])
      continue;
    if (i == n) {
      yes = true;
      break;
    }
    for (const auto& gen : gens) {
      const std::size_t rest = n - i;
      if (gen.size() <= rest) {
        if (std::equal(gen.begin(), gen.end(), w.begin() + static_cast<long>(i)))
          cut[i + gen.size()] = true;
      } else if (gen.size() - rest <= slack && std::equal(w.begin() + static_cast<long>(i), w.end(), gen.begin())) {
        yes = true;
        break;
      }
    }
  }
  if (yes)
    return Membership::Yes;
  if (!coded_language_contains(g, w))
    return Membership::No;
  return Membership::Unknown;
}

/// w̄ lies in the coded shift iff w^K is in the language for K large
/// enough; K covers the longest explicit generator and straddling families.
inline bool coded_periodic_admissible(const CodedGenerator& g, const Word& w) {
  if (w.empty())
    return false;
  std::size_t explicit_len = 0;
  for (const auto& x : g.words)
    explicit_len += x.size();
  const std::size_t reps = std::max<std::size_t>(4, explicit_len / w.size() + 3);
  return coded_language_contains(g, power(w, reps));
}

/// Bounded search for a synchronization failure u v w with uv, vw
/// admissible and uvw not; nullopt when none is found.
inline std::optional<bool> coded_synchronizing(const CodedGenerator& g, const Word& v, std::size_t context = 3) {
  if (!coded_language_contains(g, v))
    return false;
  std::vector<Word> ctx{{}};
  for (std::size_t len = 1; len <= context; ++len) {
    std::vector<Word> level;
    Word cur;
    auto rec = [&](auto&& self) -> void {
      if (cur.size() == len) {
        level.push_back(cur);
        return;
      }
      for (std::size_t s = 0; s < g.alphabet.size(); ++s) {
        cur.push_back(static_cast<Symbol>(s));
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    ctx.insert(ctx.end(), level.begin(), level.end());
  }
  std::vector<Word> lefts, rights;
  for (const auto& u : ctx) {
    if (coded_language_contains(g, concat({u, v})))
      lefts.push_back(u);
    if (coded_language_contains(g, concat({v, u})))
      rights.push_back(u);
  }
  for (const auto& u : lefts)
    for (const auto& w : rights)
      if (!coded_language_contains(g, concat({u, v, w})))
        return false;
  return std::nullopt;
}

inline ShiftOracle coded_oracle(const CodedGenerator& g) {
  return ShiftOracle{
      g.alphabet,
      [g](const Word& w) { return coded_language_contains(g, w); },
      [g](const Word& w) { return coded_periodic_admissible(g, w); },
      [g](const Word& v) { return coded_synchronizing(g, v); },
  };
}

/// All periodic points w̄ in [v] with |w| <= bound, w primitive.
inline std::vector<EventuallyPeriodicPoint> coded_periodic_in_cylinder(const CodedGenerator& g, const Word& v,
                                                                       std::size_t bound) {
  std::vector<EventuallyPeriodicPoint> out;
  for (const auto& w : periodic_words_in_cylinder(coded_oracle(g), v, bound))
    out.push_back(EventuallyPeriodicPoint::periodic(w));
  return out;
}

} // namespace suspension
