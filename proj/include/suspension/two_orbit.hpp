#pragma once

// A topologically mixing shift on {0,1} with exactly two periodic orbits
// (those of 1̄ and (01)‾). Points of B_i read v_1 0^{a_1} v_2 0^{a_2} ...
// with v_k in E_i = {u_1, ..., u_i} ∪ {1^j : j >= 2}, u_k = (10)^k 1, and a
// the Thue-Morse sequence shifted into {3, 4}.

#include <bit>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "shift.hpp"

namespace suspension {

/// a_n = 3 + parity(popcount(n - 1)), n = 1 .. N.
inline std::vector<int> morse_thue_plus3(std::size_t n) {
  if (n == 0)
    throw InvalidArgument("need at least one term");
  std::vector<int> a(n);
  for (std::size_t k = 0; k < n; ++k)
    a[k] = 3 + (std::popcount(static_cast<unsigned long long>(k)) & 1);
  return a;
}

/// Factor language of J_i (alternating blocks up to u_i), or of the closure
/// S of their union when i = 0. Decided by a nondeterministic automaton that
/// tracks where in the block structure the current symbol sits.
class TwoOrbitShift {
public:
  /// `terms` entries of the sequence a are generated; they bound the word
  /// lengths that can be queried.
  explicit TwoOrbitShift(std::size_t i = 0, std::size_t terms = 4096)
      : i_(i), a_(morse_thue_plus3(std::max<std::size_t>(terms, 64))) {}

  std::size_t i() const { return i_; }
  const std::vector<int>& sequence() const { return a_; }
  static Alphabet alphabet() { return Alphabet::digits(2); }

  enum class Kind : unsigned char { Ones, Alt, Zeros };

  struct State {
    std::size_t j; ///< block index into a (0-based)
    Kind kind;
    int count; ///< Ones: min(run, 2); Alt: symbols read; Zeros: zeros read
    auto operator<=>(const State&) const = default;
  };

  using StateSet = std::set<State>;

  /// Every position a factor can start at.
  StateSet initial_states(std::size_t word_length) const {
    if (4 * word_length + 64 > a_.size())
      throw InvalidArgument("word too long for the generated prefix of a");
    StateSet s;
    // A word meets at most word_length/3 + 2 zero blocks, and every factor of
    // that many terms of a occurs early (a is linearly recurrent).
    const std::size_t blocks = word_length / 3 + 2;
    const std::size_t last = std::min(a_.size() - blocks, 16 * blocks + 64);
    for (std::size_t j = 0; j < last; ++j) {
      s.insert({j, Kind::Ones, 1});
      s.insert({j, Kind::Ones, 2});
      for (int c = 1; c <= alt_cap(); ++c)
        s.insert({j, Kind::Alt, c});
      for (int c = 0; c <= a_[j]; ++c)
        s.insert({j, Kind::Zeros, c});
    }
    return s;
  }

  StateSet step(const StateSet& from, Symbol x) const {
    StateSet out;
    for (const auto& s : from) {
      switch (s.kind) {
      case Kind::Ones:
        if (x == 1)
          out.insert({s.j, Kind::Ones, std::min(s.count + 1, 2)});
        else if (s.count == 2)
          out.insert({s.j, Kind::Zeros, 1});
        break;
      case Kind::Alt:
        if (s.count % 2 == 1) {
          if (x == 0) {
            if (i_ == 0 || s.count + 2 <= alt_cap())
              out.insert({s.j, Kind::Alt, alt_next(s.count)});
            if (s.count >= 3)
              out.insert({s.j, Kind::Zeros, 1});
          }
        } else if (x == 1) {
          out.insert({s.j, Kind::Alt, alt_next(s.count)});
        }
        break;
      case Kind::Zeros:
        if (x == 0) {
          if (s.count + 1 <= a_[s.j])
            out.insert({s.j, Kind::Zeros, s.count + 1});
        } else if (s.count == a_[s.j] && s.j + 1 < a_.size()) {
          out.insert({s.j + 1, Kind::Ones, 1});
          out.insert({s.j + 1, Kind::Alt, 1});
        }
        break;
      }
    }
    return out;
  }

  StateSet run(StateSet s, std::span<const Symbol> w) const {
    for (Symbol x : w) {
      if (x != 0 && x != 1)
        throw InvalidArgument("two-orbit shift is over {0, 1}");
      s = step(s, x);
      if (s.empty())
        break;
    }
    return s;
  }

  bool admissible(const Word& w) const {
    if (w.empty())
      return true;
    return !run(initial_states(w.size()), w).empty();
  }

  /// w̄ is in the shift iff long powers of w are factors.
  bool periodic_admissible(const Word& w) const {
    if (w.empty())
      return false;
    std::size_t reps = std::max<std::size_t>(4, (64 + w.size() - 1) / w.size());
    return admissible(power(w, reps));
  }

private:
  /// Largest Alt count. Without a bound on i only the parity and whether at
  /// least three symbols were read matter, so counts fold into 1..4.
  int alt_cap() const { return i_ == 0 ? 4 : static_cast<int>(2 * i_ + 1); }
  int alt_next(int c) const { return (i_ == 0 && c + 1 > 4) ? c - 1 : c + 1; }

  std::size_t i_;
  std::vector<int> a_;
};

/// All factors of length 1 .. max_len in lexicographic order of length
/// then content.
inline std::vector<Word> two_orbit_shift_words(const TwoOrbitShift& shift, std::size_t max_len) {
  std::vector<Word> out;
  const auto init = shift.initial_states(max_len);
  Word cur;
  auto rec = [&](auto&& self, const TwoOrbitShift::StateSet& at) -> void {
    for (Symbol x = 0; x <= 1; ++x) {
      auto next = shift.step(at, x);
      if (next.empty())
        continue;
      cur.push_back(x);
      out.push_back(cur);
      if (cur.size() < max_len)
        self(self, next);
      cur.pop_back();
    }
  };
  rec(rec, init);
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

/// Least rotations of primitive w with w̄ in the shift and |w| <= max_period.
inline std::vector<Word> two_orbit_periodic_words(const TwoOrbitShift& shift, std::size_t max_period) {
  std::set<Word> orbits;
  Word cur;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty() && !shift.admissible(cur))
      return;
    if (!cur.empty() && is_primitive(cur) && shift.periodic_admissible(cur)) {
      Word best = cur;
      for (std::size_t k = 1; k < cur.size(); ++k)
        best = std::min(best, rotate_left(cur, k));
      orbits.insert(best);
    }
    if (cur.size() == max_period)
      return;
    for (Symbol x = 0; x <= 1; ++x) {
      cur.push_back(x);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return {orbits.begin(), orbits.end()};
}

/// A family of connectors c_n = p 1^n z with u c_n v admissible for every n
/// in [n_min, n_max]. Once a 1-run of length two has started, further 1s
/// leave the automaton state unchanged, so a single tail z serves every n.
struct ConnectorFamily {
  Word prefix;
  Word suffix;

  Word at(std::size_t n) const {
    Word w = prefix;
    w.insert(w.end(), n, 1);
    w.insert(w.end(), suffix.begin(), suffix.end());
    return w;
  }
};

inline std::optional<ConnectorFamily> find_connectors(const TwoOrbitShift& shift, const Word& u, const Word& v,
                                                      std::size_t n_min, std::size_t n_max,
                                                      std::size_t max_prefix = 10) {
  using State = TwoOrbitShift::State;
  using Kind = TwoOrbitShift::Kind;
  const std::size_t budget_len = u.size() + v.size() + max_prefix + n_max + 64;
  auto after_u = shift.run(shift.initial_states(budget_len), u);
  if (after_u.empty())
    return std::nullopt;

  // States from which v can be read to the end.
  auto reads_v = [&](const State& s) { return !shift.run({s}, v).empty(); };

  // Breadth-first over prefixes p (by length, then content).
  std::vector<std::pair<Word, TwoOrbitShift::StateSet>> frontier{{Word{}, after_u}};
  for (std::size_t len = 0; len <= max_prefix; ++len) {
    std::vector<std::pair<Word, TwoOrbitShift::StateSet>> next_frontier;
    for (const auto& [p, states] : frontier) {
      auto ones = shift.run(states, Word(std::max<std::size_t>(n_min, 2), 1));
      std::vector<State> starts;
      for (const auto& s : ones)
        if (s.kind == Kind::Ones && s.count == 2)
          starts.push_back(s);
      if (!starts.empty()) {
        // Single-state BFS from the persistent 1-run states to one that reads v.
        std::map<State, std::pair<State, Symbol>> parent;
        std::queue<State> queue;
        std::set<State> seen;
        for (const auto& s : starts) {
          seen.insert(s);
          queue.push(s);
        }
        std::optional<State> goal;
        while (!queue.empty() && !goal) {
          State s = queue.front();
          queue.pop();
          if (reads_v(s)) {
            goal = s;
            break;
          }
          for (Symbol x = 0; x <= 1; ++x)
            for (const auto& t : shift.step({s}, x))
              if (seen.insert(t).second) {
                parent.emplace(t, std::make_pair(s, x));
                queue.push(t);
              }
        }
        if (goal) {
          Word z;
          for (State s = *goal; parent.count(s);) {
            auto [prev, x] = parent.at(s);
            z.push_back(x);
            s = prev;
          }
          std::reverse(z.begin(), z.end());
          ConnectorFamily fam{p, z};
          bool ok = true;
          for (std::size_t n = n_min; n <= n_max && ok; ++n)
            ok = shift.admissible(concat({u, fam.at(n), v}));
          if (ok)
            return fam;
        }
      }
      if (len < max_prefix)
        for (Symbol x = 0; x <= 1; ++x) {
          auto st = shift.step(states, x);
          if (st.empty())
            continue;
          Word q = p;
          q.push_back(x);
          next_frontier.emplace_back(std::move(q), std::move(st));
        }
    }
    frontier = std::move(next_frontier);
  }
  return std::nullopt;
}

} // namespace suspension
