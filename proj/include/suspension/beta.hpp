#pragma once

// β-shifts: greedy expansion of 1, lexicographic admissibility, truncated
// graph presentations and the cylinder-[0] mixing semidecision.

#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "decider.hpp"
#include "rational.hpp"
#include "shift.hpp"

namespace suspension {

/// a + b·sqrt(d) with rational a, b and d > 1 a non-square integer.
struct QuadraticNumber {
  Rational a = 0;
  Rational b = 0;
  Integer d = 2;

  double value() const { return to_double(a) + to_double(b) * std::sqrt(static_cast<double>(d)); }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a + y.a, x.b + y.b, x.d};
  }
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a - y.a, x.b - y.b, x.d};
  }
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a * y.a + x.b * y.b * Rational(x.d), x.a * y.b + x.b * y.a, x.d};
  }
};

/// Exact sign of p + q·sqrt(d).
inline int sign_of(const QuadraticNumber& x) {
  auto sgn = [](const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); };
  int sp = sgn(x.a), sq = sgn(x.b);
  if (sq == 0)
    return sp;
  if (sp == 0)
    return sq;
  if (sp == sq)
    return sp;
  // Opposite signs: compare a^2 with b^2 d.
  Rational lhs = x.a * x.a;
  Rational rhs = x.b * x.b * Rational(x.d);
  if (lhs == rhs)
    return 0;
  return lhs > rhs ? sp : sq;
}

inline Integer floor_of(const QuadraticNumber& x) {
  Integer f(static_cast<long long>(std::floor(x.value())));
  auto minus = [&](const Integer& n) { return QuadraticNumber{x.a - Rational(n), x.b, x.d}; };
  while (sign_of(minus(f)) < 0)
    --f;
  while (sign_of(minus(f + 1)) >= 0)
    ++f;
  return f;
}

inline bool is_perfect_square(const Integer& n) {
  if (n < 0)
    return false;
  Integer r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

/// Describes β; rational and quadratic values are exact.
struct FloatBeta {
  double value;
  double guard;
};
using BetaValue = std::variant<Rational, QuadraticNumber, FloatBeta>;

inline double to_double(const BetaValue& b) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>)
          return suspension::to_double(v);
        else if constexpr (std::is_same_v<T, QuadraticNumber>)
          return v.value();
        else
          return v.value;
      },
      b);
}

inline std::string describe(const BetaValue& b) {
  if (auto r = std::get_if<Rational>(&b))
    return "rational " + to_string(*r);
  if (auto q = std::get_if<QuadraticNumber>(&b))
    return "quadratic " + to_string(q->a) + " " + to_string(q->b) + " " + q->d.str();
  const auto& f = std::get<FloatBeta>(b);
  std::ostringstream os;
  os.precision(17);
  os << "float " << f.value << " guard " << f.guard;
  return os.str();
}

/// "rational p/q", "quadratic a b d" (a + b·sqrt(d)) or "float x guard g".
inline BetaValue parse_beta(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind;
  in >> kind;
  BetaValue out;
  if (kind == "rational") {
    std::string p;
    if (!(in >> p))
      throw InvalidArgument("rational beta needs a value");
    out = parse_rational(p);
  } else if (kind == "quadratic") {
    std::string a, b, d;
    if (!(in >> a >> b >> d))
      throw InvalidArgument("quadratic beta needs 'a b d'");
    Rational dr = parse_rational(d);
    if (!is_integer(dr) || dr < 2)
      throw InvalidArgument("quadratic beta needs an integer d >= 2");
    QuadraticNumber q{parse_rational(a), parse_rational(b), numerator_of(dr)};
    if (is_perfect_square(q.d) || q.b == 0)
      out = q.a + q.b * Rational(Integer(boost::multiprecision::sqrt(q.d)));
    else
      out = q;
  } else if (kind == "float") {
    double x = 0, g = 0;
    std::string word;
    if (!(in >> x) || !(in >> word) || word != "guard" || !(in >> g))
      throw InvalidArgument("float beta needs 'x guard g'");
    if (!(g > 0.0))
      throw InvalidArgument("guard must be positive");
    out = FloatBeta{x, g};
  } else {
    throw InvalidArgument("unknown beta kind '" + kind + "'");
  }
  std::string extra;
  if (in >> extra)
    throw InvalidArgument("trailing text in beta description");
  if (!(to_double(out) > 1.0))
    throw InvalidArgument("beta must exceed 1");
  if (auto q = std::get_if<QuadraticNumber>(&out); q && sign_of(*q - QuadraticNumber{1, 0, q->d}) <= 0)
    throw InvalidArgument("beta must exceed 1");
  return out;
}

/// First digits of the greedy β-expansion of 1 and whether it terminates.
struct BetaExpansion {
  Word digits;
  bool finite = false; ///< remainder reached exactly 0
};

namespace detail {

template <class T, class FloorFn, class IsZeroFn>
BetaExpansion greedy_expansion(const T& beta, std::size_t n, FloorFn floor_fn, IsZeroFn is_zero, T one) {
  BetaExpansion out;
  T x = one;
  for (std::size_t i = 0; i < n; ++i) {
    T y = beta * x;
    Integer digit = floor_fn(y);
    out.digits.push_back(static_cast<Symbol>(digit));
    x = y - T(digit);
    if (is_zero(x)) {
      out.finite = true;
      out.digits.resize(n, 0);
      return out;
    }
  }
  return out;
}

} // namespace detail

inline BetaExpansion beta_expansion_of_one(const BetaValue& beta, std::size_t n) {
  if (auto r = std::get_if<Rational>(&beta))
    return detail::greedy_expansion<Rational>(
        *r, n, [](const Rational& y) { return floor_of(y); }, [](const Rational& x) { return x == 0; }, Rational(1));
  if (auto q = std::get_if<QuadraticNumber>(&beta)) {
    const Integer d = q->d;
    auto fix = [d](QuadraticNumber x) {
      x.d = d;
      return x;
    };
    BetaExpansion out;
    QuadraticNumber x{1, 0, d};
    for (std::size_t i = 0; i < n; ++i) {
      QuadraticNumber y = fix(*q * x);
      Integer digit = floor_of(y);
      out.digits.push_back(static_cast<Symbol>(digit));
      x = fix(QuadraticNumber{y.a - Rational(digit), y.b, d});
      if (x.a == 0 && x.b == 0) {
        out.finite = true;
        out.digits.resize(n, 0);
        return out;
      }
    }
    return out;
  }
  const auto& f = std::get<FloatBeta>(beta);
  BetaExpansion out;
  double x = 1.0, err = f.guard;
  for (std::size_t i = 0; i < n; ++i) {
    double y = f.value * x;
    err = err * f.value + 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, y);
    double fl = std::floor(y);
    if (y - fl < err || fl + 1.0 - y < err)
      throw PrecisionError("float beta expansion undecided at digit " + std::to_string(i + 1));
    out.digits.push_back(static_cast<Symbol>(fl));
    x = y - fl;
  }
  return out;
}

/// A β-shift with a computed prefix of ν(β).
class BetaShift {
public:
  BetaShift(BetaValue beta, std::size_t n) : beta_(std::move(beta)) {
    if (n == 0)
      throw InvalidArgument("need at least one digit of the expansion");
    auto e = beta_expansion_of_one(beta_, n);
    nu_ = std::move(e.digits);
    finite_ = e.finite;
    init_alphabet();
  }

  /// From an explicit prefix of ν, treated as non-terminating beyond it.
  static BetaShift from_parry_prefix(Word nu) {
    if (nu.empty() || nu[0] < 1)
      throw InvalidArgument("parry prefix must start with a positive digit");
    return BetaShift(std::move(nu));
  }

  const BetaValue& beta() const { return beta_; }
  const Word& nu() const { return nu_; }
  std::size_t known_digits() const { return nu_.size(); }
  bool finite_expansion() const { return finite_; }
  const Alphabet& alphabet() const { return alphabet_; }

  /// Digit i (0-based) of the sequence that governs admissibility: ν itself,
  /// or the quasi-greedy (d_1 ... d_{k-1} (d_k - 1))^∞ when ν = d_1 ... d_k 0^∞.
  std::optional<Symbol> governing_digit(std::size_t i) const {
    if (finite_) {
      std::size_t k = nu_.size();
      while (k > 0 && nu_[k - 1] == 0)
        --k;
      std::size_t j = i % k;
      return j + 1 == k ? nu_[j] - 1 : nu_[j];
    }
    if (i < nu_.size())
      return nu_[i];
    return std::nullopt;
  }

private:
  explicit BetaShift(Word nu) : beta_(FloatBeta{0.0, 0.0}), nu_(std::move(nu)) { init_alphabet(); }

  void init_alphabet() {
    Symbol top = *std::max_element(nu_.begin(), nu_.end());
    alphabet_ = Alphabet::digits(top + 1);
  }

  BetaValue beta_;
  Word nu_;
  bool finite_ = false;
  Alphabet alphabet_;
};

namespace detail {

/// -1, 0, 1 as s compares with the governing sequence over |s| symbols;
/// throws once the comparison reaches unknown digits.
inline int compare_with_nu(const BetaShift& shift, std::span<const Symbol> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto d = shift.governing_digit(i);
    if (!d)
      throw PrecisionError("comparison undecided at N = " + std::to_string(shift.known_digits()));
    if (s[i] != *d)
      return s[i] < *d ? -1 : 1;
  }
  return 0;
}

} // namespace detail

/// Every suffix of w is lexicographically at most the governing sequence.
inline bool is_beta_admissible(const Word& w, const BetaShift& shift) {
  for (Symbol s : w)
    if (!shift.alphabet().contains(s))
      return false;
  std::span<const Symbol> ws(w);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (detail::compare_with_nu(shift, ws.subspan(i)) > 0)
      return false;
  return true;
}

/// sigma^j p ⪯ governing sequence for every j. Suffixes starting deep in a
/// tail repeat, so a finite range of starting positions is examined; each
/// comparison runs until it is decided.
inline bool is_beta_admissible(const EventuallyPeriodicPoint& p, const BetaShift& shift) {
  const long l = static_cast<long>(p.left_period().size());
  const long r = static_cast<long>(p.right_period().size());
  const long horizon = static_cast<long>(shift.known_digits()) + l + r;
  for (long j = p.core_start() - horizon; j < p.core_end() + r; ++j) {
    for (long i = 0;; ++i) {
      Symbol x = p.at(j + i);
      if (!shift.alphabet().contains(x))
        return false;
      auto d = shift.governing_digit(static_cast<std::size_t>(i));
      if (!d)
        throw PrecisionError("comparison undecided at N = " + std::to_string(shift.known_digits()));
      if (x < *d)
        break;
      if (x > *d)
        return false;
      // Equal so far; once both sides are periodic past the core the
      // comparison is settled as equal.
      if (shift.finite_expansion() && j + i > p.core_end() + 2 * r * static_cast<long>(shift.known_digits() + 1))
        break;
    }
  }
  return true;
}

/// Vertices V_1 ... V_depth; spine V_n -> V_{n+1} labeled ν_n and fall edges
/// V_n -> V_1 labeled 0 ... ν_n - 1; pruned to the strongly connected part
/// containing V_1.
inline EdgeShift build_beta_graph(const Word& nu, std::size_t depth) {
  if (depth == 0)
    throw InvalidArgument("depth must be positive");
  if (depth > nu.size())
    throw InvalidArgument("depth " + std::to_string(depth) + " exceeds the " + std::to_string(nu.size()) +
                          " computed digits");
  Symbol top = *std::max_element(nu.begin(), nu.end());
  Alphabet alphabet = Alphabet::digits(top + 1);
  std::vector<Edge> edges;
  for (std::size_t n = 0; n < depth; ++n) {
    if (n + 1 < depth)
      edges.push_back({n, n + 1, nu[n]});
    for (Symbol s = 0; s < nu[n]; ++s)
      edges.push_back({n, 0, s});
  }
  std::vector<std::string> names;
  for (std::size_t n = 0; n < depth; ++n)
    names.push_back("V" + std::to_string(n + 1));
  // Keep V_1's strongly connected component: reachable both ways from V_1.
  EdgeShift raw(alphabet, names, edges);
  auto v1 = raw.find_vertex("V1");
  if (!v1)
    throw EmptyShiftError("V1 carries no cycle");
  auto fwd = detail::reachable(raw, *v1, false);
  auto back = detail::reachable(raw, *v1, true);
  std::vector<std::string> kept_names;
  std::vector<std::size_t> remap(raw.vertex_count(), SIZE_MAX);
  for (std::size_t v = 0; v < raw.vertex_count(); ++v)
    if (fwd[v] && back[v]) {
      remap[v] = kept_names.size();
      kept_names.push_back(raw.vertex_name(v));
    }
  std::vector<Edge> kept;
  for (const auto& e : raw.edges())
    if (remap[e.source] != SIZE_MAX && remap[e.target] != SIZE_MAX)
      kept.push_back({remap[e.source], remap[e.target], e.label});
  return EdgeShift(alphabet, kept_names, kept);
}

inline EdgeShift build_beta_graph(const BetaShift& shift, std::size_t depth) {
  if (shift.finite_expansion()) {
    Word nu = shift.nu();
    nu.resize(std::max(depth, nu.size()), 0);
    return build_beta_graph(nu, depth);
  }
  return build_beta_graph(shift.nu(), depth);
}

/// Cylinder-[0] semidecision on the truncated graph: its closed walks are
/// genuine periodic points of the β-shift.
inline MixingVerdict decide_mixing_beta(const BetaShift& shift, const LocallyConstantRoof& roof, std::size_t depth,
                                        std::size_t bound) {
  EdgeShift g = build_beta_graph(shift, depth);
  ShiftOracle oracle = oracle_from_edge_shift(g);
  // The cylinder [0] stands in for the synchronizing cylinder here.
  oracle.synchronizing = [](const Word&) -> std::optional<bool> { return true; };
  return decide_mixing_synchronized(oracle, roof, Word{0}, bound);
}

} // namespace suspension
