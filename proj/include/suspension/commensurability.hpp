#pragma once

// Exact arithmetic on real numbers written as rational combinations of a
// declared basis of Q-independent reals, and setwise commensurability.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace suspension {

/// Ordered list of reals assumed linearly independent over Q. Element 0 is
/// always the constant 1. Independence is the caller's assertion; the float
/// approximations are used only for sign checks and simulation.
class RealBasis {
public:
  struct Element {
    std::string name;
    double approx;
    bool operator==(const Element&) const = default;
  };

  /// Basis {1}: every value is an exact rational.
  static std::shared_ptr<const RealBasis> rational() {
    return std::make_shared<const RealBasis>(std::vector<Element>{});
  }

  static std::shared_ptr<const RealBasis> make(std::vector<Element> extra) {
    return std::make_shared<const RealBasis>(std::move(extra));
  }

  /// `extra` lists the irrational generators; the constant 1 is prepended.
  explicit RealBasis(std::vector<Element> extra) {
    elements_.push_back({"1", 1.0});
    for (auto& e : extra) {
      if (e.name.empty() || !(std::isalpha(static_cast<unsigned char>(e.name[0])) || e.name[0] == '_'))
        throw InvalidArgument("basis name '" + e.name + "' must start with a letter");
      if (!(e.approx > 0.0) || !std::isfinite(e.approx))
        throw InvalidArgument("basis element '" + e.name + "' needs a positive approximation");
      for (const auto& seen : elements_)
        if (seen.name == e.name)
          throw InvalidArgument("duplicate basis name '" + e.name + "'");
      elements_.push_back(std::move(e));
    }
  }

  std::size_t size() const { return elements_.size(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i].name == name)
        return i;
    return std::nullopt;
  }

  bool operator==(const RealBasis& other) const { return elements_ == other.elements_; }

private:
  std::vector<Element> elements_;
};

using BasisPtr = std::shared_ptr<const RealBasis>;

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A real number c_0 + c_1 b_1 + ... with exact rational coordinates.
class QVector {
public:
  QVector() = default;

  explicit QVector(BasisPtr basis)
      : basis_(std::move(basis)), coords_(basis_->size(), Rational(0)) {}

  QVector(BasisPtr basis, std::vector<Rational> coords)
      : basis_(std::move(basis)), coords_(std::move(coords)) {
    if (coords_.size() != basis_->size())
      throw InvalidArgument("coordinate count does not match basis size");
  }

  static QVector constant(BasisPtr basis, const Rational& c) {
    QVector v(std::move(basis));
    v.coords_[0] = c;
    return v;
  }

  static QVector unit(BasisPtr basis, std::size_t index, const Rational& c = 1) {
    QVector v(std::move(basis));
    v.coords_.at(index) = c;
    return v;
  }

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t dimension() const { return coords_.size(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  bool is_rational() const {
    return std::all_of(coords_.begin() + (coords_.empty() ? 0 : 1), coords_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  const Rational& rational_part() const { return coords_.at(0); }

  double value() const {
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] != 0)
        s += to_double(coords_[i]) * (*basis_)[i].approx;
    return s;
  }

  /// Returns q with *this == q * g, if one exists.
  std::optional<Rational> ratio_to(const QVector& g) const {
    check_compatible(g);
    std::optional<Rational> q;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (g.coords_[i] == 0) {
        if (coords_[i] != 0)
          return std::nullopt;
        continue;
      }
      Rational r = coords_[i] / g.coords_[i];
      if (q && *q != r)
        return std::nullopt;
      q = r;
    }
    return q;
  }

  QVector& operator+=(const QVector& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] += o.coords_[i];
    return *this;
  }
  QVector& operator-=(const QVector& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] -= o.coords_[i];
    return *this;
  }
  QVector& operator*=(const Rational& q) {
    for (auto& c : coords_)
      c *= q;
    return *this;
  }
  QVector& operator/=(const Rational& q) {
    if (q == 0)
      throw InvalidArgument("division of a QVector by zero");
    for (auto& c : coords_)
      c /= q;
    return *this;
  }

  friend QVector operator+(QVector a, const QVector& b) { return a += b; }
  friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
  friend QVector operator-(QVector a) { return a *= Rational(-1); }
  friend QVector operator*(QVector a, const Rational& q) { return a *= q; }
  friend QVector operator*(const Rational& q, QVector a) { return a *= q; }
  friend QVector operator/(QVector a, const Rational& q) { return a /= q; }

  bool operator==(const QVector& o) const {
    return same_basis(basis_, o.basis_) && coords_ == o.coords_;
  }

  void check_compatible(const QVector& o) const {
    if (!same_basis(basis_, o.basis_))
      throw InvalidArgument("QVectors over different bases");
  }

private:
  BasisPtr basis_;
  std::vector<Rational> coords_;
};

/// Float-guarded positivity. Exact when the value is rational.
inline bool is_positive(const QVector& v, double guard = 1e-9) {
  if (v.is_rational())
    return v.rational_part() > 0;
  double x = v.value();
  if (std::abs(x) <= guard)
    throw PrecisionError("value within guard band of zero; sign undecidable");
  return x > 0;
}

/// Renders as "c0 + c1·name1 - ..." with exact rationals; "0" for zero.
inline std::string to_string(const QVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    Rational c = v[i];
    if (c == 0)
      continue;
    bool negative = c < 0;
    if (negative)
      c = -c;
    std::string term;
    if (i == 0)
      term = to_string(c);
    else if (c == 1)
      term = (*v.basis())[i].name;
    else
      term = to_string(c) + "·" + (*v.basis())[i].name;
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

/// Inverse of to_string(QVector). Accepts '·' or '*' between coefficient and
/// name; names must belong to `basis`.
inline QVector parse_qvector(std::string_view text, const BasisPtr& basis) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "·") == 0) {
      s.push_back('*');
      ++i;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
    }
  }
  if (s.empty())
    throw InvalidArgument("empty real-number expression");
  QVector result(basis);
  std::vector<Rational> coords(basis->size(), Rational(0));
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-')
        sign = -1;
      ++pos;
    } else if (pos != 0) {
      throw InvalidArgument("expected '+' or '-' in '" + std::string(text) + "'");
    }
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    if (term.empty())
      throw InvalidArgument("empty term in '" + std::string(text) + "'");
    Rational coef = 1;
    std::string name;
    if (auto star = term.find('*'); star != std::string::npos) {
      coef = parse_rational(term.substr(0, star));
      name = term.substr(star + 1);
    } else if (std::isdigit(static_cast<unsigned char>(term[0])) || term[0] == '.') {
      coef = parse_rational(term);
      name = "1";
    } else {
      name = term;
    }
    auto index = basis->index_of(name);
    if (!index)
      throw InvalidArgument("unknown basis element '" + name + "'");
    coords[*index] += sign * coef;
  }
  return QVector(basis, std::move(coords));
}

/// Largest positive rational g such that every value is an integer multiple
/// of g: gcd of the numerators over a common denominator.
inline Rational rational_gcd(std::span<const Rational> values) {
  if (values.empty())
    throw InvalidArgument("rational_gcd of an empty list");
  Integer common = 1;
  for (const auto& v : values) {
    if (v == 0)
      throw InvalidArgument("rational_gcd with a zero value");
    common = lcm(common, denominator_of(v));
  }
  Integer g = 0;
  for (const auto& v : values) {
    Integer scaled = numerator_of(v) * (common / denominator_of(v));
    if (scaled < 0)
      scaled = -scaled;
    g = gcd(g, scaled);
  }
  return Rational(g, common);
}

/// Rank over Q of the coordinate matrix, by fraction-free (Bareiss)
/// elimination on denominator-cleared rows.
inline std::size_t span_rank(std::span<const QVector> vectors) {
  if (vectors.empty())
    return 0;
  const std::size_t cols = vectors.front().dimension();
  std::vector<std::vector<Integer>> m;
  for (const auto& v : vectors) {
    v.check_compatible(vectors.front());
    Integer den = 1;
    for (const auto& c : v.coords())
      den = lcm(den, denominator_of(c));
    std::vector<Integer> row;
    row.reserve(cols);
    for (const auto& c : v.coords())
      row.push_back(numerator_of(c) * (den / denominator_of(c)));
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  Integer prev_pivot = 1;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0)
      ++pivot;
    if (pivot == m.size())
      continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      for (std::size_t c = col + 1; c < cols; ++c)
        m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev_pivot;
      m[r][col] = 0;
    }
    prev_pivot = m[rank][col];
    ++rank;
  }
  return rank;
}

/// The largest delta > 0 with every value in delta*Z, or nullopt when the
/// nonzero values span rank >= 2 over Q (or there are no nonzero values).
/// delta is normalized to a positive float value.
inline std::optional<QVector> setwise_commensurate(std::span<const QVector> values) {
  const QVector* generator = nullptr;
  for (const auto& v : values)
    if (!v.is_zero()) {
      generator = &v;
      break;
    }
  if (!generator)
    return std::nullopt;
  std::vector<Rational> multipliers;
  for (const auto& v : values) {
    if (v.is_zero())
      continue;
    auto q = v.ratio_to(*generator);
    if (!q)
      return std::nullopt;
    multipliers.push_back(*q);
  }
  QVector delta = *generator * rational_gcd(multipliers);
  if (delta.is_rational() ? delta.rational_part() < 0 : delta.value() < 0)
    delta = -delta;
  return delta;
}

} // namespace suspension
