#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace suspension {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q);
  Integer d = denominator_of(q);
  Integer f = n / d; // truncates toward zero
  if (n < 0 && f * d != n) {
    f -= 1;
  }
  return f;
}

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

/// "p/q" or "p"; denominators are always positive in the output.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) {
    return numerator_of(q).str();
  }
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Parses "p", "-p", "p/q" and finite decimals such as "1.25" exactly.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      negative = s[i] == '-';
      ++i;
    }
    if (i == s.size())
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    Integer v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw InvalidArgument("malformed rational '" + std::string(text) + "'");
      v = v * 10 + (s[i] - '0');
    }
    return negative ? Integer(-v) : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0)
      throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    Integer w = (whole.empty() || whole == "-" || whole == "+")
                    ? Integer(0)
                    : parse_int(whole);
    if (w < 0)
      w = -w;
    Integer scale = 1;
    Integer f = 0;
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InvalidArgument("malformed rational '" + std::string(text) + "'");
      f = f * 10 + (c - '0');
      scale *= 10;
    }
    Rational r = Rational(w) + Rational(f, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_int(text));
}

} // namespace suspension
