#include <gtest/gtest.h>

#include <random>

#include "suspension/commensurability.hpp"

using namespace suspension;

namespace {

BasisPtr ab() { return RealBasis::make({{"a", 1.0}, {"b", 1.4142135623730951}}); }

QVector q(const BasisPtr& b, std::vector<Rational> c) { return QVector(b, std::move(c)); }

/// Largest p/q (p, q <= 100) dividing every value, by exhaustive search.
Rational brute_gcd(const std::vector<Rational>& values) {
  Rational best = 0;
  for (int p = 1; p <= 100; ++p)
    for (int d = 1; d <= 100; ++d) {
      Rational g(p, d);
      if (g <= best)
        continue;
      bool ok = true;
      for (const auto& v : values)
        ok = ok && is_integer(v / g);
      if (ok)
        best = g;
    }
  return best;
}

} // namespace

TEST(RationalGcd, Examples) {
  EXPECT_EQ(rational_gcd(std::vector<Rational>{2, 3}), Rational(1));
  EXPECT_EQ(rational_gcd(std::vector<Rational>{Rational(1, 2), Rational(1, 3)}), Rational(1, 6));
  EXPECT_EQ(rational_gcd(std::vector<Rational>{Rational(7, 4)}), Rational(7, 4));
  EXPECT_THROW(rational_gcd(std::vector<Rational>{}), InvalidArgument);
  EXPECT_THROW(rational_gcd(std::vector<Rational>{1, 0}), InvalidArgument);
}

TEST(RationalGcd, MatchesBruteForce) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6), count(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> v;
    for (int k = count(rng); k > 0; --k) {
      int n = num(rng);
      v.push_back(Rational(n == 0 ? 1 : n, den(rng)));
    }
    EXPECT_EQ(rational_gcd(v), brute_gcd(v));
  }
}

TEST(SpanRank, Examples) {
  auto b = ab();
  EXPECT_EQ(span_rank(std::vector<QVector>{q(b, {0, 1, 1}), q(b, {0, 2, 2})}), 1u);
  EXPECT_EQ(span_rank(std::vector<QVector>{q(b, {0, 1, 0}), q(b, {0, 0, 1})}), 2u);
  EXPECT_EQ(span_rank(std::vector<QVector>{}), 0u);
  EXPECT_EQ(span_rank(std::vector<QVector>{q(b, {1, 2, 3}), q(b, {2, 1, 0}), q(b, {3, 3, 3})}), 2u);
  EXPECT_THROW(span_rank(std::vector<QVector>{q(b, {1, 0, 0}), QVector::constant(RealBasis::rational(), 1)}),
               InvalidArgument);
}

TEST(Setwise, Examples) {
  auto r = RealBasis::rational();
  auto d = setwise_commensurate(std::vector<QVector>{QVector::constant(r, 2), QVector::constant(r, 3)});
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, QVector::constant(r, 1));

  auto b = ab();
  EXPECT_FALSE(setwise_commensurate(std::vector<QVector>{q(b, {0, 1, 0}), q(b, {0, 0, 1})}));

  auto s = q(b, {0, 1, 1});
  auto e = setwise_commensurate(std::vector<QVector>{s, s * 2, s * 3});
  ASSERT_TRUE(e);
  EXPECT_EQ(*e, s);
  EXPECT_EQ(to_string(*e), "a + b");
}

TEST(Setwise, NegativeGeneratorsGivePositiveDelta) {
  auto b = ab();
  auto d = setwise_commensurate(std::vector<QVector>{q(b, {0, -2, 0}), q(b, {0, 3, 0}), q(b, {0, 0, 0})});
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, q(b, {0, 1, 0}));
  EXPECT_FALSE(setwise_commensurate(std::vector<QVector>{q(b, {0, 0, 0})}));
}

TEST(Setwise, AgreesWithRankAndIsMaximal) {
  auto b = ab();
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> coin(0, 3), num(-6, 6), den(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    // Mostly multiples of one random direction, sometimes a stray vector.
    QVector dir = q(b, {Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
    if (dir.is_zero() || dir.value() <= 0)
      continue;
    std::vector<QVector> values;
    for (int k = 0; k < 4; ++k)
      values.push_back(dir * Rational(num(rng), den(rng)));
    if (coin(rng) == 0)
      values.push_back(q(b, {Rational(num(rng)), Rational(num(rng)), Rational(num(rng))}));
    std::vector<QVector> nonzero;
    for (const auto& v : values)
      if (!v.is_zero())
        nonzero.push_back(v);
    auto d = setwise_commensurate(values);
    const auto rank = span_rank(nonzero);
    EXPECT_EQ(d.has_value(), rank == 1) << "rank " << rank;
    if (!d)
      continue;
    EXPECT_GT(d->value(), 0);
    for (const auto& v : values) {
      auto ratio = v.ratio_to(*d);
      ASSERT_TRUE(ratio);
      EXPECT_TRUE(is_integer(*ratio));
    }
    for (int k = 2; k <= 10; ++k) {
      bool some_fraction = false;
      for (const auto& v : values)
        some_fraction = some_fraction || !is_integer(*v.ratio_to(*d * Rational(k)));
      EXPECT_TRUE(some_fraction) << "k = " << k;
    }
  }
}

TEST(QVector, TextRoundTrip) {
  auto b = ab();
  for (const auto& v : {q(b, {Rational(-3, 7), 0, 2}), q(b, {0, 1, 1}), q(b, {5, 0, 0}), q(b, {0, 0, 0}),
                        q(b, {Rational(1, 2), Rational(-1, 3), Rational(22, 7)})}) {
    EXPECT_EQ(parse_qvector(to_string(v), b), v) << to_string(v);
  }
  EXPECT_EQ(parse_qvector("2*a - 1/3*b + 1", b), q(b, {1, 2, Rational(-1, 3)}));
  EXPECT_EQ(parse_qvector("3/2·b", b), q(b, {0, 0, Rational(3, 2)}));
  EXPECT_THROW(parse_qvector("2*c", b), InvalidArgument);
  EXPECT_THROW(parse_qvector("", b), InvalidArgument);
}

TEST(QVector, PositivityGuard) {
  auto b = ab();
  EXPECT_TRUE(is_positive(q(b, {0, 1, 0})));
  EXPECT_FALSE(is_positive(q(b, {0, 0, 0})));
  EXPECT_FALSE(is_positive(q(b, {Rational(-1, 2), 0, 0})));
  EXPECT_THROW(RealBasis::make({{"a", -1.0}}), InvalidArgument);
  EXPECT_THROW(RealBasis::make({{"a", 1.0}, {"a", 2.0}}), InvalidArgument);
}
