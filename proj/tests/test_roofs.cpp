#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "suspension/roofs.hpp"

using namespace suspension;

namespace {

const Alphabet kBinary = Alphabet::digits(2);

QVector c(Rational v) { return QVector::constant(RealBasis::rational(), v); }

LocallyConstantRoof two_three() { return LocallyConstantRoof::from_symbols(RealBasis::rational(), {c(2), c(3)}); }

/// r(x) = f(x_0 x_1) with distinct values per pair.
LocallyConstantRoof pair_roof() {
  std::map<Word, QVector> t{{{0, 0}, c(1)}, {{0, 1}, c(Rational(5, 2))}, {{1, 0}, c(Rational(1, 3))}, {{1, 1}, c(4)}};
  return LocallyConstantRoof(RealBasis::rational(), 0, 1, t);
}

/// r(x) = f(x_{-1} x_0).
LocallyConstantRoof past_roof() {
  std::map<Word, QVector> t{{{0, 0}, c(2)}, {{0, 1}, c(7)}, {{1, 0}, c(Rational(1, 2))}, {{1, 1}, c(3)}};
  return LocallyConstantRoof(RealBasis::rational(), 1, 0, t);
}

EventuallyPeriodicPoint random_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> bit(0, 1), len(1, 4), core(0, 6), off(-5, 5);
  auto word = [&](int n) {
    Word w;
    for (int i = 0; i < n; ++i)
      w.push_back(bit(rng));
    return w;
  };
  return EventuallyPeriodicPoint(word(len(rng)), word(core(rng)), word(len(rng)), off(rng));
}

QVector direct_sum(const LocallyConstantRoof& r, const EventuallyPeriodicPoint& p, long n) {
  QVector s(r.basis());
  for (long j = 0; j < n; ++j)
    s += r.value(p.window(j - static_cast<long>(r.past()), r.length()));
  return s;
}

} // namespace

TEST(Roof, RejectsNonPositiveValues) {
  EXPECT_THROW(LocallyConstantRoof::from_symbols(RealBasis::rational(), {c(1), c(0)}), InvalidArgument);
  EXPECT_THROW(LocallyConstantRoof::from_symbols(RealBasis::rational(), {c(-1)}), InvalidArgument);
  EXPECT_THROW(LocallyConstantRoof(RealBasis::rational(), 0, 0, {}), InvalidArgument);
}

TEST(Roof, CoverCheck) {
  EdgeShift full = full_shift(kBinary);
  EXPECT_NO_THROW(pair_roof().check_covers(full));
  std::map<Word, QVector> partial{{{0, 0}, c(1)}, {{0, 1}, c(1)}, {{1, 0}, c(1)}};
  LocallyConstantRoof r(RealBasis::rational(), 0, 1, partial);
  EXPECT_THROW(r.check_covers(full), InvalidArgument);
  EXPECT_NO_THROW(r.check_covers(sft_from_forbidden_words(kBinary, {{1, 1}})));
}

TEST(Birkhoff, Examples) {
  auto r = two_three();
  auto p = EventuallyPeriodicPoint::periodic({0, 1});
  EXPECT_EQ(birkhoff_sum(r, p, 2), c(5));
  EXPECT_EQ(birkhoff_sum(r, p, 0), c(0));
  EXPECT_EQ(birkhoff_sum(r, p, 7), c(17));
  EXPECT_EQ(birkhoff_sum(r, p, -3), c(-8));

  auto k = LocallyConstantRoof::constant(RealBasis::rational(), c(Rational(3, 2)), kBinary);
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i)
    EXPECT_EQ(birkhoff_sum(k, random_point(rng), i), c(Rational(3 * i, 2)));
}

TEST(Birkhoff, MatchesDirectWindowSums) {
  std::mt19937 rng(2);
  for (const auto& r : {two_three(), pair_roof(), past_roof()})
    for (int trial = 0; trial < 40; ++trial) {
      auto p = random_point(rng);
      EXPECT_EQ(birkhoff_sum(r, p, 13), direct_sum(r, p, 13));
    }
}

TEST(Birkhoff, CocycleIdentity) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> n(-20, 20);
  for (const auto& r : {two_three(), pair_roof(), past_roof()})
    for (int trial = 0; trial < 60; ++trial) {
      auto p = random_point(rng);
      const long a = n(rng), b = n(rng);
      EXPECT_EQ(birkhoff_sum(r, p, a + b), birkhoff_sum(r, p, a) + birkhoff_sum(r, p.shifted(a), b));
    }
}

TEST(Birkhoff, PeriodicMultiples) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> bit(0, 1), len(1, 6);
  for (const auto& r : {two_three(), pair_roof(), past_roof()})
    for (int trial = 0; trial < 30; ++trial) {
      Word w;
      for (int i = len(rng); i > 0; --i)
        w.push_back(bit(rng));
      auto p = EventuallyPeriodicPoint::periodic(w);
      const long q = static_cast<long>(*p.period());
      for (long k = 1; k <= 5; ++k)
        EXPECT_EQ(birkhoff_sum(r, p, k * q), birkhoff_sum(r, p, q) * Rational(k));
    }
}

TEST(Birkhoff, IrrationalBasis) {
  auto b = RealBasis::make({{"a", 1.0}, {"b", 1.4142135623730951}});
  auto r = LocallyConstantRoof::from_symbols(b, {QVector(b, {0, 1, 0}), QVector(b, {0, 0, 1})});
  auto p = EventuallyPeriodicPoint::periodic({0, 1, 1});
  EXPECT_EQ(birkhoff_sum(r, p, 3), QVector(b, {0, 1, 2}));
  EXPECT_NEAR(birkhoff_sum(r, p, 3).value(), 1.0 + 2 * 1.4142135623730951, 1e-12);
}

TEST(EdgeWeights, SymbolRoofOnFullShift) {
  auto g = roof_as_edge_weights(two_three(), full_shift(kBinary));
  ASSERT_EQ(g.graph().vertex_count(), 2u);
  ASSERT_EQ(g.weights.size(), 4u);
  for (std::size_t e = 0; e < g.weights.size(); ++e) {
    const Word& block = g.blocks.edge_blocks[e];
    // The weight belongs to the source symbol of the 2-block.
    EXPECT_EQ(g.weights[e], block[g.alignment] == 0 ? c(2) : c(3));
  }
}

TEST(EdgeWeights, ConstantRoof) {
  auto sft = sft_from_forbidden_words(Alphabet::digits(3), {{0, 0}, {1, 2}});
  auto r = LocallyConstantRoof::constant(RealBasis::rational(), c(Rational(7, 3)), Alphabet::digits(3));
  auto g = roof_as_edge_weights(r, sft);
  for (const auto& w : g.weights)
    EXPECT_EQ(w, c(Rational(7, 3)));
}

TEST(EdgeWeights, PathSumsMatchBirkhoff) {
  std::vector<EdgeShift> shifts{full_shift(kBinary), sft_from_forbidden_words(kBinary, {{1, 1}}),
                                sft_from_forbidden_words(Alphabet::digits(3), {{0, 0}, {2, 1}, {1, 1, 2}})};
  for (const auto& shift : shifts) {
    const int k = static_cast<int>(shift.alphabet().size());
    std::map<Word, QVector> tp, tq;
    int i = 1;
    for (const auto& w : oracle::all_words(k, 2)) {
      tp[w] = c(Rational(i, 3));
      tq[w] = c(Rational(2 * i + 1, 5));
      ++i;
    }
    for (const auto& r : {LocallyConstantRoof(RealBasis::rational(), 0, 1, tp),
                          LocallyConstantRoof(RealBasis::rational(), 1, 0, tq)}) {
      auto g = roof_as_edge_weights(r, shift);
      const std::size_t d = g.blocks.depth;
      std::map<Word, std::size_t> edge_of;
      for (std::size_t e = 0; e < g.blocks.edge_blocks.size(); ++e)
        edge_of[g.blocks.edge_blocks[e]] = e;
      for (std::size_t len = d + 1; len <= 8; ++len)
        for (const auto& w : admissible_words(shift, len)) {
          QVector path(RealBasis::rational());
          for (std::size_t j = 0; j + d < len; ++j)
            path += g.weights[edge_of.at(Word(w.begin() + j, w.begin() + j + d + 1))];
          auto p = point_in_cylinder(shift, w).shifted(static_cast<long>(g.alignment));
          EXPECT_EQ(path, birkhoff_sum(r, p, static_cast<long>(len - d)));
        }
    }
  }
}

TEST(Walters, Examples) {
  EdgeShift full = full_shift(kBinary);
  auto k = LocallyConstantRoof::constant(RealBasis::rational(), c(Rational(5, 4)), kBinary);
  auto wk = walters_norm(k, full);
  ASSERT_TRUE(wk.exact);
  EXPECT_EQ(*wk.exact, Rational(5, 2));

  auto w41 = walters_norm(two_three(), full);
  ASSERT_TRUE(w41.exact);
  EXPECT_EQ(*w41.exact, Rational(6));
  EXPECT_DOUBLE_EQ(w41.variation, 0.0);

  auto ones = LocallyConstantRoof::from_symbols(RealBasis::rational(), {c(1), c(1)});
  EXPECT_EQ(*walters_norm(ones, full).exact, Rational(2));
}

TEST(Walters, MatchesBruteForceVariation) {
  // Brute force: x, y agree on [-m, m], compare S_m over windows of length
  // past + future + 1, for m up to past + future + 3.
  EdgeShift full = full_shift(kBinary);
  for (const auto& r : {pair_roof(), past_roof()}) {
    const long past = static_cast<long>(r.past()), future = static_cast<long>(r.future());
    Rational best = 0;
    for (long m = 1; m <= past + future + 3; ++m) {
      const long lo = -std::max(m, past), hi = m - 1 + future;
      const int len = static_cast<int>(std::max(hi, m) - lo + 1);
      auto words = oracle::all_words(2, len);
      for (const auto& x : words)
        for (const auto& y : words) {
          bool agree = true;
          for (long i = -m; i <= m; ++i)
            agree = agree && x[i - lo] == y[i - lo];
          if (!agree)
            continue;
          Rational d = 0;
          for (long j = 0; j < m; ++j) {
            Word wx(x.begin() + (j - past - lo), x.begin() + (j + future - lo) + 1);
            Word wy(y.begin() + (j - past - lo), y.begin() + (j + future - lo) + 1);
            d += r.value(wx).rational_part() - r.value(wy).rational_part();
          }
          best = std::max(best, Rational(abs(d)));
        }
    }
    auto w = walters_norm(r, full);
    ASSERT_TRUE(w.exact);
    Rational sup = 0;
    for (const auto& [win, v] : r.table())
      sup = std::max(sup, v.rational_part());
    EXPECT_EQ(*w.exact, 2 * sup + best);
  }
}

TEST(Walters, LocallyConstantRoofsHaveWaltersProperty) {
  // Points agreeing on [-k, n + k] with k = past + future have equal S_n.
  std::mt19937 rng(6);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<long> len(1, 15);
  for (const auto& r : {two_three(), pair_roof(), past_roof()}) {
    const long k = static_cast<long>(r.past() + r.future());
    for (int trial = 0; trial < 50; ++trial) {
      const long n = len(rng);
      Word mid;
      for (long i = -k; i <= n + k; ++i)
        mid.push_back(bit(rng));
      Word l1{bit(rng)}, l2{1 - l1[0]}, r1{bit(rng)}, r2{bit(rng), 1};
      EventuallyPeriodicPoint x(l1, mid, r1, k), y(l2, mid, r2, k);
      EXPECT_EQ(birkhoff_sum(r, x, n), birkhoff_sum(r, y, n));
    }
  }
}

TEST(Harmonic, Values) {
  auto h = example_roof_harmonic();
  EXPECT_DOUBLE_EQ(h(EventuallyPeriodicPoint({1}, {0, 0, 0, 1}, {1}, 0)), 1.25);
  EXPECT_DOUBLE_EQ(h(EventuallyPeriodicPoint({0}, {1, 0}, {0}, 0)), 1.0);
  EXPECT_DOUBLE_EQ(h(EventuallyPeriodicPoint::periodic({0})), 1.0);
  EXPECT_DOUBLE_EQ(h(EventuallyPeriodicPoint({1}, {0, 1}, {1}, 0)), 1.5);
  EXPECT_DOUBLE_EQ(h.floor(), 1.0);
}

TEST(Harmonic, BatchAgreesWithPointwise) {
  auto h = example_roof_harmonic();
  std::mt19937 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_point(rng);
    std::vector<double> batch(30);
    h.values(p, -10, batch);
    for (long j = -10; j < 20; ++j)
      EXPECT_DOUBLE_EQ(batch[static_cast<std::size_t>(j + 10)], h.at(p, j)) << j;
  }
}

TEST(Harmonic, ModulusBoundsObservedVariation) {
  // Agreement on [-k, k] fixes the zero run up to k, so values differ by at
  // most 1/(k + 2) - 0 when the run is cut at the window edge.
  auto h = example_roof_harmonic();
  for (std::size_t k = 1; k <= 10; ++k) {
    double worst = 0.0;
    for (const auto& w : oracle::all_words(2, static_cast<int>(k) + 1))
      for (const auto& a : oracle::all_words(2, 3))
        for (const auto& b : oracle::all_words(2, 3)) {
          EventuallyPeriodicPoint x({1}, concat({w, a}), {a[2]}, 0), y({0}, concat({w, b}), {b[2]}, 0);
          worst = std::max(worst, std::abs(h(x) - h(y)));
        }
    EXPECT_LE(worst, h.modulus()(k) + 1e-15) << k;
    EXPECT_LE(h.modulus()(k), 2.0 / static_cast<double>(k));
  }
}

TEST(Harmonic, WitnessSumsMatchClosedForm) {
  // x = ...1 1 0^m 1^n 1...: S over the 0-block and the n ones.
  auto h = example_roof_harmonic();
  for (int m = 0; m <= 30; ++m)
    for (int n = 0; n <= 30; n += 5) {
      Word core = concat({Word{1}, power({0}, static_cast<std::size_t>(m)), power({1}, static_cast<std::size_t>(n))});
      EventuallyPeriodicPoint x({1}, core, {1}, 0);
      double expect = 1.0 + n;
      for (int j = 2; j <= m + 1; ++j)
        expect += 1.0 + 1.0 / j;
      EXPECT_NEAR(birkhoff_sum(h, x, 1 + m + n), expect, 1e-9);
    }
}
