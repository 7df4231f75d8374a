#include <gtest/gtest.h>

#include "oracles.hpp"
#include "suspension/beta.hpp"
#include "suspension/coded.hpp"
#include "suspension/two_orbit.hpp"

using namespace suspension;

namespace {

const Alphabet kBinary = Alphabet::digits(2);

QuadraticNumber phi() { return QuadraticNumber{Rational(1, 2), Rational(1, 2), 5}; }

BasisPtr ab() { return RealBasis::make({{"a", 1.0}, {"b", 1.4142135623730951}}); }

LocallyConstantRoof example_43_roof(const BasisPtr& b) {
  QVector a(b, {0, 1, 0}), bb(b, {0, 0, 1});
  return LocallyConstantRoof::from_symbols(b, {a + bb, a + bb, a, bb});
}

Word w(std::initializer_list<int> s) { return Word(s); }

} // namespace

TEST(BetaExpansion, GoldenRatio) {
  auto e = beta_expansion_of_one(phi(), 8);
  EXPECT_TRUE(e.finite);
  EXPECT_EQ(Word(e.digits.begin(), e.digits.begin() + 2), w({1, 1}));
  for (std::size_t i = 2; i < e.digits.size(); ++i)
    EXPECT_EQ(e.digits[i], 0);
  // 1 = 1/phi + 1/phi^2 exactly.
  QuadraticNumber x = phi();
  QuadraticNumber check{x.a * x.a + x.b * x.b * 5, 2 * x.a * x.b, 5};
  EXPECT_EQ(sign_of(QuadraticNumber{check.a - x.a - 1, check.b - x.b, 5}), 0);
}

TEST(BetaExpansion, RationalMatchesOracle) {
  for (auto [p, q] : std::vector<std::pair<long, long>>{{3, 2}, {5, 3}, {7, 4}, {9, 5}, {8, 3}}) {
    auto e = beta_expansion_of_one(Rational(p, q), 30);
    EXPECT_EQ(e.digits, oracle::beta_digits_rational(p, q, 30)) << p << "/" << q;
  }
  auto three_halves = beta_expansion_of_one(Rational(3, 2), 12);
  EXPECT_EQ(three_halves.digits, w({1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1}));
  EXPECT_FALSE(three_halves.finite);
}

TEST(BetaExpansion, Integer) {
  auto e = beta_expansion_of_one(Rational(2), 5);
  EXPECT_EQ(e.digits[0], 2);
  EXPECT_TRUE(e.finite);
  BetaShift two(Rational(2), 5);
  EXPECT_EQ(two.alphabet().size(), 3u);
}

TEST(BetaExpansion, FloatGuard) {
  auto e = beta_expansion_of_one(FloatBeta{1.5, 1e-15}, 10);
  EXPECT_EQ(Word(e.digits.begin(), e.digits.begin() + 6), w({1, 0, 1, 0, 0, 0}));
  EXPECT_THROW(beta_expansion_of_one(FloatBeta{1.5, 1e-15}, 200), PrecisionError);
}

TEST(BetaExpansion, ParseDescriptors) {
  EXPECT_EQ(to_double(parse_beta("rational 3/2")), 1.5);
  EXPECT_NEAR(to_double(parse_beta("quadratic 1/2 1/2 5")), 1.618033988749895, 1e-15);
  EXPECT_NEAR(to_double(parse_beta("float 1.7 guard 1e-12")), 1.7, 1e-15);
  EXPECT_THROW(parse_beta("rational 1/2"), InvalidArgument);
  EXPECT_THROW(parse_beta("complex 1 2"), InvalidArgument);
}

TEST(BetaAdmissible, Golden) {
  BetaShift g(phi(), 10);
  EXPECT_TRUE(is_beta_admissible(w({0, 1, 0, 1}), g));
  EXPECT_FALSE(is_beta_admissible(w({0, 1, 1, 0}), g));
  EXPECT_FALSE(is_beta_admissible(w({1, 1}), g));
  EXPECT_TRUE(is_beta_admissible(w({0, 0, 0, 0, 0}), g));
  EXPECT_TRUE(is_beta_admissible(EventuallyPeriodicPoint::periodic({0, 1}), g));
  EXPECT_FALSE(is_beta_admissible(EventuallyPeriodicPoint::periodic({1}), g));
}

TEST(BetaAdmissible, NuIsSelfAdmissible) {
  for (auto beta : std::vector<BetaValue>{Rational(3, 2), Rational(7, 4), Rational(8, 3), phi(),
                                          QuadraticNumber{1, 1, 2}}) {
    BetaShift s(beta, 24);
    Word prefix(s.nu().begin(), s.nu().begin() + 12);
    if (!s.finite_expansion()) {
      EXPECT_TRUE(is_beta_admissible(prefix, s)) << describe(beta);
    }
    EXPECT_TRUE(is_beta_admissible(w({0, 0, 0}), s));
  }
}

TEST(BetaAdmissible, UnresolvedComparisonThrows) {
  auto s = BetaShift::from_parry_prefix(w({1, 0, 1}));
  EXPECT_THROW(is_beta_admissible(w({1, 0, 1, 0}), s), PrecisionError);
  EXPECT_FALSE(is_beta_admissible(w({1, 1}), s));
}

TEST(BetaGraph, FallEdgesForFiveDigitNu) {
  auto g = build_beta_graph(w({2, 0, 1, 2, 0}), 5);
  std::map<std::string, std::set<Symbol>> fall;
  for (const auto& e : g.edges())
    if (g.vertex_name(e.target) == "V1")
      fall[g.vertex_name(e.source)].insert(e.label);
  std::map<std::string, std::set<Symbol>> want{{"V1", {0, 1}}, {"V3", {0}}, {"V4", {0, 1}}};
  EXPECT_EQ(fall, want);
  EXPECT_FALSE(g.find_vertex("V5").has_value());
}

TEST(BetaGraph, GoldenMeanLanguage) {
  BetaShift b(phi(), 10);
  auto g = build_beta_graph(b, 2);
  auto golden = sft_from_forbidden_words(kBinary, {{1, 1}});
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_EQ(admissible_words(g, n), admissible_words(golden, n)) << n;
}

TEST(BetaGraph, DepthOneIsFullShift) {
  auto g = build_beta_graph(w({3, 1}), 1);
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_THROW(build_beta_graph(w({3, 1}), 3), InvalidArgument);
}

TEST(BetaGraph, LanguageAgreesWithLexicographicTest) {
  for (auto beta : std::vector<BetaValue>{Rational(3, 2), Rational(5, 3), phi(), QuadraticNumber{1, 1, 2}}) {
    BetaShift s(beta, 40);
    const std::size_t depth = 16;
    auto g = build_beta_graph(s, depth);
    const int k = static_cast<int>(s.alphabet().size());
    for (int n = 1; n <= static_cast<int>(depth / 2); ++n)
      for (const auto& word : oracle::all_words(k, n))
        EXPECT_EQ(is_word_admissible(g, word), is_beta_admissible(word, s)) << describe(beta);
  }
}

TEST(BetaDecide, Examples) {
  BetaShift g(phi(), 10);
  auto r = RealBasis::rational();
  auto one = LocallyConstantRoof::constant(r, QVector::constant(r, 1), g.alphabet());
  auto v = decide_mixing_beta(g, one, 4, 8);
  EXPECT_EQ(v.kind, VerdictKind::NotMixingUpToBound);
  EXPECT_EQ(*v.delta, QVector::constant(r, 1));

  auto b = RealBasis::make({{"alpha", 1.618033988749895}});
  auto mixing = LocallyConstantRoof::from_symbols(b, {QVector::constant(b, 1), QVector::unit(b, 1)});
  EXPECT_EQ(decide_mixing_beta(g, mixing, 4, 3).kind, VerdictKind::TopMixing);

  BetaShift h(Rational(3, 2), 20);
  auto ints = LocallyConstantRoof::from_symbols(r, {QVector::constant(r, 1), QVector::constant(r, 2)});
  auto vh = decide_mixing_beta(h, ints, 10, 8);
  EXPECT_EQ(vh.kind, VerdictKind::NotMixingUpToBound);
  EXPECT_EQ(*vh.delta, QVector::constant(r, 1));
}

TEST(Coded, MembershipExamples) {
  auto g = CodedGenerator::balanced_example();
  EXPECT_EQ(coded_member(g, w({0, 2, 2, 3, 3, 0}), 2), Membership::Yes);
  for (std::size_t slack : {0u, 2u, 6u})
    EXPECT_EQ(coded_member(g, w({0, 2, 2, 3, 3, 3, 0}), slack), Membership::No);
  EXPECT_EQ(coded_member(g, {}, 0), Membership::Yes);
  EXPECT_TRUE(coded_language_contains(g, w({2, 2, 2})));
  EXPECT_TRUE(coded_language_contains(g, w({3, 3, 0, 1, 2})));
  EXPECT_TRUE(coded_language_contains(g, w({3, 2})));
  EXPECT_FALSE(coded_language_contains(g, w({0, 3})));
  EXPECT_FALSE(coded_language_contains(g, w({2, 0})));
}

TEST(Coded, LanguageMatchesBruteForceConcatenations) {
  // Factors of concatenations of generators with n <= 4, length <= 6.
  auto g = CodedGenerator::balanced_example();
  std::vector<Word> gens{{0}, {1}, {2, 3}, {2, 2, 3, 3}, {2, 2, 2, 3, 3, 3}, {2, 2, 2, 2, 3, 3, 3, 3}};
  std::set<Word> factors;
  std::vector<Word> level{{}};
  for (int depth = 0; depth < 4; ++depth) {
    std::vector<Word> next;
    for (const auto& p : level)
      for (const auto& x : gens)
        next.push_back(concat({p, x}));
    level = std::move(next);
    for (const auto& c : level)
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t len = 1; len <= 6 && i + len <= c.size(); ++len)
          factors.insert(Word(c.begin() + i, c.begin() + i + len));
  }
  for (int n = 1; n <= 4; ++n)
    for (const auto& word : oracle::all_words(4, n))
      EXPECT_EQ(coded_language_contains(g, word), factors.count(word) == 1) << to_string(word, g.alphabet);
}

TEST(Coded, FactorClosed) {
  auto g = CodedGenerator::balanced_example();
  for (const auto& word : oracle::all_words(4, 6))
    if (coded_member(g, word, 2) == Membership::Yes) {
      for (std::size_t i = 0; i < word.size(); ++i)
        for (std::size_t j = i + 1; j <= word.size(); ++j)
          EXPECT_NE(coded_member(g, Word(word.begin() + i, word.begin() + j), 2), Membership::No);
    }
}

TEST(Coded, PeriodicInCylinder) {
  auto g = CodedGenerator::balanced_example();
  auto one = coded_periodic_in_cylinder(g, {0}, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], EventuallyPeriodicPoint::periodic({0}));

  auto two = coded_periodic_in_cylinder(g, {2}, 1);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0], EventuallyPeriodicPoint::periodic({2}));

  auto six = coded_periodic_in_cylinder(g, {0}, 6);
  std::set<Word> words;
  for (const auto& p : six)
    words.insert(p.right_period());
  EXPECT_TRUE(words.count({0}));
  EXPECT_TRUE(words.count({0, 1}));
  EXPECT_TRUE(words.count({0, 2, 2, 3, 3}));
  EXPECT_FALSE(words.count({2}));
  EXPECT_FALSE(words.count({3}));
  EXPECT_FALSE(words.count({0, 2, 3, 3}));
}

TEST(Coded, OrbitSumsThroughZeroAreGridMultiples) {
  auto b = ab();
  auto g = CodedGenerator::balanced_example();
  auto r = example_43_roof(b);
  QVector delta(b, {0, 1, 1});
  auto points = coded_periodic_in_cylinder(g, {0}, 10);
  ASSERT_FALSE(points.empty());
  for (const auto& p : points) {
    auto s = birkhoff_sum(r, p, static_cast<long>(*p.period()));
    auto q = s.ratio_to(delta);
    ASSERT_TRUE(q);
    EXPECT_TRUE(is_integer(*q));
    EXPECT_GE(*q, 1);
  }
  auto v = decide_mixing_synchronized(coded_oracle(g), r, {0}, 8);
  EXPECT_EQ(v.kind, VerdictKind::NotMixingUpToBound);
  EXPECT_EQ(*v.delta, delta);
}

TEST(Coded, SynchronizingChecks) {
  auto g = CodedGenerator::balanced_example();
  EXPECT_EQ(coded_synchronizing(g, {2}), std::optional<bool>(false));
  EXPECT_EQ(coded_synchronizing(g, {2, 2}), std::optional<bool>(false));
  EXPECT_FALSE(coded_synchronizing(g, {0}).has_value());

  auto b = ab();
  auto r = example_43_roof(b);
  auto v = decide_mixing_synchronized(coded_oracle(g), r, {2}, 6);
  EXPECT_EQ(v.kind, VerdictKind::Unknown);
  EXPECT_EQ(span_rank(v.generators), 2u);
}

TEST(Coded, MultiSyncConsistency) {
  auto b = ab();
  auto g = CodedGenerator::balanced_example();
  auto res = check_multi_sync(coded_oracle(g), example_43_roof(b), {0}, {1}, QVector(b, {0, 1, 1}), 8);
  EXPECT_TRUE(res.precondition_holds);
  EXPECT_TRUE(res.consistent);
}

TEST(Coded, Validation) {
  EXPECT_THROW(CodedGenerator(kBinary, {{}}), InvalidArgument);
  EXPECT_THROW(CodedGenerator(kBinary, {{2}}), InvalidArgument);
  EXPECT_THROW(CodedGenerator(kBinary, {}), InvalidArgument);
}

TEST(MorseThue, Prefixes) {
  EXPECT_EQ(morse_thue_plus3(8), (std::vector<int>{3, 4, 4, 3, 4, 3, 3, 4}));
  EXPECT_EQ(morse_thue_plus3(1), (std::vector<int>{3}));
  auto a16 = morse_thue_plus3(16);
  for (std::size_t k = 0; k < 8; ++k)
    EXPECT_EQ(a16[k + 8], 7 - a16[k]);
  auto a = morse_thue_plus3(1024);
  for (std::size_t n = 1; n < 512; ++n)
    EXPECT_EQ(a[2 * n], a[n]);
  EXPECT_THROW(morse_thue_plus3(0), InvalidArgument);
}

TEST(TwoOrbit, ShortWords) {
  TwoOrbitShift s(1);
  auto words = two_orbit_shift_words(s, 3);
  std::set<Word> got(words.begin(), words.end());
  EXPECT_TRUE(got.count({1, 0, 1}));
  EXPECT_TRUE(got.count({1, 1, 1}));
  EXPECT_TRUE(got.count({1, 0, 0}));
  EXPECT_TRUE(got.count({0, 0, 0}));
  EXPECT_FALSE(s.admissible(w({1, 0, 0, 1})));
  EXPECT_FALSE(s.admissible(w({1, 0, 0, 0, 0, 0, 1})));
  EXPECT_TRUE(s.admissible(w({1, 0, 0, 0, 1})));
  // u_2 = 10101 is not a block of J_1.
  EXPECT_FALSE(s.admissible(w({0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0})));
  EXPECT_TRUE(TwoOrbitShift(2).admissible(w({0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0})));
  EXPECT_FALSE(TwoOrbitShift(2).admissible(w({1, 1, 0, 1, 0, 1, 0, 0, 0})));
}

TEST(TwoOrbit, ZeroRunsFollowTheSequence) {
  TwoOrbitShift s(0);
  const auto& a = s.sequence();
  for (const auto& word : two_orbit_shift_words(s, 16)) {
    std::vector<int> runs;
    std::size_t i = 0;
    while (i < word.size() && word[i] == 0)
      ++i;
    while (i < word.size()) {
      std::size_t j = i + 1;
      while (j < word.size() && word[j] == 0)
        ++j;
      if (j < word.size() && j - i - 1 >= 2)
        runs.push_back(static_cast<int>(j - i - 1));
      i = j;
    }
    if (runs.empty())
      continue;
    bool found = false;
    for (std::size_t start = 0; start + runs.size() <= 512 && !found; ++start)
      found = std::equal(runs.begin(), runs.end(), a.begin() + static_cast<long>(start));
    EXPECT_TRUE(found) << to_string(word, TwoOrbitShift::alphabet());
  }
}

TEST(TwoOrbit, ExactlyTwoPeriodicOrbits) {
  TwoOrbitShift s;
  EXPECT_EQ(two_orbit_periodic_words(s, 12), (std::vector<Word>{{0, 1}, {1}}));
}

TEST(TwoOrbit, ConnectorsForAllGaps) {
  TwoOrbitShift s;
  std::vector<Word> samples;
  for (const auto& word : two_orbit_shift_words(s, 6))
    if (word.size() >= 4)
      samples.push_back(word);
  ASSERT_FALSE(samples.empty());
  for (std::size_t i = 0; i < samples.size(); i += 7)
    for (std::size_t j = 3; j < samples.size(); j += 11) {
      auto fam = find_connectors(s, samples[i], samples[j], 2, 30);
      ASSERT_TRUE(fam) << to_string(samples[i], s.alphabet()) << " -> " << to_string(samples[j], s.alphabet());
      for (std::size_t n = 2; n <= 30; ++n)
        EXPECT_TRUE(s.admissible(concat({samples[i], fam->at(n), samples[j]})));
    }
}
