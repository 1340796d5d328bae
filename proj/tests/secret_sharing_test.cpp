#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

#include "tracecode/secret_sharing.hpp"
#include "tracecode/sets.hpp"
#include "tracecode/theorems.hpp"

using namespace tracecode;

namespace {

// c is minimal iff the codewords supported inside supp(c) are exactly its p scalar multiples (0 included).
std::set<std::vector<std::uint8_t>> all_codewords(const DefiningSet& D) {
  std::set<std::vector<std::uint8_t>> out;
  for (std::uint32_t x = 0; x < D.field().order(); ++x) out.insert(codeword(D, FieldElement{x}));
  return out;
}

std::uint64_t oracle_minimal_count(const DefiningSet& D) {
  const auto words = all_codewords(D);
  const unsigned p = D.field().characteristic();
  std::uint64_t minimal = 0;
  for (const auto& c : words) {
    if (hamming_weight(c) == 0) continue;
    std::uint64_t inside = 0;
    for (const auto& o : words) {
      bool sub = true;
      for (std::size_t i = 0; i < c.size() && sub; ++i) sub = !(o[i] != 0 && c[i] == 0);
      inside += sub;
    }
    minimal += inside == p;
  }
  return minimal;
}

}  // namespace

TEST(Ratio, TrCubicExamples) {
  struct Row {
    unsigned m;
    std::uint64_t lo, hi;
    bool passes;
  };
  for (Row row : {Row{6, 12, 20, true}, Row{7, 32, 40, true}, Row{8, 48, 64, true}, Row{5, 4, 8, false}}) {
    const auto r = ratio_check(build_code_weights(tr_cubic_set(make_field(2, row.m))), CodeFamily::TrCubic);
    EXPECT_EQ(r.w_min, row.lo) << row.m;
    EXPECT_EQ(r.w_max, row.hi) << row.m;
    EXPECT_EQ(r.passes, row.passes) << row.m;
    EXPECT_EQ(r.threshold, Rational(1, 2));
  }
}

TEST(Ratio, BoundaryIsStrict) {
  const auto r = ratio_check(predict_thm4(5), CodeFamily::TrCubic);
  EXPECT_EQ(r.ratio, Rational(1, 2));
  EXPECT_FALSE(r.passes);
  ASSERT_TRUE(r.m_congruence_case);
  EXPECT_FALSE(r.m_congruence_case->in_range);
  EXPECT_EQ(r.unreduced(), "4/8");
}

TEST(Ratio, TernaryThreshold) {
  // weights 2 and 3 over GF(3): 2/3 is not > 2/3
  WeightDistribution wd{3, 2, 5, 2, {{0, 1}, {2, 4}, {3, 4}}};
  EXPECT_FALSE(ratio_check(wd).passes);
  wd.counts = {{0, 1}, {3, 4}, {4, 4}};
  EXPECT_TRUE(ratio_check(wd).passes);  // 3/4 > 2/3
  WeightDistribution zero{2, 2, 3, 0, {{0, 1}}};
  EXPECT_THROW(ratio_check(zero), std::invalid_argument);
}

TEST(Ratio, CongruenceRowsAgreeWithTablesAndBruteForce) {
  for (unsigned m = 4; m <= 16; ++m) {
    const auto table = m % 2 ? predict_thm4(m) : predict_thm5(m);
    const auto r = ratio_check(table, CodeFamily::TrCubic);
    const auto c = *r.m_congruence_case;
    EXPECT_EQ(r.ratio, Rational(static_cast<std::int64_t>(c.numerator), static_cast<std::int64_t>(c.denominator)))
        << c.label;
    EXPECT_EQ(r.passes, m >= 6) << m;
    EXPECT_EQ(c.in_range, m >= 6) << m;
    if (m <= 12) {
      const auto brute = ratio_check(build_code_weights(tr_cubic_set(make_field(2, m))), CodeFamily::TrCubic);
      EXPECT_EQ(brute.ratio, r.ratio) << m;
    }
  }
  EXPECT_EQ(tr_cubic_case(8).label, "m = 0 (mod 8), m >= 8");
  EXPECT_EQ(tr_cubic_case(8).numerator, 48u);
  EXPECT_EQ(tr_cubic_case(8).denominator, 64u);
}

TEST(Minimal, BinarySimplexAllMinimal) {
  auto f = make_field(2, 2);
  const auto r = minimal_codewords(nonzero_set(f));
  EXPECT_EQ(r.nonzero_codewords, 3u);
  EXPECT_EQ(r.minimal_codewords, 3u);
  EXPECT_TRUE(r.all_minimal());
}

TEST(Minimal, FullSpaceHasNonMinimalWord) {
  auto f = make_field(2, 2);
  DefiningSet D(f, {f->one(), f->generator()}, "basis");
  const auto r = minimal_codewords(D);
  EXPECT_EQ(r.nonzero_codewords, 3u);
  EXPECT_EQ(r.minimal_codewords, 2u);
  EXPECT_FALSE(r.all_minimal());
  for (const auto& c : r.minimal_list) EXPECT_EQ(hamming_weight(c), 1u);
}

TEST(Minimal, TrCubicSixAllMinimal) {
  const auto r = minimal_codewords(tr_cubic_set(make_field(2, 6)));
  EXPECT_EQ(r.nonzero_codewords, 63u);
  EXPECT_EQ(r.minimal_codewords, 63u);
  EXPECT_EQ(r.minimal_list.size(), 63u);
}

TEST(Minimal, AgreesWithSubcodeOracle) {
  std::mt19937_64 rng(21);
  for (auto [p, m] : {std::pair{2u, 4u}, {3u, 2u}, {3u, 3u}, {5u, 2u}, {2u, 5u}}) {
    auto f = make_field(p, m);
    auto nonzero = canonical_elements(*f);
    nonzero.erase(nonzero.begin());
    for (int t = 0; t < 15; ++t) {
      std::shuffle(nonzero.begin(), nonzero.end(), rng);
      const std::size_t size = 1 + rng() % std::min<std::size_t>(nonzero.size(), 9);
      DefiningSet D(f, {nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(size)}, "random");
      const auto r = minimal_codewords(D, 1);
      ASSERT_EQ(r.minimal_codewords, oracle_minimal_count(D)) << p << "^" << m << " trial " << t;
    }
  }
}

TEST(Minimal, ScalarClosure) {
  auto f = make_field(3, 3);
  const auto r = minimal_codewords(simplex_coset_reps(f));
  EXPECT_EQ(r.minimal_codewords % 2, 0u);
  for (const auto& c : r.minimal_list) {
    const auto lead = std::find_if(c.begin(), c.end(), [](std::uint8_t v) { return v; });
    ASSERT_NE(lead, c.end());
    EXPECT_EQ(*lead, 1);
  }
}

TEST(Minimal, DealerCountsWordsTouchingFirstCoordinate) {
  auto f = make_field(2, 3);
  const auto D = nonzero_set(f);
  const auto r = minimal_codewords(D);
  std::uint64_t expected = 0;
  for (const auto& c : r.minimal_list) expected += c[0] != 0;
  EXPECT_EQ(r.dealer_sets, expected);
  EXPECT_EQ(r.dealer_sets, 4u);  // simplex [7,3]: half the nonzero words cover a given coordinate
}

TEST(Minimal, EnumerationBound) {
  auto f = make_field(2, 21);
  DefiningSet D(f, {f->one()}, "one");
  // dimension 1 is fine even in a large field
  EXPECT_EQ(minimal_codewords(D).nonzero_codewords, 1u);
  EXPECT_THROW(minimal_codewords(nonzero_set(make_field(3, 13))), LimitError);
}

TEST(Minimal, PassingRatioImpliesAllMinimalUpToTwelve) {
  for (unsigned m = 4; m <= 12; ++m) {
    const auto s = secret_sharing_report(tr_cubic_set(make_field(2, m)), CodeFamily::TrCubic);
    EXPECT_FALSE(s.violation) << m;
    if (s.ratio.passes) {
      EXPECT_TRUE(s.minimal.all_minimal()) << m;
    }
  }
}
