#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gen.hpp"
#include "spinor/weights.hpp"

using namespace spinor;

namespace {

Weight W(std::string_view s) { return parse_weight(s); }

// Weyl dimension by brute-force product over positive roots in doubles, as an
// independent check of the exact routine.
double weyl_dim_float(const Weight& mu, LieType t) {
  const Weight r = rho(t);
  std::vector<double> l, rr;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    l.push_back(mu[i].to_double() + r[i].to_double());
    rr.push_back(r[i].to_double());
  }
  double num = 1.0, den = 1.0;
  const std::size_t k = mu.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      num *= (l[i] - l[j]) * (l[i] + l[j]);
      den *= (rr[i] - rr[j]) * (rr[i] + rr[j]);
    }
    if (t.series == Series::B) {
      num *= l[i];
      den *= rr[i];
    }
  }
  return num / den;
}

}  // namespace

TEST(HalfInt, ParsesFractionsDecimalsAndIntegers) {
  EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
  EXPECT_EQ(HalfInt::parse("-1/2").twice(), -1);
  EXPECT_EQ(HalfInt::parse("+1").twice(), 2);
  EXPECT_EQ(HalfInt::parse("2.5").twice(), 5);
  EXPECT_EQ(HalfInt::parse("-0.5").twice(), -1);
  EXPECT_EQ(HalfInt::parse("4/1").twice(), 8);
  EXPECT_THROW(HalfInt::parse("1/3"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse("0.25"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse("x"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse(""), std::invalid_argument);
}

TEST(HalfInt, StringRoundTripAndArithmetic) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const HalfInt a = HalfInt::from_twice(gen::uniform_int(rng, -200, 200));
    const HalfInt b = HalfInt::from_twice(gen::uniform_int(rng, -200, 200));
    EXPECT_EQ(HalfInt::parse(a.str()), a);
    EXPECT_DOUBLE_EQ((a + b).to_double(), a.to_double() + b.to_double());
    EXPECT_DOUBLE_EQ((a - b).to_double(), a.to_double() - b.to_double());
    EXPECT_EQ(a < b, a.to_double() < b.to_double());
    EXPECT_EQ(same_parity(a, b), std::fmod(std::abs(a.to_double() - b.to_double()), 1.0) == 0.0);
  }
}

TEST(Rho, MatchesDisplayedValues) {
  EXPECT_EQ(rho(Group(3)), W("3/2,1/2"));
  EXPECT_EQ(rho(Group(4)), W("2,1,0"));
  EXPECT_EQ(rho(Group(2)), W("1,0"));
  EXPECT_EQ(rho(Group(5)), W("5/2,3/2,1/2"));
}

TEST(Group, RejectsMOne) { EXPECT_THROW(Group(1), std::invalid_argument); }

TEST(Interlaces, Examples) {
  EXPECT_TRUE(interlaces(W("1"), W("0"), InterlaceStyle::BtoD));
  EXPECT_TRUE(interlaces(W("1,0"), W("1"), InterlaceStyle::DtoB));
  EXPECT_FALSE(interlaces(W("1"), W("2"), InterlaceStyle::BtoD));
  EXPECT_FALSE(interlaces(W("0"), W("1"), InterlaceStyle::BtoD));
  EXPECT_TRUE(interlaces(W("1"), W("-1"), InterlaceStyle::BtoD));
  EXPECT_TRUE(interlaces(W("1,0,0"), W("2,1"), InterlaceStyle::Shifted));
  EXPECT_FALSE(interlaces(W("1,0,0"), W("2,0"), InterlaceStyle::Shifted));
  EXPECT_FALSE(interlaces(W("1"), W("1/2"), InterlaceStyle::BtoD));
}

TEST(Interlaces, RankMismatchThrows) {
  // (0,0) over (1) has unequal ranks for the B-to-D style.
  EXPECT_THROW(interlaces(W("0,0"), W("1"), InterlaceStyle::BtoD), std::invalid_argument);
  EXPECT_THROW(interlaces(W("1"), W("1"), InterlaceStyle::DtoB), std::invalid_argument);
}

TEST(Interlaces, TopEntryMonotone) {
  std::mt19937_64 rng(5);
  for (int m = 2; m <= 9; ++m) {
    const Group g(m);
    const auto uppers = gen::all_dominant(group_M(g), 3, false);
    const auto lowers = gen::all_dominant(group_Mp(g), 3, false);
    const InterlaceStyle st = level_style(g, Level::MtoMp);
    for (int k = 0; k < 200; ++k) {
      Weight u = gen::pick(rng, uppers);
      const Weight& l = gen::pick(rng, lowers);
      if (!interlaces(u, l, st)) continue;
      u[0] += gen::uniform_int(rng, 1, 3);
      EXPECT_TRUE(interlaces(u, l, st)) << "m=" << m << " upper=" << to_string(u) << " lower=" << to_string(l);
    }
  }
}

TEST(Interlaces, LowerEntryEnlargementCanBreakChain) {
  // Raising a non-top entry can violate b_{i-1} >= a_i, so monotonicity holds
  // only for the top entry.
  EXPECT_TRUE(interlaces(W("2,1"), W("1,0"), InterlaceStyle::BtoD));
  EXPECT_FALSE(interlaces(W("2,2"), W("1,0"), InterlaceStyle::BtoD));
}

TEST(GtBranch, Examples) {
  EXPECT_EQ(gt_branch(W("0"), Group(3), Level::MtoMp), std::vector<Weight>{W("0")});
  EXPECT_EQ(gt_branch(W("1"), Group(3), Level::MtoMp), (std::vector<Weight>{W("-1"), W("0"), W("1")}));
  EXPECT_EQ(gt_branch(W("1,0"), Group(4), Level::MtoMp), (std::vector<Weight>{W("0"), W("1")}));
  EXPECT_THROW(gt_branch(W("0,1"), Group(5), Level::MtoMp), std::invalid_argument);
}

TEST(GtBranch, SortedDuplicateFreeAndInterlacing) {
  for (int m = 2; m <= 9; ++m) {
    const Group g(m);
    for (Level lv : {Level::MtoMp, Level::KtoM})
      for (bool half : {false, true})
        for (const Weight& mu : gen::all_dominant(level_upper(g, lv), 3, half)) {
          const auto out = gt_branch(mu, g, lv);
          EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
          EXPECT_EQ(std::set<Weight>(out.begin(), out.end()).size(), out.size());
          for (const Weight& t : out) {
            EXPECT_TRUE(interlaces(mu, t, level_style(g, lv)));
            EXPECT_TRUE(is_dominant(t, level_lower(g, lv)));
          }
        }
  }
}

TEST(WeylDim, Examples) {
  EXPECT_EQ(weyl_dim(W("0,0"), LieType{Series::B, 2}), 1);
  EXPECT_EQ(weyl_dim(W("1"), LieType{Series::B, 1}), 3);
  EXPECT_EQ(weyl_dim(W("1,1"), LieType{Series::B, 2}), 10);
  EXPECT_EQ(weyl_dim(W("1/2,1/2"), LieType{Series::B, 2}), 4);
  EXPECT_EQ(weyl_dim(W("1,0,0"), LieType{Series::D, 3}), 6);
  EXPECT_EQ(weyl_dim(W("1/2,-1/2"), LieType{Series::D, 2}), 2);
  EXPECT_THROW(weyl_dim(W("0,1"), LieType{Series::B, 2}), std::invalid_argument);
}

TEST(WeylDim, AgreesWithFloatingProduct) {
  for (int r = 1; r <= 4; ++r)
    for (Series s : {Series::B, Series::D}) {
      const LieType t{s, r};
      for (bool half : {false, true})
        for (const Weight& mu : gen::all_dominant(t, 3, half))
          EXPECT_NEAR(weyl_dim(mu, t).convert_to<double>(), weyl_dim_float(mu, t), 1e-6) << to_string(mu);
    }
}

TEST(WeylDim, BranchingDimensionSum) {
  for (int m = 2; m <= 9; ++m) {
    const Group g(m);
    for (Level lv : {Level::MtoMp, Level::KtoM})
      for (bool half : {false, true})
        for (const Weight& mu : gen::all_dominant(level_upper(g, lv), 4, half)) {
          BigInt sum = 0;
          for (const Weight& t : gt_branch(mu, g, lv)) sum += weyl_dim(t, level_lower(g, lv));
          EXPECT_EQ(weyl_dim(mu, level_upper(g, lv)), sum) << "m=" << m << " mu=" << to_string(mu);
        }
  }
}
