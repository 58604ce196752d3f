#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bangl/prover.hpp"
#include "support.hpp"

namespace bangl {
namespace {

SearchConfig config(std::size_t budget, std::size_t solutions) {
  SearchConfig cfg;
  cfg.contraction_budget = budget;
  cfg.max_solutions = solutions;
  cfg.timeout = std::chrono::milliseconds(20000);
  return cfg;
}

std::set<std::string> as_set(const std::vector<Derivation>& ds) {
  std::set<std::string> out;
  for (const Derivation& d : ds) out.insert(format_derivation(d));
  return out;
}

std::vector<std::size_t> rule_profile(const Derivation& d) {
  std::vector<std::size_t> out;
  for (Rule r : {Rule::kAx, Rule::kOverL, Rule::kOverR, Rule::kUnderL,
                 Rule::kUnderR, Rule::kBangL, Rule::kBangR, Rule::kPerm1,
                 Rule::kPerm2, Rule::kContr, Rule::kProdL, Rule::kProdR}) {
    out.push_back(count_rule(d, r));
  }
  return out;
}

// Search applies BangL where a formula is consumed, so a hand-written tree is
// matched by its rule profile rather than node for node.
bool has_profile_of(const std::vector<Derivation>& ds, const Derivation& want) {
  auto profile = rule_profile(want);
  return std::any_of(ds.begin(), ds.end(), [&](const Derivation& d) {
    return d.conclusion == want.conclusion && rule_profile(d) == profile;
  });
}

TEST(SearchConfig, ZeroBoundsRejected) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.max_depth = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.contraction_budget = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.max_solutions = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.timeout = std::chrono::milliseconds(0);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.max_depth = 0;
  EXPECT_THROW(prove(parse_sequent("N -> N"), cfg), std::invalid_argument);
}

TEST(Prove, FunctionApplication) {
  auto ds = prove(parse_sequent("N, N\\S -> S"), config(1, 10));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].rule, Rule::kUnderL);
  EXPECT_EQ(count_rule(ds[0], Rule::kAx), 2u);
  EXPECT_EQ(derivation_size(ds[0]), 3u);
}

TEST(Prove, AnaphoraUsesOneContractionAndOnePermutation) {
  auto ds = prove(parse_sequent(testing::kAnaphora), config(4, 1));
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(count_rule(ds[0], Rule::kContr), 1u);
  EXPECT_EQ(count_rule(ds[0], Rule::kPerm2), 1u);
  EXPECT_EQ(ds[0].rule, Rule::kContr);
}

TEST(Prove, AnaphoraFixtureIsAmongResults) {
  SearchConfig cfg = config(1, 1000);
  cfg.normal_form = false;
  auto ds = prove(parse_sequent(testing::kAnaphora), cfg);
  EXPECT_TRUE(has_profile_of(ds, testing::fixture("anaphora")));
}

TEST(Prove, EllipsisDerivable) {
  auto ds = prove(parse_sequent(testing::kEllipsis), config(4, 1));
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(count_rule(ds[0], Rule::kContr), 1u);
  SearchConfig cfg = config(1, 1000);
  cfg.normal_form = false;
  ds = prove(parse_sequent(testing::kEllipsis), cfg);
  EXPECT_TRUE(has_profile_of(ds, testing::fixture("ellipsis")));
}

TEST(Prove, StrictAndSloppyContractionLevels) {
  Sequent s = parse_sequent(testing::kStrictSloppy);
  SearchConfig cfg = config(4, 1);
  cfg.min_contractions = 2;
  cfg.max_contractions = 2;
  auto two = prove(s, cfg);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(count_rule(two[0], Rule::kContr), 2u);

  cfg.min_contractions = 4;
  cfg.max_contractions = 4;
  auto four = prove(s, cfg);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ(count_rule(four[0], Rule::kContr), 4u);
  EXPECT_NE(format_derivation(two[0]), format_derivation(four[0]));
}

TEST(Prove, ContractionWindowIsExact) {
  SearchConfig cfg = config(4, 2000);
  cfg.min_contractions = 2;
  cfg.max_contractions = 2;
  auto ds = prove(parse_sequent(testing::kStrictSloppy), cfg);
  ASSERT_GT(ds.size(), 100u);
  for (const Derivation& d : ds) {
    ASSERT_EQ(count_rule(d, Rule::kContr), 2u);
    ASSERT_TRUE(check_derivation(d).ok);
  }
}

TEST(Prove, ResultsOrderedByContractions) {
  SearchConfig cfg = config(2, 3000);
  cfg.max_contractions = 3;
  auto ds = prove(parse_sequent(testing::kStrictSloppy), cfg);
  ASSERT_FALSE(ds.empty());
  for (std::size_t i = 1; i < ds.size(); ++i) {
    ASSERT_LE(count_rule(ds[i - 1], Rule::kContr), count_rule(ds[i], Rule::kContr));
  }
}

TEST(Prove, UnprovableWithinEveryBudget) {
  for (const char* text : {"N -> S", "N, N -> S", "N, N -> S,S", "S -> N\\S"}) {
    for (std::size_t budget = 1; budget <= 4; ++budget) {
      EXPECT_TRUE(prove(parse_sequent(text), config(budget, 10)).empty())
          << text << " budget " << budget;
    }
  }
}

TEST(Prove, RightRulesAndBangRight) {
  EXPECT_FALSE(prove(parse_sequent("-> S/S"), config(1, 1)).empty());
  EXPECT_FALSE(prove(parse_sequent("!N -> !(!N)"), config(1, 1)).empty());
  EXPECT_TRUE(prove(parse_sequent("N -> !N"), config(2, 1)).empty());
  auto ds = prove(parse_sequent("!N -> N,N"), config(1, 10));
  ASSERT_FALSE(ds.empty());
  EXPECT_EQ(count_rule(ds[0], Rule::kContr), 1u);
}

TEST(Prove, DeterministicOrder) {
  Sequent s = parse_sequent(testing::kStrictSloppy);
  SearchConfig cfg = config(1, 500);
  auto a = prove(s, cfg);
  auto b = prove(s, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(format_derivation(a[i]), format_derivation(b[i]));
  }
}

TEST(Prove, TimeoutIsDistinctFromEmpty) {
  SearchConfig cfg = config(4, 1000000);
  cfg.timeout = std::chrono::milliseconds(1);
  EXPECT_THROW(prove(parse_sequent(testing::kStrictSloppy), cfg), SearchTimeout);
}

TEST(Prove, StatsReported) {
  SearchStats stats;
  prove(parse_sequent(testing::kAnaphora), config(1, 10), &stats);
  EXPECT_GT(stats.states, 0u);
  EXPECT_EQ(stats.max_contractions, count_bangs(parse_sequent(testing::kAnaphora)));
}

TEST(CountBangs, CountsNested) {
  EXPECT_EQ(count_bangs(parse_sequent(testing::kStrictSloppy)), 10u);
  EXPECT_EQ(count_bangs(parse_sequent("N -> S")), 0u);
}

class RandomSequents : public ::testing::Test {
 protected:
  std::vector<Sequent> draw(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Sequent> out;
    while (out.size() < n) {
      Sequent s{{}, testing::random_formula(rng, 2)};
      std::size_t len = 1 + rng() % 3;
      for (std::size_t i = 0; i < len; ++i) {
        s.antecedent.push_back(testing::random_formula(rng, 2));
      }
      out.push_back(std::move(s));
    }
    return out;
  }
};

TEST_F(RandomSequents, EveryResultChecks) {
  std::size_t proved = 0;
  std::size_t found = 0;
  for (const Sequent& s : draw(400, 7)) {
    SearchConfig cfg = config(2, 20);
    cfg.max_depth = 12;
    cfg.timeout = std::chrono::milliseconds(2000);
    std::vector<Derivation> ds;
    try {
      ds = prove(s, cfg);
    } catch (const SearchTimeout&) {
      continue;
    }
    proved += !ds.empty();
    found += ds.size();
    for (const Derivation& d : ds) {
      ASSERT_EQ(d.conclusion, s);
      CheckResult r = check_derivation(d);
      ASSERT_TRUE(r.ok) << format_sequent(s) << ": " << r.reason;
      ASSERT_LE(derivation_depth(d), cfg.max_depth);
    }
  }
  EXPECT_GT(proved, 20u);
  EXPECT_GT(found, proved);
}

TEST_F(RandomSequents, LargerBoundsKeepEarlierSolutions) {
  const std::size_t cap = 100000;
  for (const Sequent& s : draw(150, 11)) {
    SearchConfig small = config(1, cap);
    small.max_depth = 8;
    small.timeout = std::chrono::milliseconds(2000);
    SearchConfig deeper = small;
    deeper.max_depth = 14;
    SearchConfig wider = deeper;
    wider.contraction_budget = 2;
    try {
      auto a = as_set(prove(s, small));
      auto b = as_set(prove(s, deeper));
      auto c = as_set(prove(s, wider));
      if (c.size() >= cap) continue;
      ASSERT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()))
          << format_sequent(s);
      ASSERT_TRUE(std::includes(c.begin(), c.end(), b.begin(), b.end()))
          << format_sequent(s);
    } catch (const SearchTimeout&) {
    }
  }
}

TEST(Monotonicity, FigureSequentsAcrossBudgets) {
  Sequent s = parse_sequent(testing::kAnaphora);
  std::set<std::string> prev;
  for (std::size_t budget = 1; budget <= 3; ++budget) {
    SearchConfig cfg = config(budget, 100000);
    cfg.max_contractions = 2;
    auto cur = as_set(prove(s, cfg));
    EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = std::move(cur);
  }
}

}  // namespace
}  // namespace bangl
