#include <gtest/gtest.h>

#include "json.hpp"

#include "bangl/derivation.hpp"
#include "support.hpp"

namespace bangl {
namespace {

Derivation* find_rule(Derivation& d, Rule rule) {
  if (d.rule == rule) return &d;
  for (Derivation& p : d.premises) {
    if (Derivation* hit = find_rule(p, rule)) return hit;
  }
  return nullptr;
}

TEST(CheckDerivation, FixturesAreValid) {
  for (const char* name : {"anaphora", "ellipsis", "strict", "sloppy"}) {
    Derivation d = testing::fixture(name);
    CheckResult r = check_derivation(d);
    EXPECT_TRUE(r.ok) << name << ": " << r.reason;
  }
}

TEST(CheckDerivation, AxiomMustRepeatItsFormula) {
  Derivation d{parse_sequent("N -> S"), Rule::kAx, {}, {}};
  EXPECT_FALSE(check_derivation(d).ok);
  d.conclusion = parse_sequent("N -> N");
  EXPECT_TRUE(check_derivation(d).ok);
  d.conclusion = parse_sequent("N, N -> N");
  EXPECT_FALSE(check_derivation(d).ok);
}

TEST(CheckDerivation, PermOffByOneFails) {
  Derivation d = testing::fixture("anaphora");
  Derivation* perm = find_rule(d, Rule::kPerm2);
  ASSERT_NE(perm, nullptr);
  perm->data[0] += 1;
  CheckResult r = check_derivation(d);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.reason.empty());

  Derivation again = testing::fixture("anaphora");
  find_rule(again, Rule::kPerm2)->data[1] += 1;
  EXPECT_FALSE(check_derivation(again).ok);
}

TEST(CheckDerivation, ReportsPathToFailingNode) {
  Derivation d = testing::fixture("anaphora");
  Derivation* leaf = &d;
  std::vector<std::size_t> path;
  while (!leaf->premises.empty()) {
    path.push_back(leaf->premises.size() - 1);
    leaf = &leaf->premises.back();
  }
  leaf->conclusion.goal = Formula::atom(leaf->conclusion.goal == Formula::atom("S") ? "N" : "S");
  CheckResult r = check_derivation(d);
  EXPECT_FALSE(r.ok);
  ASSERT_LE(r.path.size(), path.size());
  EXPECT_TRUE(std::equal(r.path.begin(), r.path.end(), path.begin()));
}

TEST(CheckDerivation, BangRightNeedsBangedContext) {
  Derivation ax{parse_sequent("!N -> !N"), Rule::kAx, {}, {}};
  Derivation ok{parse_sequent("!N -> !(!N)"), Rule::kBangR, {}, {ax}};
  EXPECT_TRUE(check_derivation(ok).ok);
  Derivation ax2{parse_sequent("N -> N"), Rule::kAx, {}, {}};
  Derivation bad{parse_sequent("N -> !N"), Rule::kBangR, {}, {ax2}};
  EXPECT_FALSE(check_derivation(bad).ok);
}

TEST(CheckDerivation, ContractionCollapsesAdjacentCopies) {
  Derivation ax{parse_sequent("!N, !N -> (!N,!N)"), Rule::kAx, {}, {}};
  Derivation n1{parse_sequent("!N -> !N"), Rule::kAx, {}, {}};
  Derivation pair{parse_sequent("!N, !N -> !N,!N"), Rule::kProdR, {1}, {n1, n1}};
  Derivation contr{parse_sequent("!N -> !N,!N"), Rule::kContr, {0}, {pair}};
  EXPECT_TRUE(check_derivation(pair).ok);
  EXPECT_TRUE(check_derivation(contr).ok);
  contr.data = {1};
  EXPECT_FALSE(check_derivation(contr).ok);
  EXPECT_FALSE(check_derivation(ax).ok);
}

TEST(CountRule, FigureContractions) {
  EXPECT_EQ(count_rule(testing::fixture("anaphora"), Rule::kContr), 1u);
  EXPECT_EQ(count_rule(testing::fixture("anaphora"), Rule::kPerm2), 1u);
  EXPECT_EQ(count_rule(testing::fixture("ellipsis"), Rule::kContr), 1u);
  EXPECT_EQ(count_rule(testing::fixture("strict"), Rule::kContr), 2u);
  EXPECT_EQ(count_rule(testing::fixture("sloppy"), Rule::kContr), 4u);
  EXPECT_EQ(count_rule(testing::fixture("ellipsis"), Rule::kPerm1), 0u);
}

TEST(Serialization, TextRoundTrip) {
  for (const char* name : {"anaphora", "ellipsis", "strict", "sloppy"}) {
    Derivation d = testing::fixture(name);
    std::string text = format_derivation(d);
    Derivation back = parse_derivation(text);
    EXPECT_EQ(format_derivation(back), text) << name;
    EXPECT_EQ(derivation_size(back), derivation_size(d));
    EXPECT_EQ(derivation_depth(back), derivation_depth(d));
  }
}

TEST(Serialization, JsonMirrorsTree) {
  Derivation d = testing::fixture("anaphora");
  auto j = nlohmann::json::parse(derivation_to_json(d));
  EXPECT_EQ(j["rule"], "Contr");
  EXPECT_EQ(j["conclusion"], format_sequent(d.conclusion));
  EXPECT_EQ(j["data"], nlohmann::json::array({0}));
  EXPECT_EQ(j["premises"].size(), d.premises.size());
}

TEST(Serialization, RuleNames) {
  for (Rule r : {Rule::kAx, Rule::kOverL, Rule::kOverR, Rule::kUnderL,
                 Rule::kUnderR, Rule::kBangL, Rule::kBangR, Rule::kPerm1,
                 Rule::kPerm2, Rule::kContr, Rule::kProdL, Rule::kProdR}) {
    EXPECT_EQ(rule_from_name(rule_name(r)), r);
  }
  EXPECT_FALSE(rule_from_name("Cut").has_value());
}

}  // namespace
}  // namespace bangl
