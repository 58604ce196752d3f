#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bangl/formula.hpp"

namespace bangl {

enum class Rule {
  kAx,
  kOverL,
  kOverR,
  kUnderL,
  kUnderR,
  kBangL,
  kBangR,
  kPerm1,
  kPerm2,
  kContr,
  kProdL,
  kProdR,
};

std::string_view rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);

// A proof tree. Positions in `data` index the conclusion's antecedent:
//
//   Ax              -
//   UnderL  [p, g]  A\B at p, Γ = antecedent[p-g, p)
//   OverL   [p, g]  B/A at p, Γ = antecedent(p, p+g]
//   UnderR, OverR   -
//   BangL   [p]     !A at p
//   BangR           -
//   Contr   [p]     !A at p; the premise holds !A, !A at p, p+1
//   Perm2   [i, g]  !A at i moves right past antecedent(i, i+g]
//   Perm1   [i, g]  !A at i+g moves left past antecedent[i, i+g)
//   ProdL   [p]     (A,B) at p
//   ProdR   [k]     antecedent[0, k) proves the left component
struct Derivation {
  Sequent conclusion;
  Rule rule = Rule::kAx;
  std::vector<std::size_t> data;
  std::vector<Derivation> premises;
};

struct CheckResult {
  bool ok = true;
  // Child indices from the root to the first failing node.
  std::vector<std::size_t> path;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Verifies that every node is an exact instance of its rule schema.
CheckResult check_derivation(const Derivation& d);

std::size_t count_rule(const Derivation& d, Rule rule);
std::size_t derivation_depth(const Derivation& d);
std::size_t derivation_size(const Derivation& d);

// One node per line, `<rule> <conclusion> [data]`, children indented by two
// spaces. Nodes without data omit the bracket.
std::string format_derivation(const Derivation& d);
Derivation parse_derivation(std::string_view text, const AtomSet& atoms = {});

// Structured form with fields "rule", "conclusion", "data", "premises".
std::string derivation_to_json(const Derivation& d, int indent = -1);

}  // namespace bangl
