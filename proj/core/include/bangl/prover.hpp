#pragma once

#include <chrono>
#include <optional>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bangl/derivation.hpp"
#include "bangl/formula.hpp"

namespace bangl {

struct SearchConfig {
  std::size_t max_depth = 40;
  // Contr applications allowed on each !-formula occurrence.
  std::size_t contraction_budget = 1;
  std::size_t max_solutions = 1;
  std::chrono::milliseconds timeout{10000};
  // Skip derivations that differ from an enumerated one only by the order of
  // independent left rules. Provability is unaffected.
  bool normal_form = true;
  // Only derivations with this many Contr nodes or more are returned.
  std::size_t min_contractions = 0;
  // Upper bound on Contr nodes. Unset means contraction_budget times the
  // number of ! occurrences in the sequent.
  std::optional<std::size_t> max_contractions;

  // Throws std::invalid_argument when a bound is zero.
  void validate() const;
};

class SearchTimeout : public std::runtime_error {
 public:
  SearchTimeout() : std::runtime_error("proof search timed out") {}
};

struct SearchStats {
  std::size_t states = 0;
  std::size_t memo_hits = 0;
  std::size_t max_contractions = 0;
};

/// Backward proof search.
///
/// Derivations come out ordered by their number of Contr nodes, then by a
/// fixed rule order. Every result passes check_derivation and has depth at
/// most cfg.max_depth. An empty result means no proof within the bounds.
/// Throws SearchTimeout.
std::vector<Derivation> prove(const Sequent& sequent, const SearchConfig& cfg,
                              SearchStats* stats = nullptr);

// Total number of '!' connectives in the sequent.
std::size_t count_bangs(const Sequent& sequent);

}  // namespace bangl
