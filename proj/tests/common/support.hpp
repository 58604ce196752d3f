#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "bangl/derivation.hpp"
#include "bangl/formula.hpp"

namespace bangl::testing {

inline std::filesystem::path data_dir() { return BANGL_TEST_DATA_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Derivation fixture(const std::string& name) {
  return parse_derivation(read_text(data_dir() / "derivations" / (name + ".drv")));
}

inline Formula random_formula(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 5);
  switch (pick(rng)) {
    case 0:
    case 1:
      return Formula::atom(rng() % 2 ? "N" : "S");
    case 2:
      return Formula::bang(random_formula(rng, depth - 1));
    case 3:
      return Formula::over(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4:
      return Formula::under(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default:
      return Formula::product(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

inline const char* kAnaphora = "!N, N\\S, !N\\N, N\\S -> S,S";
inline const char* kEllipsis = "N, !(N\\S)/N, N, N, !(N\\S)\\(N\\S) -> S,S";
inline const char* kStrictSloppy =
    "!N, !(!(!N\\S)/N), !(!N\\N)/N, N, !N, !(!N\\S)\\(!N\\S) -> S,S";

}  // namespace bangl::testing
