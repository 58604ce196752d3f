#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "bangl/fock.hpp"
#include "bangl/formula.hpp"
#include "bangl/tensor.hpp"

namespace bangl {

constexpr std::size_t kFullTruncation = std::numeric_limits<std::size_t>::max();

struct SpaceAssignment {
  std::size_t dim_N = 2;
  std::size_t dim_S = 2;
  // Highest Fock layer kept; kFullTruncation keeps every layer.
  std::size_t fock_truncation = 1;
  std::size_t fulldual_cap = kDefaultFullDualCap;

  void validate() const;
};

struct Shape;

// One wire of a diagram.
struct Factor {
  enum class Kind { kBase, kFock };

  Kind kind = Kind::kBase;
  std::string atom;
  // Fock factors only.
  std::shared_ptr<const Shape> inner;
  std::size_t max_layer = 0;

  std::size_t inner_dim() const;
  std::size_t dim() const;
  bool is_fock() const { return kind == Kind::kFock; }
  std::string text() const;

  friend bool operator==(const Factor& a, const Factor& b);
};

struct Shape {
  std::vector<Factor> factors;

  std::size_t size() const { return factors.size(); }
  bool empty() const { return factors.empty(); }
  std::size_t total_dim() const;
  Extents extents() const;
  // "[N S F1(N S)]"
  std::string text() const;

  Shape slice(std::size_t begin, std::size_t end) const;
  friend Shape operator+(Shape a, const Shape& b);
  friend bool operator==(const Shape& a, const Shape& b) {
    return a.factors == b.factors;
  }
};

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Factor base_factor(const std::string& atom, const SpaceAssignment& sa);
Factor fock_factor(Shape inner, const SpaceAssignment& sa);

// ⟦A,B⟧ and ⟦A\B⟧, ⟦B/A⟧ all list ⟦A⟧'s factors first. ⟦!A⟧ is one Fock
// factor over ⟦A⟧.
Shape interpret_formula(const Formula& f, const SpaceAssignment& sa);
Shape interpret_formulas(const std::vector<Formula>& fs, const SpaceAssignment& sa);

}  // namespace bangl
