#pragma once

#include <vector>

#include "bangl/diagram.hpp"
#include "bangl/fock.hpp"
#include "bangl/tensor.hpp"

namespace bangl {

struct EvalOptions {
  DeltaKind kind = DeltaKind::k_extension();
  std::size_t fulldual_cap = kDefaultFullDualCap;
};

// Applies the diagram to the tensor product of `inputs`, one tensor per
// antecedent formula. Each input may be flat or shaped; only its size is
// checked. The result has the extents of the output shape.
//
// Delta boxes expand to the formal sum of the chosen kind, so the work grows
// with the number of summands rather than with the size of product spaces.
Tensor evaluate(const Diagram& diagram, const std::vector<Tensor>& inputs,
                const EvalOptions& options = {});

// Same, for a bare term whose input is given as one tensor over all wires.
Tensor evaluate_term(const Term& term, const Tensor& input,
                     const EvalOptions& options = {});

}  // namespace bangl
