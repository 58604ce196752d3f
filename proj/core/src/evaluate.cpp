#include "bangl/evaluate.hpp"

#include "bangl/word_tensors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace bangl {

namespace {

// A pure tensor: consecutive blocks of wires, one tensor axis per wire.
using Summand = std::vector<Tensor>;
using Value = std::vector<Summand>;

// Scalar blocks carry no wires; fold them into a neighbour.
void normalize(Summand& s) {
  double scale = 1.0;
  Summand kept;
  for (auto& block : s) {
    if (block.rank() == 0) {
      scale *= block[0];
    } else {
      kept.push_back(std::move(block));
    }
  }
  if (kept.empty()) {
    s = {Tensor::scalar(scale)};
    return;
  }
  if (scale != 1.0) kept.front() *= scale;
  s = std::move(kept);
}

// Block index whose first wire is `wire`, or the block count at the end.
std::optional<std::size_t> boundary(const Summand& s, std::size_t wire) {
  std::size_t at = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (at == wire && s[i].rank() > 0) return i;
    at += s[i].rank();
    if (at > wire) return std::nullopt;
  }
  if (at == wire) return s.size();
  return std::nullopt;
}

struct Located {
  std::size_t block;
  std::size_t axis;
};

Located locate(const Summand& s, std::size_t wire) {
  std::size_t at = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (wire < at + s[i].rank()) return {i, wire - at};
    at += s[i].rank();
  }
  throw std::logic_error("wire " + std::to_string(wire) + " out of range");
}

// Merges the blocks holding wires [begin, end) into one block.
Located merge_range(Summand& s, std::size_t begin, std::size_t end) {
  const Located first = locate(s, begin);
  const Located last = locate(s, end - 1);
  if (first.block == last.block) return first;
  Tensor merged = s[first.block];
  for (std::size_t i = first.block + 1; i <= last.block; ++i) merged = outer(merged, s[i]);
  s[first.block] = std::move(merged);
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(first.block) + 1,
          s.begin() + static_cast<std::ptrdiff_t>(last.block) + 1);
  return first;
}

Tensor merge_all(const Summand& s) {
  Tensor out = Tensor::scalar(1.0);
  for (const auto& b : s) out = outer(out, b);
  return out;
}

// Σ e_i ⊗ e_i over the shape. With `layer1` the sum runs over the layer-1
// carrier of every Fock factor only.
Tensor identity_pair(const Shape& shape, bool layer1) {
  Tensor t = Tensor::scalar(1.0);
  for (const auto& f : shape.factors) {
    Tensor proj;
    if (layer1 && f.is_fock()) {
      const Tensor e = layer1_expansion(f);
      proj = tensordot(e, e, {1}, {1});
    } else {
      const std::size_t d = f.dim();
      proj = Tensor({d, d});
      for (std::size_t i = 0; i < d; ++i) proj[i * d + i] = 1.0;
    }
    t = outer(t, proj);
  }
  // Axes are (a0, b0, a1, b1, …); bring every a before every b.
  const std::size_t k = shape.size();
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < k; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < k; ++i) perm.push_back(2 * i + 1);
  return t.transposed(perm);
}

Tensor eps_map(const Factor& fock) {
  const std::size_t n = fock.inner_dim();
  Tensor m({n, fock.dim()});
  for (std::size_t i = 0; i < n; ++i) m[i * fock.dim() + 1 + i] = 1.0;
  return m;
}

Tensor incl_map(const Factor& fock) {
  const std::size_t n = fock.inner_dim();
  Tensor m({fock.dim(), n});
  for (std::size_t i = 0; i < n; ++i) m[(1 + i) * n + i] = 1.0;
  return m;
}

bool layer1_along(const Tensor& t, std::size_t axis, std::size_t n) {
  std::size_t stride = 1;
  for (std::size_t i = axis + 1; i < t.rank(); ++i) stride *= t.extents()[i];
  const std::size_t len = t.extents()[axis];
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const std::size_t idx = (flat / stride) % len;
    if ((idx == 0 || idx > n) && t[flat] != 0.0) return false;
  }
  return true;
}

bool all_zero(const std::vector<double>& xs) {
  for (double x : xs) {
    if (x != 0.0) return false;
  }
  return true;
}

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& options) : options_(options) {}

  void apply(const DiagramTerm& t, Value& value, std::size_t off) {
    switch (t.kind) {
      case TermKind::kId:
        return;
      case TermKind::kSeq:
        apply(*t.left, value, off);
        apply(*t.right, value, off);
        return;
      case TermKind::kPar:
        apply(*t.left, value, off);
        apply(*t.right, value, off + t.left->output.size());
        return;
      case TermKind::kDelta:
        value = delta(t.factor, std::move(value), off);
        return;
      default:
        for (auto& s : value) {
          apply_pure(t, s, off);
          normalize(s);
        }
    }
  }

 private:
  void apply_pure(const DiagramTerm& t, Summand& s, std::size_t off) {
    switch (t.kind) {
      case TermKind::kCup: {
        const std::size_t k = t.first.size();
        const std::size_t m = t.second.size();
        const Located at = merge_range(s, off, off + t.input.size());
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < k; ++i) {
          const std::size_t a = at.axis + i;
          pairs.emplace_back(a, t.arg_first ? a + k : a + k + m);
        }
        s[at.block] = s[at.block].traced(pairs);
        return;
      }
      case TermKind::kCap: {
        Tensor cap = identity_pair(t.first, options_.kind.layer1_only());
        if (auto b = boundary(s, off)) {
          s.insert(s.begin() + static_cast<std::ptrdiff_t>(*b), std::move(cap));
          return;
        }
        const Located at = locate(s, off);
        Tensor& block = s[at.block];
        const std::size_t r = block.rank();
        std::vector<std::size_t> perm;
        for (std::size_t i = 0; i < at.axis; ++i) perm.push_back(i);
        for (std::size_t i = 0; i < cap.rank(); ++i) perm.push_back(r + i);
        for (std::size_t i = at.axis; i < r; ++i) perm.push_back(i);
        block = outer(block, cap).transposed(perm);
        return;
      }
      case TermKind::kEps: {
        const Located at = locate(s, off);
        Tensor moved = s[at.block].applied_along(at.axis, eps_map(t.factor));
        Extents extents = moved.extents();
        const Extents inner = t.factor.inner->extents();
        extents.erase(extents.begin() + static_cast<std::ptrdiff_t>(at.axis));
        extents.insert(extents.begin() + static_cast<std::ptrdiff_t>(at.axis), inner.begin(),
                       inner.end());
        s[at.block] = moved.reshaped(extents);
        return;
      }
      case TermKind::kIncl: {
        const std::size_t k = t.input.size();
        const Located at = merge_range(s, off, off + k);
        Tensor& block = s[at.block];
        Extents extents = block.extents();
        const auto from = extents.begin() + static_cast<std::ptrdiff_t>(at.axis);
        const std::size_t joined =
            std::accumulate(from, from + static_cast<std::ptrdiff_t>(k), std::size_t{1},
                            std::multiplies<>());
        extents.erase(from, from + static_cast<std::ptrdiff_t>(k));
        extents.insert(extents.begin() + static_cast<std::ptrdiff_t>(at.axis), joined);
        block = block.reshaped(extents).applied_along(at.axis, incl_map(t.factor));
        return;
      }
      case TermKind::kSwap: {
        const std::size_t x = t.first.size();
        const std::size_t y = t.second.size();
        const auto b0 = boundary(s, off);
        const auto b1 = boundary(s, off + x);
        const auto b2 = boundary(s, off + x + y);
        if (b0 && b1 && b2) {
          std::rotate(s.begin() + static_cast<std::ptrdiff_t>(*b0),
                      s.begin() + static_cast<std::ptrdiff_t>(*b1),
                      s.begin() + static_cast<std::ptrdiff_t>(*b2));
          return;
        }
        const Located at = merge_range(s, off, off + x + y);
        Tensor& block = s[at.block];
        const std::size_t lo = at.axis;
        std::vector<std::size_t> perm;
        for (std::size_t i = 0; i < lo; ++i) perm.push_back(i);
        for (std::size_t i = 0; i < y; ++i) perm.push_back(lo + x + i);
        for (std::size_t i = 0; i < x; ++i) perm.push_back(lo + i);
        for (std::size_t i = lo + x + y; i < block.rank(); ++i) perm.push_back(i);
        block = block.transposed(perm);
        return;
      }
      default:
        throw std::logic_error("unexpected term in pure application");
    }
  }

  Value delta(const Factor& fock, Value value, std::size_t off) {
    const std::size_t n = fock.inner_dim();
    const std::size_t top = fock.max_layer;
    Value out;
    for (auto& s : value) {
      const Located at = locate(s, off);
      const Tensor& block = s[at.block];
      if (block.rank() == 1) {
        const PairSum pairs = delta_apply(
            options_.kind, GradedTensor::from_flat(n, top, block.data()), options_.fulldual_cap);
        for (const auto& [left, right] : pairs) {
          std::vector<double> lf = left.flat(), rf = right.flat();
          if (all_zero(lf) || all_zero(rf)) continue;
          Summand copy = s;
          copy[at.block] = Tensor::vector(std::move(lf));
          copy.insert(copy.begin() + static_cast<std::ptrdiff_t>(at.block) + 1,
                      Tensor::vector(std::move(rf)));
          out.push_back(std::move(copy));
        }
        continue;
      }
      if (options_.kind.layer1_only() && !layer1_along(block, at.axis, n)) {
        throw DeltaError(options_.kind.name() + " copies layer-1 vectors only");
      }
      s[at.block] = block.applied_along(at.axis, matrix_for(n, top));
      out.push_back(std::move(s));
    }
    return out;
  }

  const Tensor& matrix_for(std::size_t n, std::size_t top) {
    const auto key = std::make_pair(n, top);
    auto it = matrices_.find(key);
    if (it == matrices_.end()) {
      it = matrices_.emplace(key, delta_matrix(options_.kind, n, top, options_.fulldual_cap))
               .first;
    }
    return it->second;
  }

  EvalOptions options_;
  std::map<std::pair<std::size_t, std::size_t>, Tensor> matrices_;
};

Tensor collapse(const Value& value, const Shape& output) {
  Tensor out(output.extents());
  for (const auto& s : value) {
    Tensor term = merge_all(s);
    out += term.reshaped(output.extents());
  }
  return out;
}

}  // namespace

Tensor evaluate(const Diagram& diagram, const std::vector<Tensor>& inputs,
                const EvalOptions& options) {
  if (inputs.size() != diagram.inputs.size()) {
    throw ShapeError("diagram takes " + std::to_string(diagram.inputs.size()) +
                     " inputs, got " + std::to_string(inputs.size()));
  }
  Summand start;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Shape& shape = diagram.inputs[i];
    if (inputs[i].size() != shape.total_dim()) {
      throw ShapeError("input " + std::to_string(i) + " has " +
                       std::to_string(inputs[i].size()) + " entries, shape " + shape.text() +
                       " needs " + std::to_string(shape.total_dim()));
    }
    start.push_back(inputs[i].reshaped(shape.extents()));
  }
  Value value{start};
  Evaluator(options).apply(*diagram.term, value, 0);
  return collapse(value, diagram.output);
}

Tensor evaluate_term(const Term& term, const Tensor& input, const EvalOptions& options) {
  if (input.size() != term->input.total_dim()) {
    throw ShapeError("term input " + term->input.text() + " needs " +
                     std::to_string(term->input.total_dim()) + " entries");
  }
  Summand start;
  if (term->input.empty()) {
    start.push_back(Tensor::scalar(input[0]));
  } else {
    start.push_back(input.reshaped(term->input.extents()));
  }
  Value value{start};
  Evaluator(options).apply(*term, value, 0);
  return collapse(value, term->output);
}

}  // namespace bangl
