#include "bangl/shape.hpp"

#include <algorithm>

namespace bangl {

void SpaceAssignment::validate() const {
  if (dim_N == 0 || dim_S == 0) throw ShapeError("dimensions must be positive");
  if (fock_truncation == 0) throw ShapeError("Fock truncation must be at least 1");
}

std::size_t Factor::inner_dim() const {
  return is_fock() ? inner->total_dim() : dim();
}

std::size_t Factor::dim() const {
  if (!is_fock()) return max_layer;
  return fock_dim(inner->total_dim(), max_layer);
}

std::string Factor::text() const {
  if (!is_fock()) return atom;
  const std::string layers =
      max_layer == inner->total_dim() ? "*" : std::to_string(max_layer);
  const std::string body = inner->text();
  return "F" + layers + "(" + body.substr(1, body.size() - 2) + ")";
}

bool operator==(const Factor& a, const Factor& b) {
  if (a.kind != b.kind || a.max_layer != b.max_layer) return false;
  if (!a.is_fock()) return a.atom == b.atom;
  return *a.inner == *b.inner;
}

std::size_t Shape::total_dim() const {
  std::size_t d = 1;
  for (const auto& f : factors) d *= f.dim();
  return d;
}

Extents Shape::extents() const {
  Extents out;
  for (const auto& f : factors) out.push_back(f.dim());
  return out;
}

std::string Shape::text() const {
  std::string out = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ' ';
    out += factors[i].text();
  }
  return out + "]";
}

Shape Shape::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > factors.size()) throw ShapeError("shape slice out of range");
  return Shape{{factors.begin() + static_cast<std::ptrdiff_t>(begin),
                factors.begin() + static_cast<std::ptrdiff_t>(end)}};
}

Shape operator+(Shape a, const Shape& b) {
  a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
  return a;
}

// Base factors keep their dimension in max_layer.
Factor base_factor(const std::string& atom, const SpaceAssignment& sa) {
  Factor f;
  f.kind = Factor::Kind::kBase;
  f.atom = atom;
  if (atom == "N") {
    f.max_layer = sa.dim_N;
  } else if (atom == "S") {
    f.max_layer = sa.dim_S;
  } else {
    throw ShapeError("no space assigned to atom '" + atom + "'");
  }
  return f;
}

Factor fock_factor(Shape inner, const SpaceAssignment& sa) {
  Factor f;
  f.kind = Factor::Kind::kFock;
  const std::size_t n = inner.total_dim();
  f.max_layer = std::min(sa.fock_truncation, n);
  f.inner = std::make_shared<const Shape>(std::move(inner));
  return f;
}

Shape interpret_formula(const Formula& f, const SpaceAssignment& sa) {
  sa.validate();
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      return Shape{{base_factor(f.name(), sa)}};
    case Formula::Kind::kBang:
      return Shape{{fock_factor(interpret_formula(f.inner(), sa), sa)}};
    case Formula::Kind::kUnder:
      return interpret_formula(f.left(), sa) + interpret_formula(f.right(), sa);
    case Formula::Kind::kOver:
      return interpret_formula(f.right(), sa) + interpret_formula(f.left(), sa);
    case Formula::Kind::kProduct:
      return interpret_formula(f.left(), sa) + interpret_formula(f.right(), sa);
  }
  throw ShapeError("unknown formula kind");
}

Shape interpret_formulas(const std::vector<Formula>& fs, const SpaceAssignment& sa) {
  Shape out;
  for (const auto& f : fs) out = out + interpret_formula(f, sa);
  return out;
}

}  // namespace bangl
