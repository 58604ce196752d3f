#include "bangl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bangl {

namespace {

Extents strides_of(const Extents& extents) {
  Extents strides(extents.size(), 1);
  for (std::size_t i = extents.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * extents[i];
  }
  return strides;
}

std::string extents_text(const Extents& extents) {
  std::string out = "(";
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(extents[i]);
  }
  return out + ")";
}

void require_same_extents(const Tensor& a, const Tensor& b, const char* op) {
  if (a.extents() != b.extents()) {
    throw std::invalid_argument(std::string(op) + ": extents " +
                                extents_text(a.extents()) + " vs " +
                                extents_text(b.extents()));
  }
}

}  // namespace

std::size_t extents_size(const Extents& extents) {
  return std::accumulate(extents.begin(), extents.end(), std::size_t{1},
                         std::multiplies<>());
}

Tensor::Tensor(Extents extents)
    : extents_(std::move(extents)), data_(extents_size(extents_), 0.0) {}

Tensor::Tensor(Extents extents, std::vector<double> data)
    : extents_(std::move(extents)), data_(std::move(data)) {
  if (data_.size() != extents_size(extents_)) {
    throw std::invalid_argument("tensor data has " +
                                std::to_string(data_.size()) +
                                " entries, extents " + extents_text(extents_) +
                                " need " + std::to_string(extents_size(extents_)));
  }
}

Tensor Tensor::scalar(double value) { return Tensor({}, {value}); }

Tensor Tensor::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> row_major) {
  return Tensor({rows, cols}, std::move(row_major));
}

double& Tensor::at(const Extents& index) {
  return data_[flat_index(index)];
}

double Tensor::at(const Extents& index) const {
  return data_[flat_index(index)];
}

std::size_t Tensor::flat_index(const Extents& index) const {
  if (index.size() != extents_.size()) {
    throw std::out_of_range("tensor index rank");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= extents_[i]) throw std::out_of_range("tensor index");
    flat = flat * extents_[i] + index[i];
  }
  return flat;
}

Tensor Tensor::reshaped(Extents extents) const {
  if (extents_size(extents) != data_.size()) {
    throw std::invalid_argument("reshape " + extents_text(extents_) + " to " +
                                extents_text(extents));
  }
  return Tensor(std::move(extents), data_);
}

Tensor Tensor::transposed(const std::vector<std::size_t>& perm) const {
  const std::size_t r = rank();
  if (perm.size() != r) throw std::invalid_argument("transpose rank mismatch");
  std::vector<bool> seen(r, false);
  for (std::size_t p : perm) {
    if (p >= r || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  bool identity = true;
  for (std::size_t i = 0; i < r; ++i) identity = identity && perm[i] == i;
  if (identity) return *this;

  Extents out_extents(r);
  for (std::size_t i = 0; i < r; ++i) out_extents[i] = extents_[perm[i]];
  const Extents in_strides = strides_of(extents_);
  Extents step(r);
  for (std::size_t i = 0; i < r; ++i) step[i] = in_strides[perm[i]];

  Tensor out(out_extents);
  Extents idx(r, 0);
  std::size_t src = 0;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.data_[flat] = data_[src];
    for (std::size_t ax = r; ax-- > 0;) {
      if (++idx[ax] < out_extents[ax]) {
        src += step[ax];
        break;
      }
      src -= step[ax] * (out_extents[ax] - 1);
      idx[ax] = 0;
    }
  }
  return out;
}

Tensor Tensor::traced(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) const {
  const std::size_t r = rank();
  std::vector<int> role(r, -1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [a, b] = pairs[k];
    if (a >= r || b >= r || a == b || role[a] != -1 || role[b] != -1) {
      throw std::invalid_argument("invalid trace axes");
    }
    if (extents_[a] != extents_[b]) {
      throw std::invalid_argument("trace over axes of different length");
    }
    role[a] = role[b] = static_cast<int>(k);
  }
  if (pairs.empty()) return *this;

  // Move free axes first, then each pair adjacently.
  std::vector<std::size_t> perm;
  Extents free_extents;
  for (std::size_t i = 0; i < r; ++i) {
    if (role[i] == -1) {
      perm.push_back(i);
      free_extents.push_back(extents_[i]);
    }
  }
  std::size_t inner = 1;
  for (auto [a, b] : pairs) {
    perm.push_back(a);
    perm.push_back(b);
    inner *= extents_[a];
  }
  const Tensor arranged = transposed(perm);

  // Diagonal offsets inside the trailing block.
  std::vector<std::size_t> diagonal;
  diagonal.reserve(inner);
  Extents pair_idx(pairs.size(), 0);
  for (std::size_t d = 0; d < inner; ++d) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::size_t len = extents_[pairs[k].first];
      off = (off * len + pair_idx[k]) * len + pair_idx[k];
    }
    diagonal.push_back(off);
    for (std::size_t k = pairs.size(); k-- > 0;) {
      if (++pair_idx[k] < extents_[pairs[k].first]) break;
      pair_idx[k] = 0;
    }
  }
  std::size_t block = 1;
  for (auto [a, b] : pairs) block *= extents_[a] * extents_[b];

  Tensor out(free_extents);
  for (std::size_t f = 0; f < out.size(); ++f) {
    double sum = 0.0;
    const std::size_t base = f * block;
    for (std::size_t off : diagonal) sum += arranged.data_[base + off];
    out.data_[f] = sum;
  }
  return out;
}

Tensor Tensor::applied_along(std::size_t axis, const Tensor& map) const {
  if (axis >= rank()) throw std::out_of_range("applied_along axis");
  if (map.rank() == 0 || map.extents().back() != extents_[axis]) {
    throw std::invalid_argument("applied_along: map input length " +
                                extents_text(map.extents()) + " vs axis " +
                                std::to_string(extents_[axis]));
  }
  // tensordot puts this tensor's free axes first; move the map's outputs back.
  Tensor product = tensordot(*this, map, {axis}, {map.rank() - 1});
  const std::size_t outs = map.rank() - 1;
  const std::size_t r = rank();
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < axis; ++i) perm.push_back(i);
  for (std::size_t j = 0; j < outs; ++j) perm.push_back(r - 1 + j);
  for (std::size_t i = axis; i + 1 < r; ++i) perm.push_back(i);
  return product.transposed(perm);
}

Tensor& Tensor::operator+=(const Tensor& other) {
  require_same_extents(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  require_same_extents(*this, other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double factor) {
  for (double& x : data_) x *= factor;
  return *this;
}

double Tensor::norm() const {
  double sum = 0.0;
  for (double x : data_) sum += x * x;
  return std::sqrt(sum);
}

std::string Tensor::debug_string(int precision) const {
  std::ostringstream out;
  out << "shape " << extents_text(extents_) << ": [";
  out << std::setprecision(precision);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (i) out << ' ';
    out << data_[i];
  }
  out << ']';
  return out.str();
}

Tensor outer(const Tensor& a, const Tensor& b) {
  Extents extents = a.extents();
  extents.insert(extents.end(), b.extents().begin(), b.extents().end());
  Tensor out(extents);
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) out[k++] = x * b[j];
  }
  return out;
}

Tensor tensordot(const Tensor& a, const Tensor& b,
                 const std::vector<std::size_t>& axes_a,
                 const std::vector<std::size_t>& axes_b) {
  if (axes_a.size() != axes_b.size()) {
    throw std::invalid_argument("tensordot axis lists differ in length");
  }
  std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
  std::size_t inner = 1;
  for (std::size_t k = 0; k < axes_a.size(); ++k) {
    const std::size_t x = axes_a[k], y = axes_b[k];
    if (x >= a.rank() || y >= b.rank() || used_a[x] || used_b[y]) {
      throw std::invalid_argument("tensordot axes invalid");
    }
    if (a.extents()[x] != b.extents()[y]) {
      throw std::invalid_argument(
          "tensordot contracts axes of length " +
          std::to_string(a.extents()[x]) + " and " +
          std::to_string(b.extents()[y]));
    }
    used_a[x] = used_b[y] = true;
    inner *= a.extents()[x];
  }

  std::vector<std::size_t> perm_a, perm_b;
  Extents out_extents;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!used_a[i]) {
      perm_a.push_back(i);
      out_extents.push_back(a.extents()[i]);
    }
  }
  perm_a.insert(perm_a.end(), axes_a.begin(), axes_a.end());
  perm_b = axes_b;
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!used_b[i]) {
      perm_b.push_back(i);
      out_extents.push_back(b.extents()[i]);
    }
  }
  const Tensor lhs = a.transposed(perm_a);
  const Tensor rhs = b.transposed(perm_b);
  const std::size_t rows = inner == 0 ? 0 : lhs.size() / inner;
  const std::size_t cols = inner == 0 ? 0 : rhs.size() / inner;

  Tensor out(out_extents);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = lhs.data().data() + i * inner;
    double* dst = out.data().data() + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double x = row[k];
      if (x == 0.0) continue;
      const double* src = rhs.data().data() + k * cols;
      for (std::size_t j = 0; j < cols; ++j) dst[j] += x * src[j];
    }
  }
  return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  require_same_extents(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace bangl
