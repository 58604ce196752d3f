#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bangl {

using Extents = std::vector<std::size_t>;

std::size_t extents_size(const Extents& extents);

// Dense row-major real tensor. Rank 0 holds one scalar.
class Tensor {
 public:
  Tensor() : data_(1, 0.0) {}
  explicit Tensor(Extents extents);
  Tensor(Extents extents, std::vector<double> data);

  static Tensor scalar(double value);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> row_major);

  const Extents& extents() const { return extents_; }
  std::size_t rank() const { return extents_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }
  double& at(const Extents& index);
  double at(const Extents& index) const;

  Tensor reshaped(Extents extents) const;
  // Axis i of the result is axis perm[i] of this tensor.
  Tensor transposed(const std::vector<std::size_t>& perm) const;
  // Traces out each listed pair of equal-length axes. The remaining axes
  // keep their relative order.
  Tensor traced(const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
      const;
  // Replaces `axis` by the leading axes of `map`, whose last axis is summed
  // against it. The new axes take the old axis's place.
  Tensor applied_along(std::size_t axis, const Tensor& map) const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double factor);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }

  double norm() const;
  std::string debug_string(int precision = 6) const;

 private:
  std::size_t flat_index(const Extents& index) const;

  Extents extents_;
  std::vector<double> data_;
};

Tensor outer(const Tensor& a, const Tensor& b);

// Sums over axes_a[i] of `a` paired with axes_b[i] of `b`. Result axes are the
// free axes of `a` followed by the free axes of `b`.
Tensor tensordot(const Tensor& a, const Tensor& b,
                 const std::vector<std::size_t>& axes_a,
                 const std::vector<std::size_t>& axes_b);

double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace bangl
