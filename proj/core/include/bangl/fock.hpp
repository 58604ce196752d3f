#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bangl/tensor.hpp"

namespace bangl {

using Subset = std::vector<std::size_t>;

std::uint64_t binomial(std::size_t n, std::size_t k);

// Σ_{k=0..max_layer} C(n, k).
std::size_t fock_dim(std::size_t n, std::size_t max_layer);

struct SignedSubset {
  int sign = 1;
  Subset indices;
};

// Sorts a wedge of basis labels; sign 0 when a label repeats.
SignedSubset wedge_normalize(std::vector<std::size_t> labels);

// Colexicographic rank of a strictly increasing subset among the subsets of
// the same size: Σ_j C(s_j, j+1).
std::size_t subset_rank(const Subset& sorted);
Subset subset_unrank(std::size_t rank, std::size_t size);

/// Vector of the Fermionic Fock space over ℝ^n truncated at `max_layer`.
///
/// Layer k holds C(n, k) components in colex order. The flat form lists
/// layers 0..max_layer one after another, so layer-1 component i sits at
/// flat index 1 + i.
class GradedTensor {
 public:
  GradedTensor(std::size_t n, std::size_t max_layer);

  static GradedTensor unit(std::size_t n, std::size_t max_layer);
  static GradedTensor basis(std::size_t n, std::size_t max_layer,
                            const Subset& indices);
  static GradedTensor from_flat(std::size_t n, std::size_t max_layer,
                                const std::vector<double>& flat);

  std::size_t base_dim() const { return n_; }
  std::size_t max_layer() const { return max_layer_; }
  std::size_t size() const { return fock_dim(n_, max_layer_); }

  const std::vector<double>& layer(std::size_t k) const;
  std::vector<double>& layer(std::size_t k);
  double component(const Subset& sorted) const;
  double& component(const Subset& sorted);

  std::vector<double> flat() const;
  bool layer1_supported() const;
  bool is_zero() const;

  GradedTensor& operator+=(const GradedTensor& other);
  GradedTensor& operator*=(double factor);
  friend GradedTensor operator+(GradedTensor a, const GradedTensor& b) {
    return a += b;
  }
  friend GradedTensor operator*(double s, GradedTensor a) { return a *= s; }

  double dot(const GradedTensor& other) const;

  // "layer k: [components]" lines.
  std::string debug_string() const;

 private:
  void require_compatible(const GradedTensor& other, const char* op) const;

  std::size_t n_;
  std::size_t max_layer_;
  std::vector<std::vector<double>> layers_;
};

// Alternating product; the result is truncated at min(n, Lu + Lw).
GradedTensor fock_mult(const GradedTensor& u, const GradedTensor& w);

constexpr std::size_t kDefaultFullDualCap = 4096;

// Adjoint of fock_mult on the full space, as a 2^n × 2^n matrix over flat
// indices: entry (a, b) is the coefficient of basis_a ⊗ basis_b.
Tensor fock_comult_full(const GradedTensor& v,
                        std::size_t cap = kDefaultFullDualCap);

struct DeltaKind {
  enum class Tag { kFullDual, kKExtension, kBasisCopyRaw, kBasisCopyA, kBasisCopyB };

  Tag tag = Tag::kKExtension;
  double k = 1.0;

  static DeltaKind full_dual() { return {Tag::kFullDual, 1.0}; }
  static DeltaKind k_extension(double k = 1.0) { return {Tag::kKExtension, k}; }
  static DeltaKind basis_copy_raw() { return {Tag::kBasisCopyRaw, 1.0}; }
  static DeltaKind basis_copy_a() { return {Tag::kBasisCopyA, 1.0}; }
  static DeltaKind basis_copy_b() { return {Tag::kBasisCopyB, 1.0}; }

  bool layer1_only() const { return tag != Tag::kFullDual; }

  // full-dual, k-extension[:k], basis-copy-raw, basis-copy-a, basis-copy-b
  std::string name() const;
  static DeltaKind parse(const std::string& text);

  friend bool operator==(const DeltaKind& a, const DeltaKind& b) {
    return a.tag == b.tag && (a.tag != Tag::kKExtension || a.k == b.k);
  }
};

class DeltaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PairSum = std::vector<std::pair<GradedTensor, GradedTensor>>;

// Formal sum of pure tensors. Layer-1 kinds reject other support; FullDual
// needs an untruncated v with 2^n ≤ cap.
PairSum delta_apply(const DeltaKind& kind, const GradedTensor& v,
                    std::size_t cap = kDefaultFullDualCap);

// The same map as a dense (out, out, in) tensor over flat indices. Columns
// outside layer 1 are zero for the layer-1 kinds.
Tensor delta_matrix(const DeltaKind& kind, std::size_t n, std::size_t max_layer,
                    std::size_t cap = kDefaultFullDualCap);

Tensor pair_sum_dense(const PairSum& sum);

std::vector<double> counit_eps(const GradedTensor& v);
GradedTensor embed_layer1(const std::vector<double>& w, std::size_t max_layer = 1);
// (0, ṽ, 0, …) in the Fock space over the flat space of v.
GradedTensor delta_inclusion(const GradedTensor& v);

}  // namespace bangl
