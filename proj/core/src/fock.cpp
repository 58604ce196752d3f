#include "bangl/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bangl {

namespace {

std::size_t layer_offset(std::size_t n, std::size_t k) {
  return k == 0 ? 0 : fock_dim(n, k - 1);
}

std::size_t flat_index(std::size_t n, const Subset& sorted) {
  return layer_offset(n, sorted.size()) + subset_rank(sorted);
}

Subset mask_subset(std::uint64_t mask) {
  Subset s;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) s.push_back(i);
  }
  return s;
}

GradedTensor layer1_constant(std::size_t n, std::size_t max_layer,
                             double value) {
  GradedTensor out(n, max_layer);
  if (max_layer >= 1) std::fill(out.layer(1).begin(), out.layer(1).end(), value);
  return out;
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::size_t fock_dim(std::size_t n, std::size_t max_layer) {
  std::size_t total = 0;
  for (std::size_t k = 0; k <= std::min(n, max_layer); ++k) {
    total += binomial(n, k);
  }
  return total;
}

SignedSubset wedge_normalize(std::vector<std::size_t> labels) {
  int sign = 1;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    for (std::size_t j = i; j > 0 && labels[j - 1] >= labels[j]; --j) {
      if (labels[j - 1] == labels[j]) return SignedSubset{0, {}};
      std::swap(labels[j - 1], labels[j]);
      sign = -sign;
    }
  }
  return SignedSubset{sign, std::move(labels)};
}

std::size_t subset_rank(const Subset& sorted) {
  std::size_t rank = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    rank += binomial(sorted[j], j + 1);
  }
  return rank;
}

Subset subset_unrank(std::size_t rank, std::size_t size) {
  Subset out(size);
  for (std::size_t j = size; j-- > 0;) {
    std::size_t c = j;
    while (binomial(c + 1, j + 1) <= rank) ++c;
    out[j] = c;
    rank -= binomial(c, j + 1);
  }
  return out;
}

GradedTensor::GradedTensor(std::size_t n, std::size_t max_layer)
    : n_(n), max_layer_(std::min(n, max_layer)) {
  layers_.reserve(max_layer_ + 1);
  for (std::size_t k = 0; k <= max_layer_; ++k) {
    layers_.emplace_back(binomial(n_, k), 0.0);
  }
}

GradedTensor GradedTensor::unit(std::size_t n, std::size_t max_layer) {
  GradedTensor out(n, max_layer);
  out.layers_[0][0] = 1.0;
  return out;
}

GradedTensor GradedTensor::basis(std::size_t n, std::size_t max_layer,
                                 const Subset& indices) {
  GradedTensor out(n, max_layer);
  out.component(indices) = 1.0;
  return out;
}

GradedTensor GradedTensor::from_flat(std::size_t n, std::size_t max_layer,
                                     const std::vector<double>& flat) {
  GradedTensor out(n, max_layer);
  if (flat.size() != out.size()) {
    throw std::invalid_argument("flat Fock vector has " +
                                std::to_string(flat.size()) + " entries, need " +
                                std::to_string(out.size()));
  }
  std::size_t i = 0;
  for (auto& layer : out.layers_) {
    for (double& x : layer) x = flat[i++];
  }
  return out;
}

const std::vector<double>& GradedTensor::layer(std::size_t k) const {
  if (k > max_layer_) throw std::out_of_range("Fock layer above truncation");
  return layers_[k];
}

std::vector<double>& GradedTensor::layer(std::size_t k) {
  if (k > max_layer_) throw std::out_of_range("Fock layer above truncation");
  return layers_[k];
}

double GradedTensor::component(const Subset& sorted) const {
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= n_ || (i && sorted[i - 1] >= sorted[i])) {
      throw std::invalid_argument("not a strictly increasing basis subset");
    }
  }
  return layer(sorted.size())[subset_rank(sorted)];
}

double& GradedTensor::component(const Subset& sorted) {
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= n_ || (i && sorted[i - 1] >= sorted[i])) {
      throw std::invalid_argument("not a strictly increasing basis subset");
    }
  }
  return layer(sorted.size())[subset_rank(sorted)];
}

std::vector<double> GradedTensor::flat() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& layer : layers_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

bool GradedTensor::layer1_supported() const {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (k == 1) continue;
    for (double x : layers_[k]) {
      if (x != 0.0) return false;
    }
  }
  return true;
}

bool GradedTensor::is_zero() const {
  for (const auto& layer : layers_) {
    for (double x : layer) {
      if (x != 0.0) return false;
    }
  }
  return true;
}

void GradedTensor::require_compatible(const GradedTensor& other,
                                      const char* op) const {
  if (n_ != other.n_ || max_layer_ != other.max_layer_) {
    throw std::invalid_argument(std::string(op) + ": Fock spaces differ");
  }
}

GradedTensor& GradedTensor::operator+=(const GradedTensor& other) {
  require_compatible(other, "add");
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    for (std::size_t i = 0; i < layers_[k].size(); ++i) {
      layers_[k][i] += other.layers_[k][i];
    }
  }
  return *this;
}

GradedTensor& GradedTensor::operator*=(double factor) {
  for (auto& layer : layers_) {
    for (double& x : layer) x *= factor;
  }
  return *this;
}

double GradedTensor::dot(const GradedTensor& other) const {
  require_compatible(other, "dot");
  double sum = 0.0;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    for (std::size_t i = 0; i < layers_[k].size(); ++i) {
      sum += layers_[k][i] * other.layers_[k][i];
    }
  }
  return sum;
}

std::string GradedTensor::debug_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    out << "layer " << k << ": [";
    for (std::size_t i = 0; i < layers_[k].size(); ++i) {
      if (i) out << ' ';
      out << layers_[k][i];
    }
    out << "]\n";
  }
  return out.str();
}

GradedTensor fock_mult(const GradedTensor& u, const GradedTensor& w) {
  if (u.base_dim() != w.base_dim()) {
    throw std::invalid_argument("fock_mult over different base spaces");
  }
  const std::size_t n = u.base_dim();
  const std::size_t top = std::min(n, u.max_layer() + w.max_layer());
  GradedTensor out(n, top);
  for (std::size_t a = 0; a <= u.max_layer(); ++a) {
    const auto& lu = u.layer(a);
    for (std::size_t b = 0; b <= w.max_layer() && a + b <= top; ++b) {
      const auto& lw = w.layer(b);
      for (std::size_t i = 0; i < lu.size(); ++i) {
        if (lu[i] == 0.0) continue;
        const Subset left = subset_unrank(i, a);
        for (std::size_t j = 0; j < lw.size(); ++j) {
          if (lw[j] == 0.0) continue;
          Subset joined = left;
          const Subset right = subset_unrank(j, b);
          joined.insert(joined.end(), right.begin(), right.end());
          const SignedSubset s = wedge_normalize(std::move(joined));
          if (s.sign == 0) continue;
          out.layer(a + b)[subset_rank(s.indices)] += s.sign * lu[i] * lw[j];
        }
      }
    }
  }
  return out;
}

Tensor fock_comult_full(const GradedTensor& v, std::size_t cap) {
  const std::size_t n = v.base_dim();
  if (v.max_layer() != n) {
    throw DeltaError("full comultiplication needs an untruncated Fock vector");
  }
  if (n >= 63 || (std::size_t{1} << n) > cap) {
    throw DeltaError("full comultiplication over dimension 2^" +
                     std::to_string(n) + " exceeds the cap of " +
                     std::to_string(cap));
  }
  const std::size_t dim = std::size_t{1} << n;
  Tensor out({dim, dim});
  for (std::uint64_t u_mask = 0; u_mask < dim; ++u_mask) {
    const Subset u = mask_subset(u_mask);
    const double coeff = v.component(u);
    if (coeff == 0.0) continue;
    // Every split of U into S ⊔ T.
    for (std::uint64_t s_mask = u_mask;; s_mask = (s_mask - 1) & u_mask) {
      const Subset s = mask_subset(s_mask);
      const Subset t = mask_subset(u_mask & ~s_mask);
      Subset joined = s;
      joined.insert(joined.end(), t.begin(), t.end());
      const int sign = wedge_normalize(std::move(joined)).sign;
      out.at({flat_index(n, s), flat_index(n, t)}) += sign * coeff;
      if (s_mask == 0) break;
    }
  }
  return out;
}

std::string DeltaKind::name() const {
  switch (tag) {
    case Tag::kFullDual: return "full-dual";
    case Tag::kKExtension: {
      if (k == 1.0) return "k-extension";
      std::ostringstream out;
      out << "k-extension:" << k;
      return out.str();
    }
    case Tag::kBasisCopyRaw: return "basis-copy-raw";
    case Tag::kBasisCopyA: return "basis-copy-a";
    case Tag::kBasisCopyB: return "basis-copy-b";
  }
  return "?";
}

DeltaKind DeltaKind::parse(const std::string& text) {
  if (text == "full-dual") return full_dual();
  if (text == "basis-copy-raw") return basis_copy_raw();
  if (text == "basis-copy-a") return basis_copy_a();
  if (text == "basis-copy-b") return basis_copy_b();
  const std::string prefix = "k-extension";
  if (text.rfind(prefix, 0) == 0) {
    if (text.size() == prefix.size()) return k_extension();
    if (text[prefix.size()] == ':') {
      const std::string number = text.substr(prefix.size() + 1);
      std::size_t used = 0;
      double k = 0.0;
      try {
        k = std::stod(number, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == number.size() && used > 0 && std::isfinite(k)) {
        return k_extension(k);
      }
    }
  }
  throw std::invalid_argument(
      "unknown delta kind '" + text +
      "' (expected full-dual, k-extension[:k], basis-copy-raw, basis-copy-a "
      "or basis-copy-b)");
}

PairSum delta_apply(const DeltaKind& kind, const GradedTensor& v,
                    std::size_t cap) {
  const std::size_t n = v.base_dim();
  const std::size_t top = v.max_layer();
  PairSum out;
  if (kind.tag == DeltaKind::Tag::kFullDual) {
    const Tensor matrix = fock_comult_full(v, cap);
    const std::size_t dim = matrix.extents()[0];
    for (std::size_t a = 0; a < dim; ++a) {
      std::vector<double> row(matrix.data().begin() + a * dim,
                              matrix.data().begin() + (a + 1) * dim);
      if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; })) {
        continue;
      }
      std::vector<double> e(dim, 0.0);
      e[a] = 1.0;
      out.emplace_back(GradedTensor::from_flat(n, n, e),
                       GradedTensor::from_flat(n, n, row));
    }
    return out;
  }

  if (!v.layer1_supported()) {
    throw DeltaError(kind.name() + " copies layer-1 vectors only");
  }
  if (top < 1) throw DeltaError(kind.name() + " needs a truncation of at least 1");
  switch (kind.tag) {
    case DeltaKind::Tag::kKExtension: {
      const GradedTensor kvec = layer1_constant(n, top, kind.k);
      out.emplace_back(v, kvec);
      out.emplace_back(kvec, v);
      break;
    }
    case DeltaKind::Tag::kBasisCopyRaw:
      for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(v.layer(1)[i] * GradedTensor::basis(n, top, {i}),
                         GradedTensor::basis(n, top, {i}));
      }
      break;
    case DeltaKind::Tag::kBasisCopyA:
      out.emplace_back(v, layer1_constant(n, top, 1.0));
      break;
    case DeltaKind::Tag::kBasisCopyB:
      out.emplace_back(layer1_constant(n, top, 1.0), v);
      break;
    case DeltaKind::Tag::kFullDual:
      break;
  }
  return out;
}

Tensor pair_sum_dense(const PairSum& sum) {
  if (sum.empty()) throw std::invalid_argument("empty pair sum");
  const std::size_t a = sum.front().first.size();
  const std::size_t b = sum.front().second.size();
  Tensor out({a, b});
  for (const auto& [left, right] : sum) {
    out += outer(Tensor::vector(left.flat()), Tensor::vector(right.flat()));
  }
  return out;
}

Tensor delta_matrix(const DeltaKind& kind, std::size_t n, std::size_t max_layer,
                    std::size_t cap) {
  const std::size_t dim = fock_dim(n, max_layer);
  if (kind.tag == DeltaKind::Tag::kFullDual) {
    if (max_layer < n) {
      throw DeltaError("full-dual needs an untruncated Fock space");
    }
    if (n >= 63 || (std::size_t{1} << n) > cap) {
      throw DeltaError("full-dual over dimension 2^" + std::to_string(n) +
                       " exceeds the cap of " + std::to_string(cap));
    }
  }
  Tensor out({dim, dim, dim});
  const std::size_t first = kind.layer1_only() ? 1 : 0;
  const std::size_t last = kind.layer1_only() ? std::min(dim, 1 + n) : dim;
  for (std::size_t c = first; c < last; ++c) {
    std::vector<double> e(dim, 0.0);
    e[c] = 1.0;
    const Tensor column =
        pair_sum_dense(delta_apply(kind, GradedTensor::from_flat(n, max_layer, e), cap));
    for (std::size_t i = 0; i < dim * dim; ++i) out[i * dim + c] = column[i];
  }
  return out;
}

std::vector<double> counit_eps(const GradedTensor& v) {
  if (v.max_layer() < 1) return std::vector<double>(v.base_dim(), 0.0);
  return v.layer(1);
}

GradedTensor embed_layer1(const std::vector<double>& w, std::size_t max_layer) {
  GradedTensor out(w.size(), std::max<std::size_t>(max_layer, 1));
  if (!w.empty()) out.layer(1) = w;
  return out;
}

GradedTensor delta_inclusion(const GradedTensor& v) {
  return embed_layer1(v.flat(), 1);
}

}  // namespace bangl
