#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bangl/embeddings.hpp"

namespace bangl {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// d×d matrix, row-major.
struct VerbMatrix {
  std::string verb;
  std::size_t dim = 0;
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const { return values[row * dim + col]; }
};

// Σ subject ⊗ object over the pairs.
VerbMatrix relational_verb(const std::vector<std::pair<Vec, Vec>>& pairs,
                           std::string verb = {});

Vec mat_vec(const VerbMatrix& m, const Vec& v);
Vec hadamard(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, double factor);

// (V × obj) ⊙ sub.
Vec compose_transitive(const VerbMatrix& verb, const Vec& subject, const Vec& object);

enum class ModelVariant { kFull, kKExt, kCopyA, kCopyB, kAdditive, kVerbOnly };

struct ModelKind {
  ModelVariant variant = ModelVariant::kFull;
  // Scale of the k vector, k·(1,…,1). Used by kKExt only.
  double k = 1.0;

  bool compositional() const {
    return variant != ModelVariant::kAdditive && variant != ModelVariant::kVerbOnly;
  }
  friend bool operator==(const ModelKind&, const ModelKind&) = default;
};

// full, k-extension, copy-a, copy-b, additive, verb-only.
std::string model_name(const ModelKind& kind);
// Accepts the names above; "k-extension:2" sets k.
ModelKind parse_model_kind(std::string_view name);
std::vector<ModelKind> all_model_kinds(double k = 1.0);

// Sentence vector for `sub1 verb obj and sub2 does too` with the copied verb
// phrase vp = V × obj:
//   full         vp⊙sub1 + vp⊙sub2
//   k-extension  (vp⊙sub1 + k⊙sub2) + (k⊙sub1 + vp⊙sub2)
//   copy-a       vp⊙sub1 + 1⊙sub2
//   copy-b       1⊙sub1 + vp⊙sub2
// Throws std::invalid_argument for the baselines.
Vec compose_ellipsis(const ModelKind& kind, const VerbMatrix& verb, const Vec& sub1,
                     const Vec& obj, const Vec& sub2);

// additive     sub1 + verb + obj + sub2
// verb-only    verb
// Throws std::invalid_argument for compositional kinds.
Vec compose_baseline(const ModelKind& kind, const Vec& verb, const Vec& sub1,
                     const Vec& obj, const Vec& sub2);

// Throws std::domain_error on a zero vector.
double cosine(const Vec& u, const Vec& v);

// 1-based ranks, ties sharing their average rank.
std::vector<double> average_ranks(const std::vector<double>& values);

// Pearson correlation of average ranks. Throws std::invalid_argument on a
// length mismatch or fewer than two values, std::domain_error when a list is
// constant.
double spearman_rho(const std::vector<double>& model_scores,
                    const std::vector<double>& human_scores);

}  // namespace bangl
