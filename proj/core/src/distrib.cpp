#include "bangl/distrib.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace bangl {

namespace {

void require_same(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": dimensions " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
}

}  // namespace

VerbMatrix relational_verb(const std::vector<std::pair<Vec, Vec>>& pairs, std::string verb) {
  if (pairs.empty()) throw std::invalid_argument("relational_verb: no subject/object pairs");
  const std::size_t d = pairs.front().first.size();
  VerbMatrix m{std::move(verb), d, std::vector<double>(d * d, 0.0)};
  for (const auto& [s, o] : pairs) {
    if (s.size() != d || o.size() != d) {
      throw DimensionError("relational_verb: pair dimension differs from " +
                           std::to_string(d));
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m.values[i * d + j] += s[i] * o[j];
    }
  }
  return m;
}

Vec mat_vec(const VerbMatrix& m, const Vec& v) {
  if (v.size() != m.dim) {
    throw DimensionError("matrix of dim " + std::to_string(m.dim) + " applied to vector of dim " +
                         std::to_string(v.size()));
  }
  Vec out(m.dim, 0.0);
  for (std::size_t i = 0; i < m.dim; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < m.dim; ++j) acc += m.values[i * m.dim + j] * v[j];
    out[i] = acc;
  }
  return out;
}

Vec hadamard(const Vec& a, const Vec& b) {
  require_same(a, b, "hadamard");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Vec add(const Vec& a, const Vec& b) {
  require_same(a, b, "add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec scaled(const Vec& v, double factor) {
  Vec out(v);
  for (double& x : out) x *= factor;
  return out;
}

Vec compose_transitive(const VerbMatrix& verb, const Vec& subject, const Vec& object) {
  return hadamard(mat_vec(verb, object), subject);
}

std::string model_name(const ModelKind& kind) {
  switch (kind.variant) {
    case ModelVariant::kFull:
      return "full";
    case ModelVariant::kKExt: {
      if (kind.k == 1.0) return "k-extension";
      char buf[32];
      const auto r = std::to_chars(buf, buf + sizeof buf, kind.k);
      return "k-extension:" + std::string(buf, r.ptr);
    }
    case ModelVariant::kCopyA:
      return "copy-a";
    case ModelVariant::kCopyB:
      return "copy-b";
    case ModelVariant::kAdditive:
      return "additive";
    case ModelVariant::kVerbOnly:
      return "verb-only";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "full") return {ModelVariant::kFull};
  if (name == "copy-a") return {ModelVariant::kCopyA};
  if (name == "copy-b") return {ModelVariant::kCopyB};
  if (name == "additive") return {ModelVariant::kAdditive};
  if (name == "verb-only") return {ModelVariant::kVerbOnly};
  constexpr std::string_view kext = "k-extension";
  if (name.substr(0, kext.size()) == kext) {
    ModelKind kind{ModelVariant::kKExt, 1.0};
    if (name.size() == kext.size()) return kind;
    if (name[kext.size()] == ':') {
      const std::string_view num = name.substr(kext.size() + 1);
      const auto r = std::from_chars(num.data(), num.data() + num.size(), kind.k);
      if (r.ec == std::errc() && r.ptr == num.data() + num.size()) return kind;
    }
  }
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (full, k-extension[:k], copy-a, copy-b, additive, verb-only)");
}

std::vector<ModelKind> all_model_kinds(double k) {
  return {{ModelVariant::kFull},   {ModelVariant::kCopyA},    {ModelVariant::kCopyB},
          {ModelVariant::kKExt, k}, {ModelVariant::kAdditive}, {ModelVariant::kVerbOnly}};
}

Vec compose_ellipsis(const ModelKind& kind, const VerbMatrix& verb, const Vec& sub1,
                     const Vec& obj, const Vec& sub2) {
  require_same(sub1, obj, "compose_ellipsis");
  require_same(sub2, obj, "compose_ellipsis");
  const Vec vp = mat_vec(verb, obj);
  switch (kind.variant) {
    case ModelVariant::kFull:
      return add(hadamard(vp, sub1), hadamard(vp, sub2));
    case ModelVariant::kKExt:
      return add(add(hadamard(vp, sub1), scaled(sub2, kind.k)),
                 add(scaled(sub1, kind.k), hadamard(vp, sub2)));
    case ModelVariant::kCopyA:
      return add(hadamard(vp, sub1), sub2);
    case ModelVariant::kCopyB:
      return add(sub1, hadamard(vp, sub2));
    default:
      throw std::invalid_argument(model_name(kind) + " is not a compositional model");
  }
}

Vec compose_baseline(const ModelKind& kind, const Vec& verb, const Vec& sub1, const Vec& obj,
                     const Vec& sub2) {
  switch (kind.variant) {
    case ModelVariant::kAdditive:
      return add(add(add(sub1, verb), obj), sub2);
    case ModelVariant::kVerbOnly:
      return verb;
    default:
      throw std::invalid_argument(model_name(kind) + " is not a baseline");
  }
}

double cosine(const Vec& u, const Vec& v) {
  require_same(u, v, "cosine");
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0 || nv == 0) throw std::domain_error("cosine of a zero vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& model_scores,
                    const std::vector<double>& human_scores) {
  if (model_scores.size() != human_scores.size()) {
    throw std::invalid_argument("spearman_rho: lists of different length");
  }
  if (model_scores.size() < 2) throw std::invalid_argument("spearman_rho: fewer than 2 values");
  const auto a = average_ranks(model_scores);
  const auto b = average_ranks(human_scores);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1) / 2;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - mean) * (b[i] - mean);
    saa += (a[i] - mean) * (a[i] - mean);
    sbb += (b[i] - mean) * (b[i] - mean);
  }
  if (saa == 0 || sbb == 0) throw std::domain_error("spearman_rho: constant score list");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace bangl
