#pragma once

#include <utility>
#include <vector>

#include "bangl/fock.hpp"
#include "bangl/tensor.hpp"

// Direct arithmetic for the anaphora and ellipsis maps at dims N=2, S=2 with
// Fock truncation 1. Word inputs are layer-1 coordinates.
namespace bangl::oracle {

using Coords = std::vector<double>;
using Copies = std::vector<std::pair<Coords, Coords>>;

// Δ of a layer-1 vector, written out per kind.
inline Copies copies(const DeltaKind& kind, const Coords& v) {
  const std::size_t n = v.size();
  const Coords ones(n, 1.0);
  const Coords k(n, kind.k);
  switch (kind.tag) {
    case DeltaKind::Tag::kKExtension:
      return {{v, k}, {k, v}};
    case DeltaKind::Tag::kBasisCopyA:
      return {{v, ones}};
    case DeltaKind::Tag::kBasisCopyB:
      return {{ones, v}};
    default: {
      Copies out;
      for (std::size_t i = 0; i < n; ++i) {
        Coords left(n, 0.0), right(n, 0.0);
        left[i] = v[i];
        right[i] = 1.0;
        out.push_back({left, right});
      }
      return out;
    }
  }
}

struct AnaphoraWords {
  Coords john;    // 2
  Coords sleeps;  // 2×2, argument first
  Coords he;      // 2×2 over layer-1 coordinates of !N
  Coords snores;  // 2×2
};

inline std::vector<Tensor> dense(const AnaphoraWords& w) {
  return {Tensor(Extents{3}, {0, w.john[0], w.john[1]}), Tensor::matrix(2, 2, w.sleeps),
          Tensor::matrix(3, 2, {0, 0, w.he[0], w.he[1], w.he[2], w.he[3]}),
          Tensor::matrix(2, 2, w.snores)};
}

// Σ sleeps(a) ⊗ snores(he(b)) over the copies (a, b) of John.
inline Tensor anaphora(const DeltaKind& kind, const AnaphoraWords& w) {
  Tensor out({2, 2});
  for (const auto& [a, b] : copies(kind, w.john)) {
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t t = 0; t < 2; ++t) {
        double first = 0, second = 0;
        for (std::size_t n = 0; n < 2; ++n) first += a[n] * w.sleeps[n * 2 + s];
        for (std::size_t n = 0; n < 2; ++n) {
          double he = 0;
          for (std::size_t m = 0; m < 2; ++m) he += b[m] * w.he[m * 2 + n];
          second += he * w.snores[n * 2 + t];
        }
        out.at({s, t}) += first * second;
      }
    }
  }
  return out;
}

struct EllipsisWords {
  Coords john;    // 2
  Coords plays;   // 2 × (2·2): object, then the N\S coordinates
  Coords guitar;  // 2
  Coords mary;    // 2
  Coords too;     // (2·2) × 2 × 2
};

inline std::vector<Tensor> dense(const EllipsisWords& w) {
  Tensor plays({2, 5});
  for (std::size_t o = 0; o < 2; ++o) {
    for (std::size_t i = 0; i < 4; ++i) plays.at({o, 1 + i}) = w.plays[o * 4 + i];
  }
  Tensor too({5, 2, 2});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) too[(1 + i) * 4 + j] = w.too[i * 4 + j];
  }
  return {Tensor::vector(w.john), plays, Tensor::vector(w.guitar), Tensor::vector(w.mary), too};
}

// vp = plays(guitar); Σ john·a ⊗ too(b)(mary) over the copies (a, b) of vp.
inline Tensor ellipsis(const DeltaKind& kind, const EllipsisWords& w) {
  Coords vp(4, 0.0);
  for (std::size_t o = 0; o < 2; ++o) {
    for (std::size_t i = 0; i < 4; ++i) vp[i] += w.guitar[o] * w.plays[o * 4 + i];
  }
  Tensor out({2, 2});
  for (const auto& [a, b] : copies(kind, vp)) {
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t t = 0; t < 2; ++t) {
        double first = 0, second = 0;
        for (std::size_t n = 0; n < 2; ++n) first += w.john[n] * a[n * 2 + s];
        for (std::size_t i = 0; i < 4; ++i) {
          for (std::size_t n = 0; n < 2; ++n) second += b[i] * w.too[i * 4 + n * 2 + t] * w.mary[n];
        }
        out.at({s, t}) += first * second;
      }
    }
  }
  return out;
}

}  // namespace bangl::oracle
