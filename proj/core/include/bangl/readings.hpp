#pragma once

#include <cstdint>
#include <vector>

#include "bangl/derivation.hpp"
#include "bangl/evaluate.hpp"
#include "bangl/shape.hpp"

namespace bangl {

struct FingerprintOptions {
  SpaceAssignment spaces;
  DeltaKind kind = DeltaKind::k_extension();
  std::uint64_t seed = 20201;
  double tolerance = 1e-9;
};

/// Output of a derivation's map on one fixed random draw of word tensors.
///
/// Derivations of the same sequent that compile to the same linear map get
/// the same fingerprint; distinct maps differ with probability one.
class Fingerprinter {
 public:
  Fingerprinter(const Sequent& sequent, FingerprintOptions options = {});

  std::vector<double> operator()(const Derivation& d) const;
  bool same(const std::vector<double>& a, const std::vector<double>& b) const;

 private:
  Sequent sequent_;
  FingerprintOptions options_;
  std::vector<Tensor> inputs_;
};

struct Reading {
  Derivation derivation;
  std::size_t contractions = 0;
  // Derivations that share this reading, the representative included.
  std::size_t variants = 0;
  std::vector<double> fingerprint;
};

// Groups derivations of one sequent by fingerprint, keeping the first of each
// group in input order.
std::vector<Reading> distinct_readings(const std::vector<Derivation>& derivations,
                                       const FingerprintOptions& options = {});

}  // namespace bangl
