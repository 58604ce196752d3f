#include "bangl/readings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "bangl/diagram.hpp"
#include "bangl/word_tensors.hpp"

namespace bangl {

Fingerprinter::Fingerprinter(const Sequent& sequent, FingerprintOptions options)
    : sequent_(sequent), options_(std::move(options)) {
  std::mt19937_64 rng(options_.seed);
  for (const auto& f : sequent_.antecedent) {
    inputs_.push_back(random_word_tensor(f, options_.spaces, rng));
  }
}

std::vector<double> Fingerprinter::operator()(const Derivation& d) const {
  if (d.conclusion != sequent_) {
    throw std::invalid_argument("derivation concludes " + format_sequent(d.conclusion) +
                                ", fingerprinter built for " + format_sequent(sequent_));
  }
  EvalOptions eval;
  eval.kind = options_.kind;
  eval.fulldual_cap = options_.spaces.fulldual_cap;
  return evaluate(compile(d, options_.spaces), inputs_, eval).data();
}

bool Fingerprinter::same(const std::vector<double>& a, const std::vector<double>& b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (std::abs(a[i] - b[i]) > options_.tolerance * scale) return false;
  }
  return true;
}

std::vector<Reading> distinct_readings(const std::vector<Derivation>& derivations,
                                       const FingerprintOptions& options) {
  std::vector<Reading> out;
  if (derivations.empty()) return out;
  const Fingerprinter fingerprint(derivations.front().conclusion, options);
  // Readings keyed by their first fingerprint value.
  std::multimap<double, std::size_t> index;
  for (const auto& d : derivations) {
    std::vector<double> fp = fingerprint(d);
    const double key = fp.empty() ? 0.0 : fp[0];
    const double slack = options.tolerance * std::max(1.0, std::abs(key)) * 2;
    bool merged = false;
    for (auto it = index.lower_bound(key - slack);
         it != index.end() && it->first <= key + slack; ++it) {
      Reading& r = out[it->second];
      if (fingerprint.same(r.fingerprint, fp)) {
        ++r.variants;
        merged = true;
        break;
      }
    }
    if (!merged) {
      index.emplace(key, out.size());
      out.push_back(Reading{d, count_rule(d, Rule::kContr), 1, std::move(fp)});
    }
  }
  return out;
}

}  // namespace bangl
