#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bangl/derivation.hpp"
#include "bangl/diagram.hpp"
#include "bangl/distrib.hpp"
#include "bangl/embeddings.hpp"
#include "bangl/evaluate.hpp"
#include "bangl/experiment.hpp"
#include "bangl/fock.hpp"
#include "bangl/prover.hpp"
#include "bangl/readings.hpp"
#include "bangl/word_tensors.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using namespace bangl;
using Clock = std::chrono::steady_clock;

// Tolerances and bounds.
constexpr std::size_t kMaxDepth = 40;
constexpr std::size_t kBudget = 4;
constexpr auto kProofTimeLimit = std::chrono::milliseconds(5000);

constexpr double kAdjointTol = 1e-12;
constexpr double kAlternationTol = 1e-12;
constexpr int kAlternationDraws = 1000;
constexpr std::size_t kLargestFullDim = 12;

constexpr int kClosedFormDraws = 100;
constexpr double kClosedFormTol = 1e-9;

constexpr int kSeparationDraws = 100;
constexpr int kSeparationRequired = 99;
constexpr double kSeparationGap = 1e-6;
constexpr double kCoincideTol = 1e-9;

constexpr int kIdentityDraws = 1000;
constexpr std::size_t kIdentityDim = 100;
constexpr double kIdentityTol = 1e-6;

constexpr double kTableTol = 0.05;
// full, copy-a, copy-b, k-extension
constexpr std::array<double, 4> kTableRho = {0.44, 0.34, 0.42, 0.44};

constexpr std::uint64_t kSeed = 20201;

// Criteria that fail by construction; see the README.
const std::set<int> kKnownFailures = {4};

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kFail;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void info(const std::string& line) { std::cout << "INFO " << line << std::endl; }

SpaceAssignment small_spaces() {
  SpaceAssignment sa;
  sa.dim_N = 2;
  sa.dim_S = 2;
  sa.fock_truncation = 1;
  return sa;
}

std::vector<double> draw(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

// ---------------------------------------------------------------------------

struct ProofCase {
  const char* label;
  const char* sequent;
  std::size_t contractions;
};

Outcome derivability() {
  const std::vector<ProofCase> cases = {
      {"anaphora", testing::kAnaphora, 1},
      {"ellipsis", testing::kEllipsis, 1},
      {"strict", testing::kStrictSloppy, 2},
      {"sloppy", testing::kStrictSloppy, 4},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const ProofCase& c : cases) {
    SearchConfig cfg;
    cfg.max_depth = kMaxDepth;
    cfg.contraction_budget = kBudget;
    cfg.timeout = kProofTimeLimit;
    cfg.min_contractions = c.contractions;
    cfg.max_contractions = c.contractions;
    const auto t0 = Clock::now();
    std::vector<Derivation> ds;
    bool timed_out = false;
    try {
      ds = prove(parse_sequent(c.sequent), cfg);
    } catch (const SearchTimeout&) {
      timed_out = true;
    }
    const double ms = ms_since(t0);
    bool good = !timed_out && !ds.empty() && ms < kProofTimeLimit.count();
    for (const Derivation& d : ds) {
      good = good && check_derivation(d).ok && derivation_depth(d) <= kMaxDepth &&
             count_rule(d, Rule::kContr) == c.contractions;
    }
    ok = ok && good;
    detail << c.label << " contr=" << (ds.empty() ? 0 : count_rule(ds[0], Rule::kContr))
           << " " << fmt(ms) << "ms" << (good ? "" : " BAD") << ", ";
  }
  for (const char* negative : {"N -> S", "N, N -> S,S"}) {
    SearchConfig cfg;
    cfg.max_depth = kMaxDepth;
    cfg.contraction_budget = kBudget;
    cfg.timeout = kProofTimeLimit;
    bool none = false;
    try {
      none = prove(parse_sequent(negative), cfg).empty();
    } catch (const SearchTimeout&) {
    }
    ok = ok && none;
    detail << (std::strcmp(negative, "N -> S") == 0 ? "" : ", ") << "'" << negative << "' "
           << (none ? "unprovable" : "PROVED");
  }
  return {ok ? Status::kPass : Status::kFail, detail.str()};
}

// The strict reading among the c=2 proofs and the sloppy one among the c=4
// proofs, matched by fingerprint against the hand-encoded trees.
void reading_recovery(bool slow) {
  const Sequent s = parse_sequent(testing::kStrictSloppy);
  Fingerprinter fp(s);
  for (const auto& [name, level] : {std::pair<const char*, std::size_t>{"strict", 2},
                                    std::pair<const char*, std::size_t>{"sloppy", 4}}) {
    if (level == 4 && !slow) {
      info("sloppy reading recovery skipped (--skip-slow)");
      continue;
    }
    const auto target = fp(testing::fixture(name));
    SearchConfig cfg;
    cfg.contraction_budget = kBudget;
    cfg.min_contractions = level;
    cfg.max_contractions = level;
    cfg.max_solutions = 200000;
    cfg.timeout = std::chrono::minutes(5);
    const auto t0 = Clock::now();
    auto ds = prove(s, cfg);
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < ds.size() && !hit; ++i) {
      if (fp.same(fp(ds[i]), target)) hit = i;
    }
    info(std::string(name) + " reading at " + std::to_string(level) + " contractions: " +
         (hit ? "found as derivation " + std::to_string(*hit + 1) : std::string("NOT found")) +
         " of " + std::to_string(ds.size()) + " in " + fmt(ms_since(t0) / 1000.0) + "s");
  }
}

// ---------------------------------------------------------------------------

Outcome fock_algebra() {
  double worst_adjoint = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    const std::size_t dim = fock_dim(n, n);
    auto basis = [&](std::size_t i) {
      std::vector<double> e(dim, 0.0);
      e[i] = 1.0;
      return GradedTensor::from_flat(n, n, e);
    };
    for (std::size_t v = 0; v < dim; ++v) {
      const Tensor comult = fock_comult_full(basis(v));
      for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
          const double lhs = comult.at({x, y});
          const double rhs = fock_mult(basis(x), basis(y)).flat()[v];
          worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs));
        }
      }
    }
  }
  std::mt19937_64 rng(kSeed);
  double worst_square = 0;
  for (int i = 0; i < kAlternationDraws; ++i) {
    const std::size_t n = 1 + i % 4;
    const GradedTensor v = embed_layer1(draw(rng, n), n);
    for (double x : fock_mult(v, v).flat()) worst_square = std::max(worst_square, std::abs(x));
  }
  bool dims = true;
  for (std::size_t n = 0; n <= kLargestFullDim; ++n) dims = dims && fock_dim(n, n) == (std::size_t{1} << n);
  const bool ok = worst_adjoint <= kAdjointTol && worst_square <= kAlternationTol && dims;
  return {ok ? Status::kPass : Status::kFail,
          "adjoint max err " + fmt(worst_adjoint) + " (n<=3 exhaustive); m(v,v) max " +
              fmt(worst_square) + " over " + std::to_string(kAlternationDraws) +
              " draws; dim 2^n for n<=12 " + (dims ? "ok" : "BAD")};
}

// ---------------------------------------------------------------------------

EvalOptions with(DeltaKind kind) {
  EvalOptions o;
  o.kind = kind;
  return o;
}

Derivation first_proof(const char* sequent) {
  SearchConfig cfg;
  cfg.contraction_budget = kBudget;
  return prove(parse_sequent(sequent), cfg).at(0);
}

Outcome closed_forms() {
  const SpaceAssignment sa = small_spaces();
  const Diagram anaphora = compile(testing::fixture("anaphora"), sa);
  const Diagram ellipsis = compile(testing::fixture("ellipsis"), sa);
  const Diagram found_anaphora = compile(first_proof(testing::kAnaphora), sa);
  const Diagram found_ellipsis = compile(first_proof(testing::kEllipsis), sa);
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> k_draw(0.1, 3.0);
  double worst_f = 0, worst_g = 0, worst_found = 0;
  for (int i = 0; i < kClosedFormDraws; ++i) {
    const std::vector<DeltaKind> kinds = {DeltaKind::k_extension(1.0),
                                          DeltaKind::k_extension(k_draw(rng)),
                                          DeltaKind::basis_copy_raw(), DeltaKind::basis_copy_a(),
                                          DeltaKind::basis_copy_b()};
    oracle::AnaphoraWords a{draw(rng, 2), draw(rng, 4), draw(rng, 4), draw(rng, 4)};
    oracle::EllipsisWords e{draw(rng, 2), draw(rng, 8), draw(rng, 2), draw(rng, 2), draw(rng, 16)};
    for (const DeltaKind& kind : kinds) {
      const Tensor want_f = oracle::anaphora(kind, a);
      const Tensor want_g = oracle::ellipsis(kind, e);
      worst_f = std::max(worst_f, max_abs_diff(evaluate(anaphora, oracle::dense(a), with(kind)), want_f));
      worst_g = std::max(worst_g, max_abs_diff(evaluate(ellipsis, oracle::dense(e), with(kind)), want_g));
      worst_found = std::max(
          worst_found, max_abs_diff(evaluate(found_anaphora, oracle::dense(a), with(kind)), want_f));
      worst_found = std::max(
          worst_found, max_abs_diff(evaluate(found_ellipsis, oracle::dense(e), with(kind)), want_g));
    }
  }
  info("first searched proofs vs closed forms: max err " + fmt(worst_found));
  const bool ok = worst_f <= kClosedFormTol && worst_g <= kClosedFormTol;
  return {ok ? Status::kPass : Status::kFail,
          "f max err " + fmt(worst_f) + ", g max err " + fmt(worst_g) + " over " +
              std::to_string(kClosedFormDraws) + " draws x {k-ext(1), k-ext(k), raw, a, b}"};
}

// ---------------------------------------------------------------------------

struct Separation {
  int separated = 0;
  double worst_same_subject = 0;
};

Separation strict_vs_sloppy(const DeltaKind& kind, std::uint64_t seed,
                            bool projection_too = false) {
  const SpaceAssignment sa = small_spaces();
  const Diagram strict = compile(testing::fixture("strict"), sa);
  const Diagram sloppy = compile(testing::fixture("sloppy"), sa);
  std::mt19937_64 rng(seed);
  Separation out;
  for (int i = 0; i < kSeparationDraws; ++i) {
    std::vector<Tensor> inputs;
    for (const Shape& s : strict.inputs) {
      const Tensor compact(Extents{layer1_dim(s)}, draw(rng, layer1_dim(s)));
      inputs.push_back(expand_layer1(s, compact).reshaped(s.extents()));
    }
    if (projection_too) {
      inputs[5] = projection_tensor(parse_formula("!(!N\\S)\\(!N\\S)"), sa)
                      .reshaped(strict.inputs[5].extents());
    }
    const double gap = max_abs_diff(evaluate(strict, inputs, with(kind)),
                                    evaluate(sloppy, inputs, with(kind)));
    out.separated += gap > kSeparationGap;
    // Antecedent order: John, likes, his, code, Bill, does too.
    inputs[4] = inputs[0];
    out.worst_same_subject =
        std::max(out.worst_same_subject, max_abs_diff(evaluate(strict, inputs, with(kind)),
                                                      evaluate(sloppy, inputs, with(kind))));
  }
  return out;
}

Outcome separation() {
  for (const DeltaKind& kind : {DeltaKind::basis_copy_raw(), DeltaKind::basis_copy_a(),
                                DeltaKind::basis_copy_b(), DeltaKind::k_extension(0.5)}) {
    const Separation s = strict_vs_sloppy(kind, kSeed + 4);
    info("strict/sloppy under " + kind.name() + ": separated " + std::to_string(s.separated) +
         "/" + std::to_string(kSeparationDraws) + ", John=Bill max diff " +
         fmt(s.worst_same_subject));
  }
  const Separation p = strict_vs_sloppy(DeltaKind::basis_copy_raw(), kSeed + 4, true);
  info("strict/sloppy under basis-copy-raw with the projection for 'does too': separated " +
       std::to_string(p.separated) + "/" + std::to_string(kSeparationDraws) +
       ", John=Bill max diff " + fmt(p.worst_same_subject));
  const Separation s = strict_vs_sloppy(DeltaKind::k_extension(), kSeed + 4);
  const bool ok = s.separated >= kSeparationRequired && s.worst_same_subject <= kCoincideTol;
  return {ok ? Status::kPass : Status::kFail,
          "k-extension: separated " + std::to_string(s.separated) + "/" +
              std::to_string(kSeparationDraws) + " (need " + std::to_string(kSeparationRequired) +
              "), John=Bill max diff " + fmt(s.worst_same_subject) + " (need <= " +
              fmt(kCoincideTol) + ")"};
}

// ---------------------------------------------------------------------------

Outcome kext_identity() {
  std::mt19937_64 rng(kSeed + 5);
  double worst = 0;
  for (int i = 0; i < kIdentityDraws; ++i) {
    const VerbMatrix verb = relational_verb(
        {{draw(rng, kIdentityDim), draw(rng, kIdentityDim)},
         {draw(rng, kIdentityDim), draw(rng, kIdentityDim)}});
    const Vec sub1 = draw(rng, kIdentityDim), obj = draw(rng, kIdentityDim),
              sub2 = draw(rng, kIdentityDim);
    const Vec full = compose_ellipsis({ModelVariant::kFull}, verb, sub1, obj, sub2);
    const Vec kext = compose_ellipsis({ModelVariant::kKExt, 1.0}, verb, sub1, obj, sub2);
    for (std::size_t j = 0; j < kIdentityDim; ++j) {
      worst = std::max(worst, std::abs(kext[j] - full[j] - sub1[j] - sub2[j]));
    }
  }
  return {worst <= kIdentityTol ? Status::kPass : Status::kFail,
          "max |kext - full - sub1 - sub2| = " + fmt(worst) + " over " +
              std::to_string(kIdentityDraws) + " draws at d=" + std::to_string(kIdentityDim)};
}

// ---------------------------------------------------------------------------

Outcome table_reproduction() {
  const char* emb = std::getenv("BANGL_EMBEDDINGS");
  const char* data = std::getenv("BANGL_DATASET");
  const char* triples = std::getenv("BANGL_TRIPLES");
  if (!emb || !data || !triples || !*emb || !*data || !*triples) {
    return {Status::kSkip, "set BANGL_EMBEDDINGS, BANGL_DATASET and BANGL_TRIPLES to run"};
  }
  const EmbeddingStore store = load_embeddings(emb);
  const VerbMatrices verbs = build_verb_matrices(load_triples(triples), store);
  TaskOptions opts;
  opts.kinds = {ModelKind{ModelVariant::kFull}, ModelKind{ModelVariant::kCopyA},
                ModelKind{ModelVariant::kCopyB}, ModelKind{ModelVariant::kKExt, 1.0}};
  opts.threads = 0;
  const TaskReport report = run_task(load_dataset(data), store, verbs, opts);
  std::array<double, 4> rho{};
  bool ok = store.dim() == 100;
  std::ostringstream detail;
  for (std::size_t i = 0; i < 4; ++i) {
    rho[i] = report.models[i].rho;
    ok = ok && std::abs(rho[i] - kTableRho[i]) <= kTableTol;
    detail << model_name(report.models[i].kind) << "=" << fmt(rho[i]) << " ";
  }
  const bool order = rho[1] < rho[2] && rho[2] <= rho[0] && rho[2] <= rho[3];
  detail << "order " << (order ? "ok" : "BAD") << ", d=" << store.dim();
  return {ok && order ? Status::kPass : Status::kFail, detail.str()};
}

// ---------------------------------------------------------------------------

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& command) {
  RunResult r;
  std::FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome determinism() {
  const std::string cli = BANGL_CLI_PATH;
  const std::string data = BANGL_TEST_DATA_DIR;
  const std::string toy = " --embeddings " + data + "/toy/embeddings.txt --dataset " + data +
                          "/toy/dataset.tsv --triples " + data + "/toy/triples.tsv";
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"prove --all", cli + " --seed 7 prove '" + testing::kStrictSloppy +
                          "' --contraction-budget 4 --all --max-contractions 3"},
      {"prove json", cli + " --seed 7 --output json prove '" + testing::kEllipsis +
                         "' --max-solutions 50"},
      {"eval random", cli + " --seed 7 eval 'John likes his code . Bill does too' --lexicon " +
                          data + "/lexicons/strict_sloppy.tsv --random-missing"},
      {"experiment csv", cli + " --seed 7 --output csv experiment" + toy + " --threads 4"},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [label, command] : commands) {
    const RunResult a = run(command);
    const RunResult b = run(command);
    const bool same = a.code == 0 && b.code == 0 && a.out == b.out && !a.out.empty();
    ok = ok && same;
    detail << (detail.tellp() > 0 ? ", " : "") << label << " "
           << (same ? "identical" : "DIFFERS (exit " + std::to_string(a.code) + ")") << " ("
           << a.out.size() << " bytes)";
  }
  return {ok ? Status::kPass : Status::kFail, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = true;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--skip-slow") == 0) slow = false;
  }
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "derivability", derivability},
      {2, "fock-algebra", fock_algebra},
      {3, "closed-forms", closed_forms},
      {4, "strict-sloppy-separation", separation},
      {5, "kext-identity", kext_identity},
      {6, "table-reproduction", table_reproduction},
      {7, "determinism", determinism},
  };
  int unexpected = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kSkip ? "SKIP" : "FAIL";
    const bool known = kKnownFailures.count(c.id) > 0;
    std::cout << tag << " " << c.id << " " << c.name << ": " << o.detail
              << (o.status == Status::kFail && known ? " [known failure]" : "") << std::endl;
    if (o.status == Status::kFail && !known) ++unexpected;
    if (o.status == Status::kPass && known) info(std::string(c.name) + " passed but is listed as a known failure");
    if (c.id == 1) reading_recovery(slow);
  }
  std::cout << (unexpected == 0 ? "acceptance: no unexpected failures" : "acceptance: unexpected failures")
            << std::endl;
  return unexpected == 0 ? 0 : 1;
}
