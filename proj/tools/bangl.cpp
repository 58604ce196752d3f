#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bangl/derivation.hpp"
#include "bangl/diagram.hpp"
#include "bangl/distrib.hpp"
#include "bangl/embeddings.hpp"
#include "bangl/evaluate.hpp"
#include "bangl/experiment.hpp"
#include "bangl/fock.hpp"
#include "bangl/formula.hpp"
#include "bangl/lexicon.hpp"
#include "bangl/prover.hpp"
#include "bangl/readings.hpp"
#include "bangl/shape.hpp"
#include "bangl/word_tensors.hpp"

using json = nlohmann::ordered_json;
using namespace bangl;

namespace {

constexpr int kOk = 0;
constexpr int kNotFound = 1;
constexpr int kError = 2;

// Raised for unusable input; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string output = "text";
  std::uint64_t seed = 20201;
};

struct SearchFlags {
  SearchConfig cfg;
  std::size_t timeout_ms = 10000;
  bool no_normal_form = false;
  std::optional<std::size_t> max_contractions;

  SearchConfig build() const {
    SearchConfig out = cfg;
    out.timeout = std::chrono::milliseconds(timeout_ms);
    out.normal_form = !no_normal_form;
    out.max_contractions = max_contractions;
    return out;
  }
};

struct SpaceFlags {
  std::size_t dim_n = 2;
  std::size_t dim_s = 2;
  std::string truncation = "1";
  std::size_t cap = kDefaultFullDualCap;

  SpaceAssignment build() const {
    SpaceAssignment sa;
    sa.dim_N = dim_n;
    sa.dim_S = dim_s;
    if (truncation == "full") {
      sa.fock_truncation = kFullTruncation;
    } else {
      try {
        sa.fock_truncation = std::stoul(truncation);
      } catch (const std::exception&) {
        throw UsageError("--truncation expects a positive integer or 'full'");
      }
    }
    sa.fulldual_cap = cap;
    sa.validate();
    return sa;
  }
};

void add_search_flags(CLI::App* cmd, SearchFlags& f) {
  cmd->add_option("--max-depth", f.cfg.max_depth, "Deepest derivation returned")
      ->capture_default_str();
  cmd->add_option("--contraction-budget", f.cfg.contraction_budget,
                  "Contr applications per ! occurrence")
      ->capture_default_str();
  cmd->add_option("--max-solutions", f.cfg.max_solutions, "Derivations to return")
      ->capture_default_str();
  cmd->add_option("--min-contractions", f.cfg.min_contractions,
                  "Skip derivations with fewer Contr nodes")
      ->capture_default_str();
  cmd->add_option("--max-contractions", f.max_contractions,
                  "Cap on Contr nodes (default: budget times ! count)");
  cmd->add_option("--timeout-ms", f.timeout_ms, "Search time limit")->capture_default_str();
  cmd->add_flag("--no-normal-form", f.no_normal_form,
                "Also enumerate reorderings of independent left rules");
}

void add_space_flags(CLI::App* cmd, SpaceFlags& f) {
  cmd->add_option("--dim-n", f.dim_n, "Dimension of N")->capture_default_str();
  cmd->add_option("--dim-s", f.dim_s, "Dimension of S")->capture_default_str();
  cmd->add_option("--truncation", f.truncation, "Highest Fock layer, or 'full'")
      ->capture_default_str();
  cmd->add_option("--fulldual-cap", f.cap, "Largest Fock space the full dual may copy")
      ->capture_default_str();
}

// Sentences in a phrase: one S per run of words closed by . , ; ! or ?.
Formula default_goal(std::string_view phrase) {
  std::size_t sentences = 0;
  bool open = false;
  for (char ch : phrase) {
    if (ch == '.' || ch == ',' || ch == ';' || ch == '!' || ch == '?') {
      if (open) ++sentences;
      open = false;
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      open = true;
    }
  }
  if (open) ++sentences;
  Formula goal = Formula::atom("S");
  for (std::size_t i = 1; i < sentences; ++i) goal = Formula::product(Formula::atom("S"), goal);
  return goal;
}

struct Target {
  Sequent sequent;
  // Words of the phrase, one per antecedent formula; empty for a sequent.
  std::vector<std::string> words;
};

// A sequent given directly, or every sequent a phrase yields under the
// lexicon. Phrases need a lexicon.
std::vector<Target> targets(const std::string& text, const std::string& lexicon_path,
                            const std::string& goal_text) {
  if (text.find("->") != std::string::npos) return {Target{parse_sequent(text), {}}};
  if (lexicon_path.empty()) {
    throw UsageError("'" + text + "' is not a sequent; pass --lexicon to read it as a phrase");
  }
  const Lexicon lexicon = lexicon_load(lexicon_path);
  const Formula goal =
      goal_text.empty() ? default_goal(text) : parse_formula(goal_text, lexicon.atoms());
  const auto words = segment(lexicon, text);
  const PhraseSequents all(lexicon, words, goal);
  std::vector<Target> out;
  for (std::size_t i = 0; i < all.count(); ++i) out.push_back(Target{all.at(i), words});
  return out;
}

struct Found {
  Target target;
  std::vector<Derivation> derivations;
};

// Proofs of the first target that has any.
std::optional<Found> prove_first(const std::vector<Target>& ts, const SearchConfig& cfg) {
  for (const auto& t : ts) {
    auto ds = prove(t.sequent, cfg);
    if (!ds.empty()) return Found{t, std::move(ds)};
  }
  return std::nullopt;
}

json derivation_json(const Derivation& d) {
  json j;
  j["contractions"] = count_rule(d, Rule::kContr);
  j["depth"] = derivation_depth(d);
  j["size"] = derivation_size(d);
  j["tree"] = json::parse(derivation_to_json(d));
  j["text"] = format_derivation(d);
  return j;
}

std::string format_values(const std::vector<double>& values) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g", values[i] == 0.0 ? 0.0 : values[i]);
    if (i) out += ' ';
    out += buf;
  }
  return out;
}

std::string format_extents(const Extents& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(e[i]);
  }
  return out + "]";
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct ParseArgs {
  std::string text;
  std::string lexicon;
  std::string goal;
};

int cmd_parse(const ParseArgs& a, const Common& common) {
  json j;
  if (a.text.find("->") != std::string::npos) {
    const Sequent s = parse_sequent(a.text);
    j["sequent"] = format_sequent(s);
    j["antecedent"] = json::array();
    for (const auto& f : s.antecedent) j["antecedent"].push_back(format_formula(f));
    j["goal"] = format_formula(s.goal);
    j["bangs"] = count_bangs(s);
    if (common.output == "json") {
      print_json(j);
    } else {
      std::cout << format_sequent(s) << '\n';
    }
    return kOk;
  }
  if (!a.lexicon.empty()) {
    const auto ts = targets(a.text, a.lexicon, a.goal);
    j["words"] = ts.front().words;
    j["sequents"] = json::array();
    for (const auto& t : ts) j["sequents"].push_back(format_sequent(t.sequent));
    if (common.output == "json") {
      print_json(j);
    } else {
      for (const auto& t : ts) std::cout << format_sequent(t.sequent) << '\n';
    }
    return kOk;
  }
  const Formula f = parse_formula(a.text);
  j["formula"] = format_formula(f);
  j["size"] = f.size();
  if (common.output == "json") {
    print_json(j);
  } else {
    std::cout << format_formula(f) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ProveArgs {
  std::string text;
  std::string lexicon;
  std::string goal;
  bool all = false;
  SearchFlags search;
};

// Each contraction level gets its own search capped at max_solutions, going
// upward until a level comes back empty after a provable one.
std::vector<Derivation> prove_by_level(const Sequent& sequent, SearchConfig cfg,
                                       SearchStats* stats) {
  const std::size_t hi =
      cfg.max_contractions.value_or(cfg.contraction_budget * count_bangs(sequent));
  std::vector<Derivation> out;
  bool seen = false;
  for (std::size_t level = cfg.min_contractions; level <= hi; ++level) {
    SearchConfig one = cfg;
    one.min_contractions = level;
    one.max_contractions = level;
    if (!seen) {
      // The lowest provable level comes from one unbounded search.
      one.max_contractions = cfg.max_contractions;
      one.max_solutions = 1;
      auto first = prove(sequent, one, stats);
      if (first.empty()) return out;
      level = count_rule(first.front(), Rule::kContr);
      one.min_contractions = level;
      one.max_contractions = level;
      one.max_solutions = cfg.max_solutions;
      seen = true;
    }
    auto ds = prove(sequent, one, stats);
    if (ds.empty()) break;
    for (auto& d : ds) out.push_back(std::move(d));
  }
  return out;
}

int cmd_prove(const ProveArgs& a, const Common& common) {
  SearchConfig cfg = a.search.build();
  if (a.all && cfg.max_solutions == 1) cfg.max_solutions = 1000;
  SearchStats stats;
  std::optional<Found> found;
  for (const auto& t : targets(a.text, a.lexicon, a.goal)) {
    auto ds = a.all ? prove_by_level(t.sequent, cfg, &stats) : prove(t.sequent, cfg, &stats);
    if (!ds.empty()) {
      found = Found{t, std::move(ds)};
      break;
    }
  }
  if (!found) {
    if (common.output == "json") {
      print_json(json{{"found", false}, {"message", "no proof within bounds"}});
    } else {
      std::cout << "no proof within bounds\n";
    }
    return kNotFound;
  }

  const Sequent& sequent = found->target.sequent;
  json j;
  j["found"] = true;
  j["sequent"] = format_sequent(sequent);
  j["derivations_examined"] = found->derivations.size();

  if (a.all) {
    FingerprintOptions fo;
    fo.seed = common.seed;
    std::vector<Reading> readings;
    std::string note;
    try {
      readings = distinct_readings(found->derivations, fo);
    } catch (const ShapeError& e) {
      note = std::string("readings unavailable: ") + e.what();
    }
    if (!note.empty()) {
      for (const auto& d : found->derivations) {
        readings.push_back(Reading{d, count_rule(d, Rule::kContr), 1, {}});
      }
    }
    std::map<std::size_t, std::size_t> per_level;
    for (const auto& r : readings) ++per_level[r.contractions];
    j["readings"] = json::array();
    for (const auto& r : readings) {
      json item = derivation_json(r.derivation);
      item["variants"] = r.variants;
      j["readings"].push_back(std::move(item));
    }
    j["per_contraction_count"] = json::object();
    for (const auto& [c, n] : per_level) j["per_contraction_count"][std::to_string(c)] = n;
    if (!note.empty()) j["note"] = note;
    if (common.output == "json") {
      print_json(j);
      return kOk;
    }
    std::cout << "# sequent: " << format_sequent(sequent) << '\n';
    std::cout << "# derivations examined: " << found->derivations.size()
              << ", distinct readings: " << readings.size() << '\n';
    if (!note.empty()) std::cout << "# " << note << '\n';
    for (const auto& [c, n] : per_level) {
      std::cout << "# contractions " << c << ": " << n << " reading(s)\n";
    }
    for (std::size_t i = 0; i < readings.size(); ++i) {
      const auto& r = readings[i];
      std::cout << "\n# reading " << i + 1 << ": contractions " << r.contractions
                << ", variants " << r.variants << '\n'
                << format_derivation(r.derivation);
    }
    return kOk;
  }

  j["derivations"] = json::array();
  for (const auto& d : found->derivations) j["derivations"].push_back(derivation_json(d));
  if (common.output == "json") {
    print_json(j);
    return kOk;
  }
  std::cout << "# sequent: " << format_sequent(sequent) << '\n';
  for (std::size_t i = 0; i < found->derivations.size(); ++i) {
    const auto& d = found->derivations[i];
    if (i) std::cout << '\n';
    std::cout << "# derivation " << i + 1 << ": contractions " << count_rule(d, Rule::kContr)
              << ", depth " << derivation_depth(d) << '\n'
              << format_derivation(d);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CompileArgs {
  std::string text;
  std::string derivation;
  std::string lexicon;
  std::string goal;
  SearchFlags search;
  SpaceFlags spaces;
};

Derivation read_derivation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open derivation " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_derivation(ss.str());
}

int cmd_compile(const CompileArgs& a, const Common& common) {
  const SpaceAssignment sa = a.spaces.build();
  Derivation d;
  if (!a.derivation.empty()) {
    d = read_derivation(a.derivation);
  } else if (!a.text.empty()) {
    auto found = prove_first(targets(a.text, a.lexicon, a.goal), a.search.build());
    if (!found) {
      std::cout << (common.output == "json" ? "{\"found\": false}\n" : "no proof within bounds\n");
      return kNotFound;
    }
    d = found->derivations.front();
  } else {
    throw UsageError("compile needs a sequent, a phrase or --derivation");
  }
  const Diagram diagram = compile(d, sa);
  std::map<std::string, std::size_t> counts;
  for (TermKind k : {TermKind::kCup, TermKind::kCap, TermKind::kDelta, TermKind::kEps,
                     TermKind::kIncl, TermKind::kSwap}) {
    counts[term_kind_name(k)] = count_nodes(diagram.term, k);
  }
  if (common.output == "json") {
    json j;
    j["sequent"] = format_sequent(d.conclusion);
    j["contractions"] = count_rule(d, Rule::kContr);
    j["inputs"] = json::array();
    for (const auto& s : diagram.inputs) j["inputs"].push_back(s.text());
    j["output"] = diagram.output.text();
    j["nodes"] = counts;
    j["term"] = term_to_sexpr(diagram.term);
    print_json(j);
    return kOk;
  }
  std::cout << "sequent: " << format_sequent(d.conclusion) << '\n';
  std::cout << "contractions: " << count_rule(d, Rule::kContr) << '\n';
  std::cout << "inputs:";
  for (const auto& s : diagram.inputs) std::cout << ' ' << s.text();
  std::cout << "\noutput: " << diagram.output.text() << '\n';
  std::cout << "nodes:";
  for (const auto& [k, n] : counts) std::cout << ' ' << k << '=' << n;
  std::cout << "\nterm: " << term_to_sexpr(diagram.term) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string phrase;
  std::string lexicon;
  std::string tensors;
  std::string goal;
  std::string delta = "k-extension";
  std::string derivation;
  bool random_missing = false;
  SearchFlags search;
  SpaceFlags spaces;
};

int cmd_eval(const EvalArgs& a, const Common& common) {
  const SpaceAssignment sa = a.spaces.build();
  EvalOptions opts;
  opts.kind = DeltaKind::parse(a.delta);
  opts.fulldual_cap = sa.fulldual_cap;

  if (a.phrase.find("->") != std::string::npos) {
    throw UsageError("eval takes a phrase; word meanings are looked up per word");
  }
  const auto ts = targets(a.phrase, a.lexicon, a.goal);
  std::optional<Found> found;
  if (!a.derivation.empty()) {
    Derivation d = read_derivation(a.derivation);
    for (const auto& t : ts) {
      if (t.sequent == d.conclusion) found = Found{t, {d}};
    }
    if (!found) throw UsageError("derivation does not conclude a sequent of the phrase");
  } else {
    found = prove_first(ts, a.search.build());
  }
  if (!found) {
    if (common.output == "json") {
      print_json(json{{"found", false}, {"message", "no proof within bounds"}});
    } else {
      std::cout << "no proof within bounds\n";
    }
    return kNotFound;
  }

  WordTensorStore store = a.tensors.empty() ? WordTensorStore(sa)
                                             : word_tensors_load(a.tensors, sa);
  std::mt19937_64 rng(common.seed);
  const Target& t = found->target;
  std::vector<Tensor> inputs;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    const Formula& type = t.sequent.antecedent[i];
    if (!store.contains(t.words[i], type)) {
      if (!a.random_missing) {
        throw UsageError("no tensor for '" + t.words[i] + "' of type " + format_formula(type) +
                         " (pass --tensors, or --random-missing)");
      }
      store.fill_random(t.words[i], type, rng);
    }
    inputs.push_back(store.get(t.words[i], type));
  }
  const Derivation& d = found->derivations.front();
  const Diagram diagram = compile(d, sa);
  const Tensor out = evaluate(diagram, inputs, opts);

  if (common.output == "json") {
    json j;
    j["sequent"] = format_sequent(d.conclusion);
    j["contractions"] = count_rule(d, Rule::kContr);
    j["delta"] = opts.kind.name();
    j["shape"] = diagram.output.text();
    j["extents"] = out.extents();
    j["values"] = out.data();
    print_json(j);
    return kOk;
  }
  std::cout << "sequent: " << format_sequent(d.conclusion) << '\n';
  std::cout << "contractions: " << count_rule(d, Rule::kContr) << '\n';
  std::cout << "delta: " << opts.kind.name() << '\n';
  std::cout << "shape: " << diagram.output.text() << ' ' << format_extents(out.extents())
            << '\n';
  std::cout << "values: " << format_values(out.data()) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string embeddings;
  std::string dataset;
  std::string triples;
  std::string models = "full,copy-a,copy-b,k-extension,additive,verb-only";
  double k = 1.0;
  std::string csv_path;
  std::string table_path;
  bool merge_duplicates = false;
  std::size_t threads = 1;
};

int cmd_experiment(const ExperimentArgs& a, const Common& common) {
  for (const auto* p : {&a.embeddings, &a.dataset, &a.triples}) {
    if (p->empty()) throw UsageError("experiment needs --embeddings, --dataset and --triples");
    if (!std::filesystem::exists(*p)) throw UsageError("no such file: " + *p);
  }
  TaskOptions opts;
  opts.kinds.clear();
  std::stringstream list(a.models);
  std::string name;
  while (std::getline(list, name, ',')) {
    if (name.empty()) continue;
    ModelKind kind = parse_model_kind(name);
    if (kind.variant == ModelVariant::kKExt && name == "k-extension") kind.k = a.k;
    opts.kinds.push_back(kind);
  }
  opts.merge_duplicates = a.merge_duplicates;
  opts.threads = a.threads;

  const EmbeddingStore emb = load_embeddings(a.embeddings);
  const Dataset ds = load_dataset(a.dataset);
  const VerbMatrices verbs = build_verb_matrices(load_triples(a.triples), emb);
  const TaskReport report = run_task(ds, emb, verbs, opts);

  if (!a.csv_path.empty()) {
    std::ofstream f(a.csv_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.csv_path);
    write_report_csv(f, report);
  }
  if (!a.table_path.empty()) {
    std::ofstream f(a.table_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.table_path);
    write_report_table(f, report);
  }
  if (common.output == "csv") {
    write_report_csv(std::cout, report);
  } else if (common.output == "json") {
    json j;
    j["models"] = json::array();
    for (const auto& m : report.models) {
      j["models"].push_back({{"model", model_name(m.kind)},
                             {"rho", std::isnan(m.rho) ? json(nullptr) : json(m.rho)},
                             {"n_entries", m.n_entries},
                             {"n_skipped", m.n_skipped}});
    }
    j["total_entries"] = report.total_entries;
    j["skipped"] = json::array();
    for (const auto& s : report.skipped) {
      j["skipped"].push_back({{"line", s.line}, {"reason", s.reason}});
    }
    j["skipped_triples"] = report.skipped_triples;
    if (report.identity_error) j["identity_error"] = *report.identity_error;
    print_json(j);
  } else {
    write_report_table(std::cout, report);
  }
  return kOk;
}

std::string env_or(const char* name, std::string fallback = {}) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambek calculus with a relevant modality: proofs and vector semantics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  app.add_option("--output", common.output, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for random test vectors")->capture_default_str();

  const std::string lexicon_default = env_or("BANGL_LEXICON");

  ParseArgs parse_args;
  parse_args.lexicon = lexicon_default;
  auto* parse = app.add_subcommand("parse", "Parse a formula, a sequent or a phrase");
  parse->add_option("text", parse_args.text, "Formula, sequent, or phrase")->required();
  parse->add_option("--lexicon", parse_args.lexicon, "Lexicon TSV (env BANGL_LEXICON)");
  parse->add_option("--goal", parse_args.goal, "Goal for a phrase (default: one S per sentence)");

  ProveArgs prove_args;
  prove_args.lexicon = lexicon_default;
  auto* prove_cmd = app.add_subcommand("prove", "Search for derivations");
  prove_cmd->add_option("text", prove_args.text, "Sequent or phrase")->required();
  prove_cmd->add_option("--lexicon", prove_args.lexicon, "Lexicon TSV (env BANGL_LEXICON)");
  prove_cmd->add_option("--goal", prove_args.goal, "Goal for a phrase");
  prove_cmd->add_flag("--all", prove_args.all,
                      "Group derivations into distinct readings, searching each "
                      "contraction level for up to --max-solutions (default 1000)");
  add_search_flags(prove_cmd, prove_args.search);

  CompileArgs compile_args;
  compile_args.lexicon = lexicon_default;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a derivation to a diagram");
  compile_cmd->add_option("text", compile_args.text, "Sequent or phrase to prove first");
  compile_cmd->add_option("--derivation", compile_args.derivation, "Derivation file");
  compile_cmd->add_option("--lexicon", compile_args.lexicon, "Lexicon TSV (env BANGL_LEXICON)");
  compile_cmd->add_option("--goal", compile_args.goal, "Goal for a phrase");
  add_search_flags(compile_cmd, compile_args.search);
  add_space_flags(compile_cmd, compile_args.spaces);

  EvalArgs eval_args;
  eval_args.lexicon = lexicon_default;
  eval_args.tensors = env_or("BANGL_TENSORS");
  auto* eval_cmd = app.add_subcommand("eval", "Prove, compile and evaluate a phrase");
  eval_cmd->add_option("phrase", eval_args.phrase, "Phrase")->required();
  eval_cmd->add_option("--lexicon", eval_args.lexicon, "Lexicon TSV (env BANGL_LEXICON)");
  eval_cmd->add_option("--tensors", eval_args.tensors, "Word tensor TSV (env BANGL_TENSORS)");
  eval_cmd->add_option("--goal", eval_args.goal, "Goal formula");
  eval_cmd->add_option("--delta", eval_args.delta,
                       "full-dual, k-extension[:k], basis-copy-raw, basis-copy-a, basis-copy-b")
      ->capture_default_str();
  eval_cmd->add_option("--derivation", eval_args.derivation,
                       "Evaluate this derivation instead of searching");
  eval_cmd->add_flag("--random-missing", eval_args.random_missing,
                     "Draw missing word tensors from --seed");
  add_search_flags(eval_cmd, eval_args.search);
  add_space_flags(eval_cmd, eval_args.spaces);

  ExperimentArgs exp_args;
  exp_args.embeddings = env_or("BANGL_EMBEDDINGS");
  exp_args.dataset = env_or("BANGL_DATASET");
  exp_args.triples = env_or("BANGL_TRIPLES");
  auto* exp_cmd = app.add_subcommand("experiment", "Ellipsis disambiguation experiment");
  exp_cmd->add_option("--embeddings", exp_args.embeddings,
                      "word2vec text vectors (env BANGL_EMBEDDINGS)");
  exp_cmd->add_option("--dataset", exp_args.dataset, "Dataset TSV (env BANGL_DATASET)");
  exp_cmd->add_option("--triples", exp_args.triples,
                      "Verb subject object TSV (env BANGL_TRIPLES)");
  exp_cmd->add_option("--models", exp_args.models, "Comma-separated models")
      ->capture_default_str();
  exp_cmd->add_option("--k", exp_args.k, "Scale of the k vector")->capture_default_str();
  exp_cmd->add_option("--csv", exp_args.csv_path, "Write the CSV report here");
  exp_cmd->add_option("--table", exp_args.table_path, "Write the table report here");
  exp_cmd->add_flag("--merge-duplicates", exp_args.merge_duplicates,
                    "Average scores of repeated sentence/candidate rows");
  exp_cmd->add_option("--threads", exp_args.threads, "Scoring threads (0: all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*parse) return cmd_parse(parse_args, common);
    if (*prove_cmd) return cmd_prove(prove_args, common);
    if (*compile_cmd) return cmd_compile(compile_args, common);
    if (*eval_cmd) return cmd_eval(eval_args, common);
    if (*exp_cmd) return cmd_experiment(exp_args, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
