#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bangl/distrib.hpp"
#include "bangl/embeddings.hpp"

namespace bangl {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `sub1 verb obj and sub2 does too` paired with a candidate meaning of verb.
struct TaskEntry {
  std::string subject1;
  std::string verb;
  std::string object;
  std::string subject2;
  std::string candidate;
  double score = 0;
  // 1-based line in the source file.
  std::size_t line = 0;
};

struct Dataset {
  std::vector<TaskEntry> entries;
  // Declared by a `# scale <lo> <hi>` line, if any.
  std::optional<std::pair<double, double>> scale;
  std::string source;
};

// TSV with header `subject1 verb object subject2 candidate_verb score`.
Dataset parse_dataset(std::string_view tsv, const std::string& origin = "<text>");
Dataset load_dataset(const std::filesystem::path& path);

struct Triple {
  std::string verb;
  std::string subject;
  std::string object;
};

// `verb subject object` lines; an optional header starting with `verb`.
std::vector<Triple> parse_triples(std::string_view tsv, const std::string& origin = "<text>");
std::vector<Triple> load_triples(const std::filesystem::path& path);

struct VerbMatrices {
  std::map<std::string, VerbMatrix> matrices;
  // Triples dropped because a word has no vector.
  std::size_t skipped_triples = 0;
};

VerbMatrices build_verb_matrices(const std::vector<Triple>& triples,
                                 const EmbeddingStore& embeddings);

struct TaskOptions {
  std::vector<ModelKind> kinds = all_model_kinds();
  // Average human scores of rows with the same sentence and candidate.
  bool merge_duplicates = false;
  // Worker threads for entry scoring; 0 picks the hardware count.
  std::size_t threads = 1;
};

struct SkippedEntry {
  std::size_t line = 0;
  std::string reason;
};

struct ModelResult {
  ModelKind kind;
  double rho = 0;
  std::size_t n_entries = 0;
  std::size_t n_skipped = 0;
  // Cosine per usable entry, in dataset order.
  std::vector<double> scores;
};

struct TaskReport {
  std::vector<ModelResult> models;
  std::vector<SkippedEntry> skipped;
  std::size_t total_entries = 0;
  std::size_t skipped_triples = 0;
  // Largest |k-extension − (full + k·sub1 + k·sub2)| over entries, when both
  // models are requested.
  std::optional<double> identity_error;
};

// Throws DatasetError when no entry is usable.
TaskReport run_task(const Dataset& dataset, const EmbeddingStore& embeddings,
                    const VerbMatrices& verbs, const TaskOptions& options = {});

// `model,rho,n_entries,n_skipped` with fixed six-decimal values.
void write_report_csv(std::ostream& out, const TaskReport& report);
void write_report_table(std::ostream& out, const TaskReport& report);

}  // namespace bangl
