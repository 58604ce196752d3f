#include "bangl/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace bangl {

namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(std::string("cannot open ") + what + " " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (true) {
    const std::size_t to = line.find('\t', from);
    std::string cell(line.substr(from, to == std::string_view::npos ? line.npos : to - from));
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(std::move(cell));
    if (to == std::string_view::npos) break;
    from = to + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size() && std::isfinite(out);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    pos = end + 1;
  }
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

Dataset parse_dataset(std::string_view tsv, const std::string& origin) {
  static const std::vector<std::string> kHeader = {"subject1", "verb",           "object",
                                                   "subject2", "candidate_verb", "score"};
  Dataset ds;
  ds.source = origin;
  bool header_seen = false;
  for_each_line(tsv, [&](std::string_view line, std::size_t line_no) {
    auto fail = [&](const std::string& what) {
      return DatasetError(origin + ":" + std::to_string(line_no) + ": " + what);
    };
    if (blank(line)) return;
    if (line.front() == '#') {
      std::istringstream in{std::string(line.substr(1))};
      std::string word;
      double lo = 0, hi = 0;
      if (in >> word && word == "scale") {
        if (!(in >> lo >> hi) || !(lo < hi)) throw fail("expected `# scale <lo> <hi>`");
        ds.scale = {lo, hi};
      }
      return;
    }
    auto cells = split_tabs(line);
    if (!header_seen) {
      if (cells != kHeader) {
        throw fail("expected header `subject1\tverb\tobject\tsubject2\tcandidate_verb\tscore`");
      }
      header_seen = true;
      return;
    }
    if (cells.size() != 6) {
      throw fail("expected 6 tab-separated fields, found " + std::to_string(cells.size()));
    }
    TaskEntry e{cells[0], cells[1], cells[2], cells[3], cells[4], 0, line_no};
    for (std::size_t i = 0; i < 5; ++i) {
      if (cells[i].empty()) throw fail("empty field " + kHeader[i]);
    }
    if (!parse_double(cells[5], e.score)) throw fail("malformed score '" + cells[5] + "'");
    if (ds.scale && (e.score < ds.scale->first || e.score > ds.scale->second)) {
      throw fail("score " + cells[5] + " outside declared scale");
    }
    ds.entries.push_back(std::move(e));
  });
  if (!header_seen) throw DatasetError(origin + ": missing header");
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_file(path, "dataset"), path.string());
}

std::vector<Triple> parse_triples(std::string_view tsv, const std::string& origin) {
  std::vector<Triple> out;
  bool first = true;
  for_each_line(tsv, [&](std::string_view line, std::size_t line_no) {
    if (blank(line) || line.front() == '#') return;
    auto cells = split_tabs(line);
    const bool header = first && !cells.empty() && cells[0] == "verb";
    first = false;
    if (header) return;
    if (cells.size() != 3 || cells[0].empty() || cells[1].empty() || cells[2].empty()) {
      throw DatasetError(origin + ":" + std::to_string(line_no) +
                         ": expected `verb<TAB>subject<TAB>object`");
    }
    out.push_back(Triple{cells[0], cells[1], cells[2]});
  });
  return out;
}

std::vector<Triple> load_triples(const std::filesystem::path& path) {
  return parse_triples(read_file(path, "triples"), path.string());
}

VerbMatrices build_verb_matrices(const std::vector<Triple>& triples,
                                 const EmbeddingStore& embeddings) {
  std::map<std::string, std::vector<std::pair<Vec, Vec>>> pairs;
  VerbMatrices out;
  for (const auto& t : triples) {
    const Vec* s = embeddings.find(t.subject);
    const Vec* o = embeddings.find(t.object);
    if (s == nullptr || o == nullptr) {
      ++out.skipped_triples;
      continue;
    }
    pairs[t.verb].emplace_back(*s, *o);
  }
  for (const auto& [verb, list] : pairs) {
    out.matrices.emplace(verb, relational_verb(list, verb));
  }
  return out;
}

namespace {

std::vector<TaskEntry> merged(const std::vector<TaskEntry>& entries) {
  std::vector<TaskEntry> out;
  std::map<std::string, std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : entries) {
    const std::string key = e.subject1 + '\t' + e.verb + '\t' + e.object + '\t' +
                            e.subject2 + '\t' + e.candidate;
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, std::make_pair(out.size(), std::size_t{1}));
      out.push_back(e);
    } else {
      auto& [index, count] = it->second;
      TaskEntry& kept = out[index];
      kept.score = (kept.score * static_cast<double>(count) + e.score) /
                   static_cast<double>(count + 1);
      ++count;
    }
  }
  return out;
}

// Reason the entry cannot be scored under every requested kind, or empty.
std::string missing_input(const TaskEntry& e, const EmbeddingStore& emb,
                          const VerbMatrices& verbs, const std::vector<ModelKind>& kinds) {
  bool need_matrix = false, need_verb_vector = false;
  for (const auto& k : kinds) (k.compositional() ? need_matrix : need_verb_vector) = true;
  for (const std::string* w : {&e.subject1, &e.object, &e.subject2}) {
    if (!emb.contains(*w)) return "no vector for '" + *w + "'";
  }
  for (const std::string* v : {&e.verb, &e.candidate}) {
    if (need_matrix && verbs.matrices.count(*v) == 0) return "no verb matrix for '" + *v + "'";
    if (need_verb_vector && !emb.contains(*v)) return "no vector for '" + *v + "'";
  }
  return {};
}

struct EntryResult {
  std::string skip;
  std::vector<std::optional<double>> cosines;
  double identity_error = 0;
};

EntryResult score_entry(const TaskEntry& e, const EmbeddingStore& emb,
                        const VerbMatrices& verbs, const std::vector<ModelKind>& kinds) {
  EntryResult r;
  r.skip = missing_input(e, emb, verbs, kinds);
  if (!r.skip.empty()) return r;
  const Vec& s1 = emb.at(e.subject1);
  const Vec& obj = emb.at(e.object);
  const Vec& s2 = emb.at(e.subject2);
  std::optional<std::pair<Vec, Vec>> full;
  std::vector<std::pair<double, std::pair<Vec, Vec>>> kext;
  for (const auto& kind : kinds) {
    std::pair<Vec, Vec> sentences;
    if (kind.compositional()) {
      sentences = {compose_ellipsis(kind, verbs.matrices.at(e.verb), s1, obj, s2),
                   compose_ellipsis(kind, verbs.matrices.at(e.candidate), s1, obj, s2)};
    } else {
      sentences = {compose_baseline(kind, emb.at(e.verb), s1, obj, s2),
                   compose_baseline(kind, emb.at(e.candidate), s1, obj, s2)};
    }
    if (kind.variant == ModelVariant::kFull) full = sentences;
    if (kind.variant == ModelVariant::kKExt) kext.emplace_back(kind.k, sentences);
    try {
      r.cosines.push_back(cosine(sentences.first, sentences.second));
    } catch (const std::domain_error&) {
      r.cosines.push_back(std::nullopt);
    }
  }
  if (full) {
    const Vec offset = add(s1, s2);
    for (const auto& [k, sentences] : kext) {
      const Vec shift = scaled(offset, k);
      for (std::size_t i = 0; i < shift.size(); ++i) {
        r.identity_error = std::max(
            {r.identity_error,
             std::abs(sentences.first[i] - (full->first[i] + shift[i])),
             std::abs(sentences.second[i] - (full->second[i] + shift[i]))});
      }
    }
  }
  return r;
}

}  // namespace

TaskReport run_task(const Dataset& dataset, const EmbeddingStore& embeddings,
                    const VerbMatrices& verbs, const TaskOptions& options) {
  const std::vector<TaskEntry> entries =
      options.merge_duplicates ? merged(dataset.entries) : dataset.entries;
  const auto& kinds = options.kinds;
  if (kinds.empty()) throw std::invalid_argument("run_task: no models requested");

  std::vector<EntryResult> results(entries.size());
  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                             : options.threads;
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, entries.size()));
  auto work = [&](std::size_t from) {
    for (std::size_t i = from; i < entries.size(); i += threads) {
      results[i] = score_entry(entries[i], embeddings, verbs, kinds);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  TaskReport report;
  report.total_entries = entries.size();
  report.skipped_triples = verbs.skipped_triples;
  bool has_full = false, has_kext = false;
  for (const auto& k : kinds) {
    has_full |= k.variant == ModelVariant::kFull;
    has_kext |= k.variant == ModelVariant::kKExt;
  }
  if (has_full && has_kext) report.identity_error = 0.0;

  std::vector<std::vector<double>> humans(kinds.size());
  for (const auto& k : kinds) report.models.push_back(ModelResult{k, 0, 0, 0, {}});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& r = results[i];
    if (!r.skip.empty()) {
      report.skipped.push_back(SkippedEntry{entries[i].line, r.skip});
      for (auto& m : report.models) ++m.n_skipped;
      continue;
    }
    if (report.identity_error) {
      report.identity_error = std::max(*report.identity_error, r.identity_error);
    }
    for (std::size_t m = 0; m < kinds.size(); ++m) {
      if (!r.cosines[m]) {
        ++report.models[m].n_skipped;
        report.skipped.push_back(SkippedEntry{
            entries[i].line, model_name(kinds[m]) + ": zero sentence vector"});
        continue;
      }
      report.models[m].scores.push_back(*r.cosines[m]);
      humans[m].push_back(entries[i].score);
      ++report.models[m].n_entries;
    }
  }
  bool usable = false;
  for (std::size_t m = 0; m < kinds.size(); ++m) {
    auto& model = report.models[m];
    if (model.n_entries < 2) {
      model.rho = std::nan("");
      continue;
    }
    try {
      model.rho = spearman_rho(model.scores, humans[m]);
      usable = true;
    } catch (const std::domain_error&) {
      model.rho = std::nan("");
    }
  }
  if (!usable) {
    throw DatasetError(dataset.source + ": no usable entries (" +
                       std::to_string(report.skipped.size()) + " skipped)");
  }
  return report;
}

void write_report_csv(std::ostream& out, const TaskReport& report) {
  out << "model,rho,n_entries,n_skipped\n";
  for (const auto& m : report.models) {
    out << model_name(m.kind) << ',' << (std::isnan(m.rho) ? "nan" : fixed6(m.rho)) << ','
        << m.n_entries << ',' << m.n_skipped << '\n';
  }
}

void write_report_table(std::ostream& out, const TaskReport& report) {
  auto row = [&](const ModelResult& m) {
    std::string name = model_name(m.kind);
    name.resize(std::max<std::size_t>(name.size(), 14), ' ');
    out << "  " << name << (std::isnan(m.rho) ? "     nan" : fixed6(m.rho)) << "  ("
        << m.n_entries << " entries)\n";
  };
  out << "Spearman rho against human scores\n";
  out << "compositional\n";
  for (const auto& m : report.models) {
    if (m.kind.compositional()) row(m);
  }
  out << "baselines\n";
  for (const auto& m : report.models) {
    if (!m.kind.compositional()) row(m);
  }
  out << "entries: " << report.total_entries << ", skipped: " << report.skipped.size()
      << ", triples without vectors: " << report.skipped_triples << '\n';
  if (report.identity_error) {
    out << "k-extension minus full minus k(sub1+sub2): max " << *report.identity_error << '\n';
  }
  for (const auto& s : report.skipped) {
    out << "  skipped line " << s.line << ": " << s.reason << '\n';
  }
}

}  // namespace bangl
