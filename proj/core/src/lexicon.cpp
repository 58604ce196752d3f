#include "bangl/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace bangl {

void Lexicon::add(const std::string& word, Formula type) {
  entries_[word].push_back(std::move(type));
}

void Lexicon::add(const std::string& word, std::string_view type) {
  add(word, parse_formula(type, atoms_));
}

bool Lexicon::contains(const std::string& word) const {
  return entries_.find(word) != entries_.end();
}

const std::vector<Formula>& Lexicon::lookup(const std::string& word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) throw UnknownWordError(word);
  return it->second;
}

Lexicon lexicon_parse(std::string_view tsv, AtomSet atoms) {
  Lexicon lexicon(std::move(atoms));
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= tsv.size()) {
    std::size_t line_end = tsv.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = tsv.size();
    std::string_view line = tsv.substr(line_start, line_end - line_start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = 0;
    while (first < line.size() &&
           std::isspace(static_cast<unsigned char>(line[first]))) {
      ++first;
    }
    if (first < line.size() && line[first] != '#') {
      const std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": expected word<TAB>formula",
                         line_start);
      }
      const std::string word(line.substr(0, tab));
      try {
        lexicon.add(word, line.substr(tab + 1));
      } catch (const ParseError& e) {
        throw ParseError("lexicon line " + std::to_string(line_no) + ": " +
                             e.what(),
                         line_start + tab + 1 + e.offset());
      }
    }
    if (line_end == tsv.size()) break;
    line_start = line_end + 1;
  }
  return lexicon;
}

Lexicon lexicon_load(const std::filesystem::path& path, AtomSet atoms) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return lexicon_parse(buffer.str(), std::move(atoms));
}

std::vector<std::string> tokenize(std::string_view phrase) {
  std::vector<std::string> words;
  std::istringstream in{std::string(phrase)};
  std::string word;
  constexpr const char* kPunct = ".,;:!?";
  while (in >> word) {
    const std::size_t first = word.find_first_not_of(kPunct);
    if (first == std::string::npos) continue;
    const std::size_t last = word.find_last_not_of(kPunct);
    words.push_back(word.substr(first, last - first + 1));
  }
  return words;
}

std::vector<std::string> segment(const Lexicon& lexicon, std::string_view phrase) {
  const std::vector<std::string> tokens = tokenize(phrase);
  auto lower = [](std::string w) {
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return w;
  };
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    for (std::size_t len = std::min<std::size_t>(3, tokens.size() - i); len >= 1 && !matched;
         --len) {
      std::string joined = tokens[i];
      for (std::size_t k = 1; k < len; ++k) joined += " " + tokens[i + k];
      for (const std::string& key : {joined, lower(joined)}) {
        if (lexicon.contains(key)) {
          words.push_back(key);
          i += len;
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw UnknownWordError(tokens[i]);
  }
  return words;
}

PhraseSequents::PhraseSequents(const Lexicon& lexicon,
                               std::vector<std::string> words, Formula goal)
    : goal_(std::move(goal)) {
  for (const auto& word : words) {
    choices_.push_back(&lexicon.lookup(word));
    count_ *= choices_.back()->size();
  }
}

Sequent PhraseSequents::at(std::size_t index) const {
  if (index >= count_) throw std::out_of_range("phrase sequent index");
  std::vector<Formula> antecedent(choices_.size(), goal_);
  for (std::size_t i = choices_.size(); i-- > 0;) {
    const auto& options = *choices_[i];
    antecedent[i] = options[index % options.size()];
    index /= options.size();
  }
  return Sequent{std::move(antecedent), goal_};
}

Sequent phrase_sequent(const Lexicon& lexicon,
                       const std::vector<std::string>& words, Formula goal) {
  return PhraseSequents(lexicon, words, std::move(goal)).at(0);
}

}  // namespace bangl
