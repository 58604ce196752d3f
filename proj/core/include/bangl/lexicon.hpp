#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bangl/formula.hpp"

namespace bangl {

class UnknownWordError : public std::runtime_error {
 public:
  explicit UnknownWordError(const std::string& word)
      : std::runtime_error("unknown word '" + word + "'"), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// Word → type assignments. A word may carry several types.
class Lexicon {
 public:
  explicit Lexicon(AtomSet atoms = {}) : atoms_(std::move(atoms)) {}

  void add(const std::string& word, Formula type);
  // Parses `type` under this lexicon's atom set.
  void add(const std::string& word, std::string_view type);

  bool contains(const std::string& word) const;
  // Throws UnknownWordError.
  const std::vector<Formula>& lookup(const std::string& word) const;

  const AtomSet& atoms() const { return atoms_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<Formula>>& entries() const {
    return entries_;
  }

 private:
  AtomSet atoms_;
  std::map<std::string, std::vector<Formula>> entries_;
};

// Reads `word<TAB>formula` lines. Blank lines and lines starting with '#'
// are skipped. Duplicate words accumulate alternative types.
Lexicon lexicon_load(const std::filesystem::path& path, AtomSet atoms = {});
Lexicon lexicon_parse(std::string_view tsv, AtomSet atoms = {});

// Splits on whitespace, trims . , ; : ! ? from both ends of each token and
// drops tokens left empty.
std::vector<std::string> tokenize(std::string_view phrase);

// Lexicon entries for a phrase, matching up to three tokens at a time
// ("does too") and falling back to lower case. Throws UnknownWordError.
std::vector<std::string> segment(const Lexicon& lexicon, std::string_view phrase);

// All sequents a phrase can give rise to, one per choice of type for each
// ambiguous word. Choices are enumerated lazily in mixed-radix order with the
// last word varying fastest.
class PhraseSequents {
 public:
  PhraseSequents(const Lexicon& lexicon, std::vector<std::string> words,
                 Formula goal);

  std::size_t count() const { return count_; }
  Sequent at(std::size_t index) const;

 private:
  std::vector<const std::vector<Formula>*> choices_;
  Formula goal_;
  std::size_t count_ = 1;
};

// The first sequent of PhraseSequents.
Sequent phrase_sequent(const Lexicon& lexicon,
                       const std::vector<std::string>& words, Formula goal);

}  // namespace bangl
