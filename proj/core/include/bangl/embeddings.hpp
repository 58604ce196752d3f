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

namespace bangl {

using Vec = std::vector<double>;

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Coverage {
  std::size_t found = 0;
  std::vector<std::string> missing;
};

// Word vectors of one fixed dimension.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim = 0) : dim_(dim) {}

  // Throws EmbeddingError on a dimension mismatch or a repeated word.
  void add(const std::string& word, Vec vector);

  bool contains(const std::string& word) const { return vectors_.count(word) > 0; }
  // Null when absent.
  const Vec* find(const std::string& word) const;
  // Throws EmbeddingError naming the missing word.
  const Vec& at(const std::string& word) const;

  Coverage coverage(const std::vector<std::string>& words) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::string& source() const { return source_; }
  void set_source(std::string source) { source_ = std::move(source); }

 private:
  std::size_t dim_;
  std::map<std::string, Vec> vectors_;
  std::string source_;
};

// word2vec text format: a `count dim` header, then `word v1 … vdim` lines.
// Errors name the source and line.
EmbeddingStore parse_embeddings(std::string_view text, const std::string& origin = "<text>");
EmbeddingStore load_embeddings(const std::filesystem::path& path);

void write_embeddings(std::ostream& out, const EmbeddingStore& store,
                      const std::vector<std::string>& order);

}  // namespace bangl
