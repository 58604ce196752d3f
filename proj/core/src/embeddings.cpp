#include "bangl/embeddings.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace bangl {

void EmbeddingStore::add(const std::string& word, Vec vector) {
  if (dim_ == 0) dim_ = vector.size();
  if (vector.size() != dim_) {
    throw EmbeddingError("vector for '" + word + "' has " + std::to_string(vector.size()) +
                         " values, expected " + std::to_string(dim_));
  }
  if (!vectors_.emplace(word, std::move(vector)).second) {
    throw EmbeddingError("duplicate vector for '" + word + "'");
  }
}

const Vec* EmbeddingStore::find(const std::string& word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

const Vec& EmbeddingStore::at(const std::string& word) const {
  const Vec* v = find(word);
  if (v == nullptr) throw EmbeddingError("no vector for '" + word + "'");
  return *v;
}

Coverage EmbeddingStore::coverage(const std::vector<std::string>& words) const {
  Coverage c;
  for (const auto& w : words) {
    if (contains(w)) {
      ++c.found;
    } else {
      c.missing.push_back(w);
    }
  }
  return c;
}

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && end == s.data() + s.size();
}

}  // namespace

EmbeddingStore parse_embeddings(std::string_view text, const std::string& origin) {
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> EmbeddingError {
    return EmbeddingError(origin + ":" + std::to_string(line_no) + ": " + what);
  };

  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) {
    line_no = 1;
    throw fail("missing `count dim` header");
  }
  const auto header = fields(line);
  std::size_t count = 0, dim = 0;
  if (header.size() != 2 || !parse_number(header[0], count) ||
      !parse_number(header[1], dim) || dim == 0) {
    throw fail("expected `count dim` header");
  }

  EmbeddingStore store(dim);
  store.set_source(origin);
  while (next_line(line)) {
    const auto parts = fields(line);
    if (parts.empty()) continue;
    if (parts.size() - 1 != dim) {
      throw fail("dim mismatch: " + std::to_string(parts.size() - 1) + " values, expected " +
                 std::to_string(dim));
    }
    Vec v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_number(parts[k + 1], v[k])) {
        throw fail("malformed value '" + std::string(parts[k + 1]) + "'");
      }
    }
    try {
      store.add(std::string(parts[0]), std::move(v));
    } catch (const EmbeddingError& e) {
      throw fail(e.what());
    }
  }
  if (store.size() != count) {
    throw EmbeddingError(origin + ": header declares " + std::to_string(count) +
                         " vectors, found " + std::to_string(store.size()));
  }
  return store;
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmbeddingError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_embeddings(buffer.str(), path.string());
}

void write_embeddings(std::ostream& out, const EmbeddingStore& store,
                      const std::vector<std::string>& order) {
  out << order.size() << ' ' << store.dim() << '\n';
  for (const auto& w : order) {
    out << w;
    for (double x : store.at(w)) out << ' ' << std::setprecision(17) << x;
    out << '\n';
  }
}

}  // namespace bangl
