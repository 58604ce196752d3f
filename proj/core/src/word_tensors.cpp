#include "bangl/word_tensors.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bangl {

namespace {

std::size_t factor_layer1_dim(const Factor& f) {
  return f.is_fock() ? layer1_dim(*f.inner) : f.dim();
}

}  // namespace

Tensor layer1_expansion(const Factor& f) {
  if (!f.is_fock()) {
    const std::size_t d = f.dim();
    Tensor eye({d, d});
    for (std::size_t i = 0; i < d; ++i) eye[i * d + i] = 1.0;
    return eye;
  }
  const Tensor inner = expand_layer1(*f.inner, [&] {
    const std::size_t n = layer1_dim(*f.inner);
    Tensor eye({n, n});
    for (std::size_t i = 0; i < n; ++i) eye[i * n + i] = 1.0;
    return eye;
  }());
  // inner has the inner extents followed by one compact axis.
  const std::size_t dense_inner = f.inner->total_dim();
  const std::size_t compact = layer1_dim(*f.inner);
  const Tensor flat = inner.reshaped({dense_inner, compact});
  Tensor out({f.dim(), compact});
  for (std::size_t i = 0; i < dense_inner; ++i) {
    for (std::size_t j = 0; j < compact; ++j) out[(1 + i) * compact + j] = flat[i * compact + j];
  }
  return out;
}

namespace {

std::vector<double> parse_floats(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("bad number '" + token + "'");
    out.push_back(x);
  }
  return out;
}

std::string key_text(const Formula& type) { return type.text(); }

}  // namespace

std::size_t layer1_dim(const Shape& shape) {
  std::size_t d = 1;
  for (const auto& f : shape.factors) d *= factor_layer1_dim(f);
  return d;
}

// The trailing axes of `compact` beyond the shape's factors are carried along.
Tensor expand_layer1(const Shape& shape, const Tensor& compact) {
  const std::size_t k = shape.size();
  const std::size_t lead = layer1_dim(shape);
  if (compact.size() % lead != 0) throw ShapeError("layer-1 tensor has the wrong size");
  const std::size_t rest = compact.size() / lead;
  Extents extents;
  for (const auto& f : shape.factors) extents.push_back(factor_layer1_dim(f));
  extents.push_back(rest);
  Tensor t = compact.reshaped(extents);
  for (std::size_t i = 0; i < k; ++i) {
    if (shape.factors[i].is_fock()) t = t.applied_along(i, layer1_expansion(shape.factors[i]));
  }
  Extents dense = shape.extents();
  if (rest != 1) dense.push_back(rest);
  return t.reshaped(dense);
}

Tensor compact_layer1(const Shape& shape, const Tensor& dense) {
  if (dense.size() != shape.total_dim()) throw ShapeError("dense tensor has the wrong size");
  Tensor t = dense.reshaped(shape.extents());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (!shape.factors[i].is_fock()) continue;
    const Tensor e = layer1_expansion(shape.factors[i]);
    // Expansion columns are orthonormal 0/1 vectors, so the transpose inverts.
    t = t.applied_along(i, e.transposed({1, 0}));
  }
  return t.reshaped({layer1_dim(shape)});
}

void WordTensorStore::add(const std::string& word, const Formula& type, const Tensor& values) {
  const Shape shape = interpret_formula(type, sa_);
  Tensor dense;
  if (values.size() == shape.total_dim()) {
    dense = values.reshaped(shape.extents());
    const Tensor back = expand_layer1(shape, compact_layer1(shape, dense));
    if (max_abs_diff(back, dense) != 0.0) {
      throw ShapeError("'" + word + "' has weight off layer 1 for type " + type.text());
    }
  } else if (values.size() == layer1_dim(shape)) {
    dense = expand_layer1(shape, values);
  } else {
    throw ShapeError("'" + word + "' of type " + type.text() + " needs " +
                     std::to_string(shape.total_dim()) + " or " +
                     std::to_string(layer1_dim(shape)) + " values, got " +
                     std::to_string(values.size()));
  }
  entries_[{word, key_text(type)}] = std::move(dense);
}

bool WordTensorStore::contains(const std::string& word, const Formula& type) const {
  return entries_.count({word, key_text(type)}) > 0;
}

const Tensor& WordTensorStore::get(const std::string& word, const Formula& type) const {
  auto it = entries_.find({word, key_text(type)});
  if (it == entries_.end()) {
    throw std::out_of_range("no tensor for '" + word + "' of type " + type.text());
  }
  return it->second;
}

void WordTensorStore::fill_random(const std::string& word, const Formula& type,
                                  std::mt19937_64& rng) {
  if (contains(word, type)) return;
  add(word, type, random_word_tensor(type, sa_, rng));
}

Tensor random_word_tensor(const Formula& type, const SpaceAssignment& sa, std::mt19937_64& rng) {
  const Shape shape = interpret_formula(type, sa);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(layer1_dim(shape));
  for (double& x : values) x = normal(rng);
  return expand_layer1(shape, Tensor::vector(std::move(values)));
}

Tensor projection_tensor(const Formula& type, const SpaceAssignment& sa) {
  if (type.kind() != Formula::Kind::kUnder || !type.argument().is_bang() ||
      type.argument().inner() != type.result()) {
    throw ShapeError("projection needs a type !A\\A, got " + type.text());
  }
  const Shape shape = interpret_formula(type, sa);
  const Factor& fock = shape.factors.front();
  const std::size_t n = fock.inner_dim();
  Tensor t({fock.dim(), n});
  for (std::size_t i = 0; i < n; ++i) t[(1 + i) * n + i] = 1.0;
  return t.reshaped(shape.extents());
}

void word_tensors_parse(std::string_view tsv, WordTensorStore& store, const std::string& origin) {
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw std::runtime_error(where + "expected word<TAB>type<TAB>values");
    }
    try {
      const Formula type = parse_formula(line.substr(tab1 + 1, tab2 - tab1 - 1));
      store.add(line.substr(0, tab1), type, Tensor::vector(parse_floats(line.substr(tab2 + 1))));
    } catch (const std::exception& e) {
      throw std::runtime_error(where + e.what());
    }
  }
}

WordTensorStore word_tensors_load(const std::filesystem::path& path, SpaceAssignment sa) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tensor file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  WordTensorStore store(sa);
  word_tensors_parse(buffer.str(), store, path.string());
  return store;
}

}  // namespace bangl
