#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>

#include "bangl/formula.hpp"
#include "bangl/shape.hpp"
#include "bangl/tensor.hpp"

namespace bangl {

// Size of a shape once every Fock factor is replaced by its inner factors.
std::size_t layer1_dim(const Shape& shape);

// Places a tensor over the layer-1 coordinates into the dense space, one
// nesting level at a time: each Fock factor gets (0, v, 0, …).
Tensor expand_layer1(const Shape& shape, const Tensor& compact);
// Dense × layer-1 matrix of one factor; the identity for base factors.
Tensor layer1_expansion(const Factor& factor);

// Inverse of expand_layer1 on its image; drops everything off layer 1.
Tensor compact_layer1(const Shape& shape, const Tensor& dense);

// Word meanings, keyed by word and type, stored densely with the extents of
// the type's shape.
class WordTensorStore {
 public:
  explicit WordTensorStore(SpaceAssignment sa) : sa_(sa) { sa_.validate(); }

  const SpaceAssignment& spaces() const { return sa_; }

  // Accepts the dense size or the layer-1 size of the type's shape. Dense
  // values of a !-type must lie on layer 1. Throws ShapeError.
  void add(const std::string& word, const Formula& type, const Tensor& values);
  bool contains(const std::string& word, const Formula& type) const;
  // Throws std::out_of_range.
  const Tensor& get(const std::string& word, const Formula& type) const;
  std::size_t size() const { return entries_.size(); }

  // Random layer-1 entries for any missing (word, type); standard normal
  // coordinates drawn in the order of the calls.
  void fill_random(const std::string& word, const Formula& type, std::mt19937_64& rng);

 private:
  SpaceAssignment sa_;
  std::map<std::pair<std::string, std::string>, Tensor> entries_;
};

Tensor random_word_tensor(const Formula& type, const SpaceAssignment& sa,
                          std::mt19937_64& rng);

// For a type !A\A: the counit, read as a tensor over [F(A), A].
Tensor projection_tensor(const Formula& type, const SpaceAssignment& sa);

// Reads `word<TAB>type<TAB>floats` lines; '#' lines and blanks are skipped.
// Errors name the file and line.
WordTensorStore word_tensors_load(const std::filesystem::path& path, SpaceAssignment sa);
void word_tensors_parse(std::string_view tsv, WordTensorStore& store,
                        const std::string& origin = "<string>");

}  // namespace bangl
