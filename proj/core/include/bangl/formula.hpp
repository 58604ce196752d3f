#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bangl {

// Raised by the formula, sequent and lexicon readers. `offset` is the byte
// offset into the text being parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// The atoms a grammar is allowed to mention.
class AtomSet {
 public:
  AtomSet() : names_{"N", "S"} {}
  explicit AtomSet(std::set<std::string> names) : names_(std::move(names)) {}

  bool contains(std::string_view name) const {
    return names_.find(std::string(name)) != names_.end();
  }
  const std::set<std::string>& names() const { return names_; }

 private:
  std::set<std::string> names_;
};

/// Immutable type of the calculus.
///
/// A formula is a shared, immutable tree. Copies are cheap and structural
/// equality is syntactic. The canonical text (minimal parentheses) is cached
/// on construction and doubles as the equality and ordering key.
///
///   Over(l, r)    prints as  l/r   (result l, argument r)
///   Under(l, r)   prints as  l\r   (argument l, result r)
///   Product(l, r) prints as  l,r
class Formula {
 public:
  enum class Kind { kAtom, kOver, kUnder, kBang, kProduct };

  // The atom S.
  Formula();

  static Formula atom(std::string name);
  static Formula over(Formula left, Formula right);
  static Formula under(Formula left, Formula right);
  static Formula bang(Formula inner);
  static Formula product(Formula left, Formula right);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::kAtom; }
  bool is_bang() const { return kind() == Kind::kBang; }
  bool is_product() const { return kind() == Kind::kProduct; }
  bool is_functor() const {
    return kind() == Kind::kOver || kind() == Kind::kUnder;
  }

  // Atom name; empty for compound formulas.
  const std::string& name() const;
  const Formula& left() const;
  const Formula& right() const;
  // Operand of a Bang.
  const Formula& inner() const;

  // For Over and Under: the formula consumed and the formula produced.
  const Formula& argument() const;
  const Formula& result() const;

  const std::string& text() const;

  // Number of connectives and atoms.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.node_ == b.node_ || a.text() == b.text();
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }
  friend bool operator<(const Formula& a, const Formula& b) {
    return a.text() < b.text();
  }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> children;
  std::string text;
  std::size_t size = 1;
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::string& Formula::text() const { return node_->text; }
inline std::size_t Formula::size() const { return node_->size; }

// Parses the surface grammar
//   F := atom | "!" F | F "\" F | F "/" F | F "," F | "(" F ")"
// "!" binds tightest, "\" and "/" do not associate (nested slashes need
// parentheses) and "," is lowest and right-associative.
Formula parse_formula(std::string_view text, const AtomSet& atoms = {});

// Minimal-parenthesization text; parse_formula(format_formula(f)) == f.
std::string format_formula(const Formula& f);

// A sequent Γ → A. The antecedent may be empty.
struct Sequent {
  std::vector<Formula> antecedent;
  Formula goal;

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.goal == b.goal && a.antecedent == b.antecedent;
  }
  friend bool operator!=(const Sequent& a, const Sequent& b) {
    return !(a == b);
  }
};

// "A, B, C -> D". The left side is split on top-level commas; the right side
// is one formula (a top-level comma there builds a Product). A lone "*" on the
// left denotes the empty antecedent.
Sequent parse_sequent(std::string_view text, const AtomSet& atoms = {});
std::string format_sequent(const Sequent& s);

// Formats an antecedent list the way format_sequent prints it.
std::string format_antecedent(const std::vector<Formula>& formulas);

}  // namespace bangl

template <>
struct std::hash<bangl::Formula> {
  std::size_t operator()(const bangl::Formula& f) const noexcept {
    return std::hash<std::string>{}(f.text());
  }
};
