#include "bangl/formula.hpp"

#include <cctype>
#include <utility>

namespace bangl {

namespace {

bool is_primary(const Formula& f) { return f.is_atom() || f.is_bang(); }

std::string as_primary(const Formula& f) {
  return is_primary(f) ? f.text() : "(" + f.text() + ")";
}

std::string as_slash_operand(const Formula& f) {
  return f.is_product() ? "(" + f.text() + ")" : f.text();
}

}  // namespace

Formula::Formula() : Formula(atom("S")) {}

Formula Formula::atom(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kAtom;
  node->text = name;
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::over(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kOver;
  node->text = as_primary(left) + "/" + as_primary(right);
  node->size = 1 + left.size() + right.size();
  node->children = {std::move(left), std::move(right)};
  return Formula(std::move(node));
}

Formula Formula::under(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kUnder;
  node->text = as_primary(left) + "\\" + as_primary(right);
  node->size = 1 + left.size() + right.size();
  node->children = {std::move(left), std::move(right)};
  return Formula(std::move(node));
}

Formula Formula::bang(Formula inner) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kBang;
  node->text = "!" + as_primary(inner);
  node->size = 1 + inner.size();
  node->children = {std::move(inner)};
  return Formula(std::move(node));
}

Formula Formula::product(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kProduct;
  node->text = as_slash_operand(left) + "," + right.text();
  node->size = 1 + left.size() + right.size();
  node->children = {std::move(left), std::move(right)};
  return Formula(std::move(node));
}

const Formula& Formula::left() const {
  if (node_->children.size() != 2) {
    throw std::logic_error("left() on a formula without two operands");
  }
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (node_->children.size() != 2) {
    throw std::logic_error("right() on a formula without two operands");
  }
  return node_->children[1];
}

const Formula& Formula::inner() const {
  if (kind() != Kind::kBang) throw std::logic_error("inner() on a non-bang");
  return node_->children[0];
}

const Formula& Formula::argument() const {
  switch (kind()) {
    case Kind::kOver: return right();
    case Kind::kUnder: return left();
    default: throw std::logic_error("argument() on a non-functor");
  }
}

const Formula& Formula::result() const {
  switch (kind()) {
    case Kind::kOver: return left();
    case Kind::kUnder: return right();
    default: throw std::logic_error("result() on a non-functor");
  }
}

std::string format_formula(const Formula& f) { return f.text(); }

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const AtomSet& atoms,
                std::size_t base_offset)
      : text_(text), atoms_(atoms), base_(base_offset) {}

  Formula parse_all() {
    skip_space();
    if (pos_ == text_.size()) fail("empty formula");
    Formula f = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, base_ + pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Formula parse_expr() {
    Formula left = parse_slash();
    if (peek(',')) {
      ++pos_;
      return Formula::product(std::move(left), parse_expr());
    }
    return left;
  }

  Formula parse_slash() {
    Formula left = parse_primary();
    skip_space();
    if (pos_ < text_.size() && (text_[pos_] == '\\' || text_[pos_] == '/')) {
      const char op = text_[pos_++];
      Formula right = parse_primary();
      skip_space();
      if (pos_ < text_.size() && (text_[pos_] == '\\' || text_[pos_] == '/')) {
        fail("ambiguous nesting of '\\' and '/'; add parentheses");
      }
      return op == '\\' ? Formula::under(std::move(left), std::move(right))
                        : Formula::over(std::move(left), std::move(right));
    }
    return left;
  }

  Formula parse_primary() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return Formula::bang(parse_primary());
    }
    if (c == '(') {
      ++pos_;
      Formula f = parse_expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (!atoms_.contains(name)) {
        throw ParseError("unknown atom '" + name + "'", base_ + start);
      }
      return Formula::atom(std::move(name));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const AtomSet& atoms_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

bool is_blank(std::string_view s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Formula parse_formula(std::string_view text, const AtomSet& atoms) {
  return FormulaParser(text, atoms, 0).parse_all();
}

Sequent parse_sequent(std::string_view text, const AtomSet& atoms) {
  const std::size_t arrow = text.find("->");
  if (arrow == std::string_view::npos) throw ParseError("missing '->'", 0);
  if (text.find("->", arrow + 2) != std::string_view::npos) {
    throw ParseError("more than one '->'", text.find("->", arrow + 2));
  }
  const std::string_view lhs = text.substr(0, arrow);
  const std::string_view rhs = text.substr(arrow + 2);

  std::vector<Formula> antecedent;
  const std::size_t star = lhs.find('*');
  if (star != std::string_view::npos && is_blank(lhs.substr(0, star)) &&
      is_blank(lhs.substr(star + 1))) {
    // Empty antecedent written explicitly.
  } else if (!is_blank(lhs)) {
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= lhs.size(); ++i) {
      const bool end = i == lhs.size();
      if (!end && lhs[i] == '(') ++depth;
      if (!end && lhs[i] == ')') --depth;
      if (end || (lhs[i] == ',' && depth == 0)) {
        const std::string_view piece = lhs.substr(start, i - start);
        if (is_blank(piece)) throw ParseError("empty antecedent formula", start);
        antecedent.push_back(FormulaParser(piece, atoms, start).parse_all());
        start = i + 1;
      }
    }
  }
  Formula goal = FormulaParser(rhs, atoms, arrow + 2).parse_all();
  return Sequent{std::move(antecedent), std::move(goal)};
}

std::string format_antecedent(const std::vector<Formula>& formulas) {
  std::string out;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    if (i) out += ", ";
    out += as_slash_operand(formulas[i]);
  }
  return out;
}

std::string format_sequent(const Sequent& s) {
  std::string out = format_antecedent(s.antecedent);
  out += s.antecedent.empty() ? "-> " : " -> ";
  out += s.goal.text();
  return out;
}

}  // namespace bangl
