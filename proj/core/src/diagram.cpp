#include "bangl/diagram.hpp"

#include <stdexcept>

namespace bangl {

namespace {

Term make(DiagramTerm node) { return std::make_shared<const DiagramTerm>(std::move(node)); }

bool is_identity(const Term& t) { return t->kind == TermKind::kId; }

}  // namespace

Term term_id(Shape shape) {
  DiagramTerm n;
  n.kind = TermKind::kId;
  n.input = n.output = n.first = std::move(shape);
  return make(std::move(n));
}

Term term_cup(Shape argument, Shape result, bool arg_first) {
  DiagramTerm n;
  n.kind = TermKind::kCup;
  n.input = arg_first ? argument + argument + result : argument + result + argument;
  n.output = result;
  n.first = std::move(argument);
  n.second = std::move(result);
  n.arg_first = arg_first;
  return make(std::move(n));
}

Term term_cap(Shape shape) {
  DiagramTerm n;
  n.kind = TermKind::kCap;
  n.output = shape + shape;
  n.first = std::move(shape);
  return make(std::move(n));
}

Term term_delta(Factor fock) {
  if (!fock.is_fock()) throw ShapeError("Delta needs a Fock factor");
  DiagramTerm n;
  n.kind = TermKind::kDelta;
  n.input = Shape{{fock}};
  n.output = Shape{{fock, fock}};
  n.factor = std::move(fock);
  return make(std::move(n));
}

Term term_eps(Factor fock) {
  if (!fock.is_fock()) throw ShapeError("Eps needs a Fock factor");
  DiagramTerm n;
  n.kind = TermKind::kEps;
  n.input = Shape{{fock}};
  n.output = *fock.inner;
  n.factor = std::move(fock);
  return make(std::move(n));
}

Term term_incl(Factor fock) {
  if (!fock.is_fock()) throw ShapeError("Incl needs a Fock factor");
  DiagramTerm n;
  n.kind = TermKind::kIncl;
  n.input = *fock.inner;
  n.output = Shape{{fock}};
  n.factor = std::move(fock);
  return make(std::move(n));
}

Term term_swap(Shape first, Shape second) {
  if (first.empty() || second.empty()) return term_id(first + second);
  DiagramTerm n;
  n.kind = TermKind::kSwap;
  n.input = first + second;
  n.output = second + first;
  n.first = std::move(first);
  n.second = std::move(second);
  return make(std::move(n));
}

Term term_seq(Term s, Term t) {
  if (!(s->output == t->input)) {
    throw ShapeError("cannot compose " + s->output.text() + " with " + t->input.text());
  }
  if (is_identity(s)) return t;
  if (is_identity(t)) return s;
  DiagramTerm n;
  n.kind = TermKind::kSeq;
  n.input = s->input;
  n.output = t->output;
  n.left = std::move(s);
  n.right = std::move(t);
  return make(std::move(n));
}

Term term_par(Term s, Term t) {
  if (is_identity(s) && is_identity(t)) return term_id(s->input + t->input);
  if (is_identity(s) && s->input.empty()) return t;
  if (is_identity(t) && t->input.empty()) return s;
  DiagramTerm n;
  n.kind = TermKind::kPar;
  n.input = s->input + t->input;
  n.output = s->output + t->output;
  n.left = std::move(s);
  n.right = std::move(t);
  return make(std::move(n));
}

Term term_par(std::vector<Term> terms) {
  Term out = term_id(Shape{});
  for (auto& t : terms) out = term_par(out, std::move(t));
  return out;
}

std::size_t count_nodes(const Term& t, TermKind kind) {
  std::size_t n = t->kind == kind ? 1 : 0;
  if (t->left) n += count_nodes(t->left, kind);
  if (t->right) n += count_nodes(t->right, kind);
  return n;
}

std::string term_kind_name(TermKind kind) {
  switch (kind) {
    case TermKind::kId: return "id";
    case TermKind::kCup: return "cup";
    case TermKind::kCap: return "cap";
    case TermKind::kDelta: return "delta";
    case TermKind::kEps: return "eps";
    case TermKind::kIncl: return "incl";
    case TermKind::kSwap: return "swap";
    case TermKind::kSeq: return "seq";
    case TermKind::kPar: return "par";
  }
  return "?";
}

std::string term_to_sexpr(const Term& t) {
  const std::string head = "(" + term_kind_name(t->kind);
  switch (t->kind) {
    case TermKind::kId:
    case TermKind::kCap:
      return head + " " + t->first.text() + ")";
    case TermKind::kCup:
      return head + (t->arg_first ? " " : "-rev ") + t->first.text() + " " +
             t->second.text() + ")";
    case TermKind::kSwap:
      return head + " " + t->first.text() + " " + t->second.text() + ")";
    case TermKind::kDelta:
    case TermKind::kEps:
    case TermKind::kIncl:
      return head + " " + t->factor.text() + ")";
    case TermKind::kSeq:
    case TermKind::kPar:
      return head + " " + term_to_sexpr(t->left) + " " + term_to_sexpr(t->right) + ")";
  }
  return head + ")";
}

namespace {

class Compiler {
 public:
  explicit Compiler(const SpaceAssignment& sa) : sa_(sa) {}

  Term compile(const Derivation& d) {
    const auto& ante = d.conclusion.antecedent;
    const auto& data = d.data;
    auto span = [&](std::size_t begin, std::size_t end) {
      return interpret_formulas({ante.begin() + static_cast<std::ptrdiff_t>(begin),
                                 ante.begin() + static_cast<std::ptrdiff_t>(end)},
                                sa_);
    };
    auto id_span = [&](std::size_t begin, std::size_t end) { return term_id(span(begin, end)); };
    auto fock_at = [&](std::size_t p) { return interpret_formula(ante[p], sa_).factors.at(0); };
    const std::size_t n = ante.size();

    switch (d.rule) {
      case Rule::kAx:
        return term_id(interpret_formula(d.conclusion.goal, sa_));

      case Rule::kUnderL: {
        const std::size_t p = data[0], g = data[1];
        const Formula& fun = ante[p];
        Term arg = compile(d.premises[0]);
        Term rest = compile(d.premises[1]);
        Term feed = term_par({id_span(0, p - g), arg, id_span(p, n)});
        Term cup = term_par({id_span(0, p - g),
                             term_cup(interpret_formula(fun.argument(), sa_),
                                      interpret_formula(fun.result(), sa_), true),
                             id_span(p + 1, n)});
        return term_seq(term_seq(feed, cup), rest);
      }

      case Rule::kOverL: {
        const std::size_t p = data[0], g = data[1];
        const Formula& fun = ante[p];
        Term arg = compile(d.premises[0]);
        Term rest = compile(d.premises[1]);
        Term feed = term_par({id_span(0, p + 1), arg, id_span(p + 1 + g, n)});
        Term cup = term_par({id_span(0, p),
                             term_cup(interpret_formula(fun.argument(), sa_),
                                      interpret_formula(fun.result(), sa_), false),
                             id_span(p + 1 + g, n)});
        return term_seq(term_seq(feed, cup), rest);
      }

      case Rule::kUnderR: {
        const Shape arg = interpret_formula(d.conclusion.goal.argument(), sa_);
        Term body = compile(d.premises[0]);
        return term_seq(term_par(term_cap(arg), id_span(0, n)),
                        term_par(term_id(arg), body));
      }

      case Rule::kOverR: {
        const Shape arg = interpret_formula(d.conclusion.goal.argument(), sa_);
        Term body = compile(d.premises[0]);
        Term opened = term_par(term_cap(arg), id_span(0, n));
        Term moved = term_par(term_id(arg), term_swap(arg, span(0, n)));
        return term_seq(term_seq(opened, moved), term_par(term_id(arg), body));
      }

      case Rule::kBangL: {
        const std::size_t p = data[0];
        return term_seq(term_par({id_span(0, p), term_eps(fock_at(p)), id_span(p + 1, n)}),
                        compile(d.premises[0]));
      }

      case Rule::kBangR: {
        const Factor fock = interpret_formula(d.conclusion.goal, sa_).factors.at(0);
        return term_seq(compile(d.premises[0]), term_incl(fock));
      }

      case Rule::kContr: {
        const std::size_t p = data[0];
        return term_seq(term_par({id_span(0, p), term_delta(fock_at(p)), id_span(p + 1, n)}),
                        compile(d.premises[0]));
      }

      case Rule::kPerm2: {
        const std::size_t i = data[0], g = data[1];
        Term swap = term_swap(span(i, i + 1), span(i + 1, i + g + 1));
        return term_seq(term_par({id_span(0, i), swap, id_span(i + g + 1, n)}),
                        compile(d.premises[0]));
      }

      case Rule::kPerm1: {
        const std::size_t i = data[0], g = data[1];
        Term swap = term_swap(span(i, i + g), span(i + g, i + g + 1));
        return term_seq(term_par({id_span(0, i), swap, id_span(i + g + 1, n)}),
                        compile(d.premises[0]));
      }

      case Rule::kProdL:
        return compile(d.premises[0]);

      case Rule::kProdR:
        return term_par(compile(d.premises[0]), compile(d.premises[1]));
    }
    throw std::invalid_argument("unknown rule");
  }

 private:
  const SpaceAssignment& sa_;
};

}  // namespace

Diagram compile(const Derivation& d, const SpaceAssignment& sa) {
  sa.validate();
  const CheckResult check = check_derivation(d);
  if (!check.ok) throw std::invalid_argument("ill-formed derivation: " + check.reason);
  Diagram out;
  out.term = Compiler(sa).compile(d);
  for (const auto& f : d.conclusion.antecedent) out.inputs.push_back(interpret_formula(f, sa));
  out.output = interpret_formula(d.conclusion.goal, sa);
  if (!(out.term->input == interpret_formulas(d.conclusion.antecedent, sa)) ||
      !(out.term->output == out.output)) {
    throw ShapeError("compiled term has shape " + out.term->input.text() + " -> " +
                     out.term->output.text());
  }
  return out;
}

}  // namespace bangl
