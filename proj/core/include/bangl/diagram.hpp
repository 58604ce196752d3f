#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "bangl/derivation.hpp"
#include "bangl/shape.hpp"

namespace bangl {

enum class TermKind { kId, kCup, kCap, kDelta, kEps, kIncl, kSwap, kSeq, kPar };

struct DiagramTerm;
using Term = std::shared_ptr<const DiagramTerm>;

/// Node of a linear-map expression. Wires are Shape factors.
///
///   Id(X)              X -> X
///   Cup(A, B, first)   A A B -> B  when first, else A B A -> B
///   Cap(A)             () -> A A
///   Delta(F)           F -> F F
///   Eps(F)             F -> inner(F)
///   Incl(F)            inner(F) -> F
///   Swap(X, Y)         X Y -> Y X
///   Seq(s, t)          t after s
///   Par(s, t)          s beside t
struct DiagramTerm {
  TermKind kind = TermKind::kId;
  Shape input;
  Shape output;
  // Id: the shape. Cup: argument, result. Cap: the shape. Swap: X, Y.
  Shape first;
  Shape second;
  bool arg_first = true;
  // Delta, Eps, Incl.
  Factor factor;
  Term left;
  Term right;
};

Term term_id(Shape shape);
Term term_cup(Shape argument, Shape result, bool arg_first);
Term term_cap(Shape shape);
Term term_delta(Factor fock);
Term term_eps(Factor fock);
Term term_incl(Factor fock);
Term term_swap(Shape first, Shape second);
// Throws ShapeError when s's output is not t's input. Identities are dropped.
Term term_seq(Term s, Term t);
Term term_par(Term s, Term t);
Term term_par(std::vector<Term> terms);

std::size_t count_nodes(const Term& t, TermKind kind);
std::string term_kind_name(TermKind kind);
// "(seq (par (id [N]) (cup [N] [S])) …)"
std::string term_to_sexpr(const Term& t);

struct Diagram {
  Term term;
  // One shape per antecedent formula of the compiled conclusion.
  std::vector<Shape> inputs;
  Shape output;
};

// Throws std::invalid_argument when the derivation does not check.
Diagram compile(const Derivation& d, const SpaceAssignment& sa);

}  // namespace bangl
