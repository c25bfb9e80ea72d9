#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "iclsc/term.hpp"

namespace icl {

class NotGroundError : public std::runtime_error {
 public:
  explicit NotGroundError(const std::string& what) : std::runtime_error(what) {}
};

class CycleError : public std::runtime_error {
 public:
  CycleError(const std::string& what, std::vector<std::string> cycle)
      : std::runtime_error(what), cycle(std::move(cycle)) {}
  std::vector<std::string> cycle;
};

class HorizonError : public std::runtime_error {
 public:
  explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

class NonGroundableClauseError : public std::runtime_error {
 public:
  explicit NonGroundableClauseError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Body literal: positive atom, negation-as-failure atom, ground disequality
/// or an arithmetic evaluation `Result is Expr`.
struct Literal {
  enum class Kind { Pos, Neg, Neq, Is };
  Kind kind;
  Atom atom;      // Pos, Neg
  Term lhs, rhs;  // Neq (both sides), Is (lhs result, rhs expression)

  static Literal pos(Atom a) { return {Kind::Pos, std::move(a), s0(), s0()}; }
  static Literal neg(Atom a) { return {Kind::Neg, std::move(a), s0(), s0()}; }
  static Literal neq(Term l, Term r) {
    return {Kind::Neq, Atom{}, std::move(l), std::move(r)};
  }
  static Literal is(Term l, Term r) {
    return {Kind::Is, Atom{}, std::move(l), std::move(r)};
  }
  std::string toString() const;
};

struct Clause {
  Atom head;
  std::vector<Literal> body;
  std::string toString() const;
};

struct Program {
  std::vector<Clause> clauses;

  void add(Clause clause);
  /// Clause indices by head predicate name, in declaration order.
  const std::vector<std::size_t>& clausesFor(const std::string& pred) const;
  std::string toString() const;

 private:
  std::map<std::string, std::vector<std::size_t>> index_;
  std::vector<std::size_t> empty_;
};

/// Returns an error description when `clause` violates range restriction:
/// every variable in the head, in a negated literal, in a disequality or in
/// an arithmetic expression must occur in an earlier positive body literal
/// or in the head.
std::vector<std::string> rangeRestrictionViolations(const Clause& clause);

/// Propositional combination of ground atoms (the query language).
class Formula {
 public:
  enum class Kind { Atom, And, Or, Not };

  static Formula atom(icl::Atom a);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula neg(Formula f);

  Kind kind() const { return node_->kind; }
  const icl::Atom& atomValue() const { return node_->atom; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  const Formula& child() const { return node_->children[0]; }
  void collectAtoms(std::vector<icl::Atom>& out) const;
  std::string toString() const;

 private:
  struct Node {
    Kind kind;
    icl::Atom atom;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace icl
