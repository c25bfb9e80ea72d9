#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "iclsc/rational.hpp"

namespace icl {

class ArithmeticError : public std::runtime_error {
 public:
  explicit ArithmeticError(const std::string& what) : std::runtime_error(what) {}
};

/// Immutable first-order term: variable, symbol, exact rational or compound.
/// Situations are the terms built from the symbol `s0` and the binary
/// functor `do`.
class Term {
 public:
  enum class Kind { Var, Sym, Num, App };

  static Term var(std::string name);
  static Term sym(std::string name);
  static Term num(Rational value);
  static Term app(std::string functor, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool isVar() const { return node_->kind == Kind::Var; }
  bool isNum() const { return node_->kind == Kind::Num; }
  const std::string& name() const { return node_->name; }
  const Rational& value() const { return node_->value; }
  const std::vector<Term>& args() const { return node_->args; }

  bool ground() const;
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  std::size_t hash() const { return node_->hash; }

  std::string toString() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    Rational value;
    std::vector<Term> args;
    std::size_t hash = 0;
    bool ground = false;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Term s0();
Term doTerm(const Term& action, const Term& situation);

/// do-depth of a situation term; -1 if the term is not a situation.
int situationDepth(const Term& term);

/// Deepest situation subterm occurring anywhere inside `term` (0 if none).
int maxSituationDepth(const Term& term);

struct Atom {
  std::string pred;
  std::vector<Term> args;

  bool ground() const;
  bool operator==(const Atom& other) const;
  bool operator!=(const Atom& other) const { return !(*this == other); }
  std::string toString() const;
  Term asTerm() const;
};

Atom atomFromTerm(const Term& term);

using Subst = std::unordered_map<std::string, Term>;

Term walk(const Term& term, const Subst& subst);
Term applySubst(const Term& term, const Subst& subst);
Atom applySubst(const Atom& atom, const Subst& subst);

/// Extends `subst` so that a == b; returns false (subst unspecified) on clash.
bool unify(const Term& a, const Term& b, Subst& subst);
bool unify(const Atom& a, const Atom& b, Subst& subst);

bool isArithFunctor(const std::string& functor, std::size_t arity);

/// Reduces ground arithmetic applications (+, -, *, /) to numbers, leaving
/// other structure untouched. Throws ArithmeticError on non-numeric operands.
Term evalArith(const Term& term);

void collectVars(const Term& term, std::vector<std::string>& out);

}  // namespace icl

template <>
struct std::hash<icl::Term> {
  std::size_t operator()(const icl::Term& t) const { return t.hash(); }
};

template <>
struct std::hash<icl::Atom> {
  std::size_t operator()(const icl::Atom& a) const {
    std::size_t h = std::hash<std::string>{}(a.pred);
    for (const auto& t : a.args) h = h * 1000003u + t.hash();
    return h;
  }
};
