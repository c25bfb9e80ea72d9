#include "iclsc/logic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace icl {

std::string Literal::toString() const {
  switch (kind) {
    case Kind::Pos:
      return atom.toString();
    case Kind::Neg:
      return "~" + atom.toString();
    case Kind::Neq:
      return lhs.toString() + " \\= " + rhs.toString();
    case Kind::Is:
      return lhs.toString() + " is " + rhs.toString();
  }
  return "?";
}

std::string Clause::toString() const {
  if (body.empty()) return head.toString() + ".";
  std::ostringstream out;
  out << head.toString() << " <- ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out << " & ";
    out << body[i].toString();
  }
  out << ".";
  return out.str();
}

void Program::add(Clause clause) {
  index_[clause.head.pred].push_back(clauses.size());
  clauses.push_back(std::move(clause));
}

const std::vector<std::size_t>& Program::clausesFor(const std::string& pred) const {
  auto it = index_.find(pred);
  return it == index_.end() ? empty_ : it->second;
}

std::string Program::toString() const {
  std::ostringstream out;
  for (const auto& c : clauses) out << c.toString() << "\n";
  return out.str();
}

namespace {

void collectAtomVars(const Atom& atom, std::vector<std::string>& out) {
  for (const auto& t : atom.args) collectVars(t, out);
}

}  // namespace

std::vector<std::string> rangeRestrictionViolations(const Clause& clause) {
  std::vector<std::string> violations;
  std::vector<std::string> bound;
  collectAtomVars(clause.head, bound);
  auto isBound = [&bound](const std::string& v) {
    return std::find(bound.begin(), bound.end(), v) != bound.end();
  };
  auto check = [&](const std::vector<std::string>& vars, const std::string& where) {
    for (const auto& v : vars)
      if (!isBound(v))
        violations.push_back("variable " + v + " in " + where +
                             " is not bound by the head or an earlier positive literal");
  };
  // Head arithmetic must be computable once the body is solved; defer that
  // check until all body positives are known.
  for (const auto& lit : clause.body) {
    std::vector<std::string> vars;
    switch (lit.kind) {
      case Literal::Kind::Pos:
        collectAtomVars(lit.atom, vars);
        for (const auto& v : vars)
          if (!isBound(v)) bound.push_back(v);
        break;
      case Literal::Kind::Neg:
        collectAtomVars(lit.atom, vars);
        check(vars, "~" + lit.atom.toString());
        break;
      case Literal::Kind::Neq:
        collectVars(lit.lhs, vars);
        collectVars(lit.rhs, vars);
        check(vars, lit.lhs.toString() + " \\= " + lit.rhs.toString());
        break;
      case Literal::Kind::Is: {
        collectVars(lit.rhs, vars);
        check(vars, "arithmetic " + lit.rhs.toString());
        std::vector<std::string> lhsVars;
        collectVars(lit.lhs, lhsVars);
        for (const auto& v : lhsVars)
          if (!isBound(v)) bound.push_back(v);
        break;
      }
    }
  }
  // Arithmetic expressions inside the head.
  std::vector<std::string> headArithVars;
  std::function<void(const Term&)> scanHead = [&](const Term& t) {
    if (t.kind() == Term::Kind::App) {
      if (isArithFunctor(t.name(), t.args().size()))
        collectVars(t, headArithVars);
      else
        for (const auto& a : t.args()) scanHead(a);
    }
  };
  for (const auto& a : clause.head.args) scanHead(a);
  check(headArithVars, "head arithmetic of " + clause.head.toString());
  return violations;
}

Formula Formula::atom(icl::Atom a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->atom = std::move(a);
  return Formula(std::move(node));
}

Formula Formula::conj(Formula l, Formula r) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->children = {std::move(l), std::move(r)};
  return Formula(std::move(node));
}

Formula Formula::disj(Formula l, Formula r) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->children = {std::move(l), std::move(r)};
  return Formula(std::move(node));
}

Formula Formula::neg(Formula f) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->children = {std::move(f)};
  return Formula(std::move(node));
}

void Formula::collectAtoms(std::vector<icl::Atom>& out) const {
  if (node_->kind == Kind::Atom) {
    out.push_back(node_->atom);
    return;
  }
  for (const auto& c : node_->children) c.collectAtoms(out);
}

std::string Formula::toString() const {
  switch (node_->kind) {
    case Kind::Atom:
      return node_->atom.toString();
    case Kind::And:
      return "(" + left().toString() + " & " + right().toString() + ")";
    case Kind::Or:
      return "(" + left().toString() + " | " + right().toString() + ")";
    case Kind::Not:
      return "~" + child().toString();
  }
  return "?";
}

}  // namespace icl
