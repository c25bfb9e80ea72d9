#include "iclsc/term.hpp"

#include <algorithm>
#include <sstream>

namespace icl {

namespace {

std::size_t hashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = std::move(name);
  node->hash = hashCombine(1, std::hash<std::string>{}(node->name));
  node->ground = false;
  return Term(std::move(node));
}

Term Term::sym(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sym;
  node->name = std::move(name);
  node->hash = hashCombine(2, std::hash<std::string>{}(node->name));
  node->ground = true;
  return Term(std::move(node));
}

Term Term::num(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Num;
  node->value = std::move(value);
  node->hash = hashCombine(3, std::hash<std::string>{}(rationalToString(node->value)));
  node->ground = true;
  return Term(std::move(node));
}

Term Term::app(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::App;
  node->name = std::move(functor);
  node->args = std::move(args);
  node->hash = hashCombine(4, std::hash<std::string>{}(node->name));
  node->ground = true;
  for (const auto& a : node->args) {
    node->hash = hashCombine(node->hash, a.hash());
    node->ground = node->ground && a.ground();
  }
  return Term(std::move(node));
}

bool Term::ground() const { return node_->ground; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind || node_->hash != other.node_->hash) return false;
  switch (node_->kind) {
    case Kind::Var:
    case Kind::Sym:
      return node_->name == other.node_->name;
    case Kind::Num:
      return node_->value == other.node_->value;
    case Kind::App:
      if (node_->name != other.node_->name) return false;
      if (node_->args.size() != other.node_->args.size()) return false;
      for (std::size_t i = 0; i < node_->args.size(); ++i)
        if (node_->args[i] != other.node_->args[i]) return false;
      return true;
  }
  return false;
}

std::string Term::toString() const {
  switch (node_->kind) {
    case Kind::Var:
    case Kind::Sym:
      return node_->name;
    case Kind::Num:
      return rationalToString(node_->value);
    case Kind::App: {
      if (isArithFunctor(node_->name, node_->args.size()) && node_->args.size() == 2) {
        return "(" + node_->args[0].toString() + " " + node_->name + " " +
               node_->args[1].toString() + ")";
      }
      std::ostringstream out;
      out << node_->name << "(";
      for (std::size_t i = 0; i < node_->args.size(); ++i) {
        if (i) out << ", ";
        out << node_->args[i].toString();
      }
      out << ")";
      return out.str();
    }
  }
  return "?";
}

Term s0() { return Term::sym("s0"); }

Term doTerm(const Term& action, const Term& situation) {
  return Term::app("do", {action, situation});
}

int situationDepth(const Term& term) {
  if (term.kind() == Term::Kind::Sym && term.name() == "s0") return 0;
  if (term.kind() == Term::Kind::App && term.name() == "do" && term.args().size() == 2) {
    int rest = situationDepth(term.args()[1]);
    return rest < 0 ? -1 : rest + 1;
  }
  return -1;
}

int maxSituationDepth(const Term& term) {
  int d = situationDepth(term);
  if (d >= 0) return d;
  int best = 0;
  if (term.kind() == Term::Kind::App)
    for (const auto& a : term.args()) best = std::max(best, maxSituationDepth(a));
  return best;
}

bool Atom::ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
}

bool Atom::operator==(const Atom& other) const {
  return pred == other.pred && args == other.args;
}

std::string Atom::toString() const {
  if (args.empty()) return pred;
  std::ostringstream out;
  out << pred << "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out << ", ";
    out << args[i].toString();
  }
  out << ")";
  return out.str();
}

Term Atom::asTerm() const {
  if (args.empty()) return Term::sym(pred);
  return Term::app(pred, args);
}

Atom atomFromTerm(const Term& term) {
  if (term.kind() == Term::Kind::Sym) return Atom{term.name(), {}};
  if (term.kind() == Term::Kind::App) return Atom{term.name(), term.args()};
  throw std::runtime_error("not an atom: " + term.toString());
}

Term walk(const Term& term, const Subst& subst) {
  Term t = term;
  while (t.isVar()) {
    auto it = subst.find(t.name());
    if (it == subst.end()) break;
    t = it->second;
  }
  return t;
}

Term applySubst(const Term& term, const Subst& subst) {
  Term t = walk(term, subst);
  if (t.kind() != Term::Kind::App) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(applySubst(a, subst));
    changed = changed || args.back() != a;
  }
  if (!changed) return t;
  return Term::app(t.name(), std::move(args));
}

Atom applySubst(const Atom& atom, const Subst& subst) {
  Atom out{atom.pred, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) out.args.push_back(applySubst(a, subst));
  return out;
}

bool unify(const Term& a, const Term& b, Subst& subst) {
  Term x = walk(a, subst);
  Term y = walk(b, subst);
  if (x.isVar() && y.isVar() && x.name() == y.name()) return true;
  if (x.isVar()) {
    subst.emplace(x.name(), y);
    return true;
  }
  if (y.isVar()) {
    subst.emplace(y.name(), x);
    return true;
  }
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Sym:
      return x.name() == y.name();
    case Term::Kind::Num:
      return x.value() == y.value();
    case Term::Kind::App: {
      if (x.name() != y.name() || x.args().size() != y.args().size()) return false;
      for (std::size_t i = 0; i < x.args().size(); ++i)
        if (!unify(x.args()[i], y.args()[i], subst)) return false;
      return true;
    }
    default:
      return false;
  }
}

bool unify(const Atom& a, const Atom& b, Subst& subst) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify(a.args[i], b.args[i], subst)) return false;
  return true;
}

bool isArithFunctor(const std::string& functor, std::size_t arity) {
  if (arity == 2)
    return functor == "+" || functor == "-" || functor == "*" || functor == "/";
  if (arity == 1) return functor == "-";
  return false;
}

Term evalArith(const Term& term) {
  if (term.kind() != Term::Kind::App) return term;
  std::vector<Term> args;
  args.reserve(term.args().size());
  for (const auto& a : term.args()) args.push_back(evalArith(a));
  if (isArithFunctor(term.name(), args.size())) {
    for (const auto& a : args)
      if (!a.isNum())
        throw ArithmeticError("non-numeric operand in " + term.toString());
    if (args.size() == 1) return Term::num(-args[0].value());
    const Rational& l = args[0].value();
    const Rational& r = args[1].value();
    if (term.name() == "+") return Term::num(l + r);
    if (term.name() == "-") return Term::num(l - r);
    if (term.name() == "*") return Term::num(l * r);
    if (r == 0) throw ArithmeticError("division by zero in " + term.toString());
    return Term::num(l / r);
  }
  return Term::app(term.name(), std::move(args));
}

void collectVars(const Term& term, std::vector<std::string>& out) {
  if (term.isVar()) {
    if (std::find(out.begin(), out.end(), term.name()) == out.end())
      out.push_back(term.name());
    return;
  }
  if (term.kind() == Term::Kind::App)
    for (const auto& a : term.args()) collectVars(a, out);
}

}  // namespace icl
