#include "iclsc/ground.hpp"

#include <algorithm>
#include <sstream>

namespace icl {

namespace {

void canonTerm(const Term& t, std::map<std::string, int>& vars, std::ostream& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto [it, inserted] = vars.emplace(t.name(), static_cast<int>(vars.size()));
      out << "_" << it->second;
      break;
    }
    case Term::Kind::Sym:
      out << t.name();
      break;
    case Term::Kind::Num:
      out << rationalToString(t.value());
      break;
    case Term::Kind::App:
      out << t.name() << "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out << ",";
        canonTerm(t.args()[i], vars, out);
      }
      out << ")";
      break;
  }
}

Atom evalArithAtom(const Atom& atom) {
  Atom out{atom.pred, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) out.args.push_back(evalArith(a));
  return out;
}

/// Evaluates top-level arithmetic in arguments where the operands are
/// already numbers; leaves anything containing variables alone.
Atom softEvalAtom(const Atom& atom) {
  Atom out{atom.pred, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) {
    if (a.ground()) {
      try {
        out.args.push_back(evalArith(a));
        continue;
      } catch (const ArithmeticError&) {
      }
    }
    out.args.push_back(a);
  }
  return out;
}

}  // namespace

GroundContext::GroundContext(const Program& program, const Theory* theory,
                             int horizon)
    : program_(program), theory_(theory), horizon_(horizon) {}

std::string GroundContext::canon(const Atom& pattern) const {
  std::ostringstream out;
  std::map<std::string, int> vars;
  out << pattern.pred << "/";
  for (const auto& a : pattern.args) {
    canonTerm(a, vars, out);
    out << ";";
  }
  return out.str();
}

Clause GroundContext::renameClause(const Clause& clause) {
  std::vector<std::string> vars;
  for (const auto& a : clause.head.args) collectVars(a, vars);
  for (const auto& lit : clause.body) {
    for (const auto& a : lit.atom.args) collectVars(a, vars);
    collectVars(lit.lhs, vars);
    collectVars(lit.rhs, vars);
  }
  Subst rename;
  ++freshCounter_;
  for (const auto& v : vars)
    rename.emplace(v, Term::var("_R" + std::to_string(freshCounter_) + "_" + v));
  Clause out;
  out.head = applySubst(clause.head, rename);
  for (const auto& lit : clause.body) {
    Literal l = lit;
    l.atom = applySubst(lit.atom, rename);
    l.lhs = applySubst(lit.lhs, rename);
    l.rhs = applySubst(lit.rhs, rename);
    out.body.push_back(std::move(l));
  }
  return out;
}

void GroundContext::ensure(const Atom& pattern) {
  requestPattern(pattern, nullptr);
  drain();
}

void GroundContext::requestPattern(const Atom& pattern, std::set<std::string>* joined) {
  if (joined) joined->insert(pattern.pred);
  std::string key = canon(pattern);
  if (done_.count(key) || queued_.count(key)) return;
  patterns_.emplace(key, pattern);
  worklist_.push_back(key);
  queued_.insert(key);
}

void GroundContext::drain() {
  while (!worklist_.empty()) {
    std::string key = worklist_.front();
    worklist_.pop_front();
    queued_.erase(key);
    if (done_.count(key)) continue;
    Atom pattern = patterns_.at(key);
    std::set<std::string> joined;
    try {
      process(pattern, &joined);
    } catch (const NonGroundableClauseError&) {
      // Keep the context consistent for later queries; the caller decides
      // whether the failure matters.
      done_[key] = DoneInfo{pattern, joined};
      throw;
    }
    done_[key] = DoneInfo{pattern, joined};
    // New candidates invalidate completed patterns that joined on them.
    while (!dirtyPreds_.empty()) {
      std::set<std::string> dirty;
      dirty.swap(dirtyPreds_);
      std::vector<std::string> requeue;
      for (const auto& [dkey, info] : done_)
        for (const auto& p : dirty)
          if (info.joinedPreds.count(p)) {
            requeue.push_back(dkey);
            break;
          }
      for (const auto& dkey : requeue) {
        done_.erase(dkey);
        if (!queued_.count(dkey)) {
          worklist_.push_back(dkey);
          queued_.insert(dkey);
        }
      }
    }
  }
}

void GroundContext::addChoiceCandidates(const Atom& pattern) {
  if (!theory_) return;
  for (auto& match : matchChoices(*theory_, pattern)) {
    if (candidateSet_.insert(match.atom).second) {
      candidatesByPred_[match.atom.pred].push_back(match.atom);
      dirtyPreds_.insert(match.atom.pred);
      ++revision_;
    }
    auto [it, inserted] = choiceAtoms_.emplace(match.atom, match);
    if (inserted) choiceById_[static_cast<std::size_t>(intern(match.atom))] = &it->second;
  }
}

int GroundContext::intern(const Atom& atom) {
  auto it = ids_.find(atom);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(atomById_.size());
  ids_.emplace(atom, id);
  atomById_.push_back(atom);
  choiceById_.push_back(nullptr);
  rulesById_.emplace_back();
  return id;
}

int GroundContext::idOf(const Atom& atom) const {
  auto it = ids_.find(atom);
  return it == ids_.end() ? -1 : it->second;
}

void GroundContext::process(const Atom& pattern, std::set<std::string>* joined) {
  std::string key = canon(pattern);
  if (std::find(inProgress_.begin(), inProgress_.end(), key) != inProgress_.end()) {
    std::vector<std::string> cycle;
    bool seen = false;
    for (const auto& k : inProgress_) {
      if (k == key) seen = true;
      if (seen) cycle.push_back(patterns_.count(k) ? patterns_.at(k).toString() : k);
    }
    cycle.push_back(pattern.toString());
    throw CycleError("cyclic dependency while grounding " + pattern.toString(), cycle);
  }
  if (maxSituationDepth(pattern.asTerm()) > horizon_)
    throw HorizonError("grounding " + pattern.toString() +
                       " exceeds situation horizon " + std::to_string(horizon_));
  patterns_.emplace(key, pattern);
  inProgress_.push_back(key);
  try {
    addChoiceCandidates(pattern);
    for (std::size_t idx : program_.clausesFor(pattern.pred)) {
      Clause clause = renameClause(program_.clauses[idx]);
      if (clause.head.args.size() != pattern.args.size()) continue;
      Subst theta;
      std::vector<std::pair<Term, Term>> deferred;
      bool ok = true;
      for (std::size_t i = 0; i < pattern.args.size() && ok; ++i) {
        const Term& headArg = clause.head.args[i];
        if (headArg.kind() == Term::Kind::App &&
            isArithFunctor(headArg.name(), headArg.args().size())) {
          deferred.emplace_back(pattern.args[i], headArg);
        } else {
          ok = unify(headArg, pattern.args[i], theta);
        }
      }
      if (!ok) continue;
      expand(clause, 0, theta, deferred, pattern, joined);
    }
  } catch (...) {
    inProgress_.pop_back();
    throw;
  }
  inProgress_.pop_back();
}

void GroundContext::expand(const Clause& clause, std::size_t index, Subst theta,
                           const std::vector<std::pair<Term, Term>>& deferred,
                           const Atom& pattern, std::set<std::string>* joined) {
  if (index == clause.body.size()) {
    for (const auto& [patArg, expr] : deferred) {
      Term value = evalArith(applySubst(expr, theta));
      Term target = applySubst(patArg, theta);
      if (!target.isVar() && evalArith(target) != value) return;
    }
    Atom head = evalArithAtom(applySubst(clause.head, theta));
    if (!head.ground())
      throw NonGroundableClauseError("clause instance head " + head.toString() +
                                     " is not ground (clause " + clause.toString() +
                                     ")");
    if (maxSituationDepth(head.asTerm()) > horizon_)
      throw HorizonError("clause head " + head.toString() +
                         " exceeds situation horizon");
    GroundClause rule;
    rule.head = head;
    for (const auto& lit : clause.body) {
      if (lit.kind == Literal::Kind::Pos || lit.kind == Literal::Kind::Neg) {
        Atom a = evalArithAtom(applySubst(lit.atom, theta));
        rule.body.push_back(GroundLiteral{lit.kind == Literal::Kind::Pos, std::move(a)});
      }
    }
    addRule(std::move(rule));
    return;
  }
  const Literal& lit = clause.body[index];
  switch (lit.kind) {
    case Literal::Kind::Pos: {
      Atom sub = softEvalAtom(applySubst(lit.atom, theta));
      if (joined) joined->insert(sub.pred);
      processSubpattern(sub);
      for (const auto& cand : candidatesFor(sub)) {
        Subst theta2 = theta;
        if (!unify(sub, cand, theta2)) continue;
        expand(clause, index + 1, std::move(theta2), deferred, pattern, joined);
      }
      return;
    }
    case Literal::Kind::Neg: {
      Atom sub = evalArithAtom(applySubst(lit.atom, theta));
      if (!sub.ground())
        throw NonGroundableClauseError("negated literal ~" + sub.toString() +
                                       " is not ground in " + clause.toString());
      if (joined) joined->insert(sub.pred);
      processSubpattern(sub);
      expand(clause, index + 1, std::move(theta), deferred, pattern, joined);
      return;
    }
    case Literal::Kind::Neq: {
      Term l = evalArith(applySubst(lit.lhs, theta));
      Term r = evalArith(applySubst(lit.rhs, theta));
      if (!l.ground() || !r.ground())
        throw NonGroundableClauseError("disequality " + l.toString() + " \\= " +
                                       r.toString() + " is not ground");
      if (l == r) return;
      expand(clause, index + 1, std::move(theta), deferred, pattern, joined);
      return;
    }
    case Literal::Kind::Is: {
      Term value = evalArith(applySubst(lit.rhs, theta));
      Subst theta2 = theta;
      if (!unify(lit.lhs, value, theta2)) return;
      expand(clause, index + 1, std::move(theta2), deferred, pattern, joined);
      return;
    }
  }
}

void GroundContext::processSubpattern(const Atom& sub) {
  std::string key = canon(sub);
  if (done_.count(key)) return;
  if (std::find(inProgress_.begin(), inProgress_.end(), key) != inProgress_.end()) {
    // The cycle is reported by process() itself.
    process(sub, nullptr);
    return;
  }
  patterns_.emplace(key, sub);
  std::set<std::string> joined;
  process(sub, &joined);
  done_[key] = DoneInfo{sub, std::move(joined)};
}

void GroundContext::addRule(GroundClause rule) {
  std::ostringstream keyOut;
  keyOut << rule.head.toString() << "<-";
  for (const auto& l : rule.body) keyOut << (l.positive ? "" : "~") << l.atom.toString() << "&";
  if (!ruleKeys_.insert(keyOut.str()).second) return;
  if (candidateSet_.insert(rule.head).second) {
    candidatesByPred_[rule.head.pred].push_back(rule.head);
    dirtyPreds_.insert(rule.head.pred);
    ++revision_;
  }
  CompiledRule compiled;
  compiled.body.reserve(rule.body.size());
  for (const auto& l : rule.body)
    compiled.body.push_back((static_cast<std::uint32_t>(intern(l.atom)) << 1) |
                            (l.positive ? 0u : 1u));
  int headId = intern(rule.head);
  rulesById_[static_cast<std::size_t>(headId)].push_back(std::move(compiled));
  rules_[rule.head].push_back(std::move(rule));
}

const std::vector<GroundClause>* GroundContext::rulesFor(const Atom& head) const {
  auto it = rules_.find(head);
  return it == rules_.end() ? nullptr : &it->second;
}

const ChoiceMatch* GroundContext::choiceInfo(const Atom& atom) const {
  auto it = choiceAtoms_.find(atom);
  return it == choiceAtoms_.end() ? nullptr : &it->second;
}

std::vector<Atom> GroundContext::candidatesFor(const Atom& pattern) const {
  std::vector<Atom> out;
  auto it = candidatesByPred_.find(pattern.pred);
  if (it == candidatesByPred_.end()) return out;
  for (const auto& cand : it->second) {
    if (cand.args.size() != pattern.args.size()) continue;
    Subst s;
    if (unify(pattern, cand, s)) out.push_back(cand);
  }
  return out;
}

std::map<AltKey, int> GroundContext::seenAlternatives() const {
  std::map<AltKey, int> out;
  for (const auto& [atom, match] : choiceAtoms_) {
    int members = theory_
        ? static_cast<int>(theory_->schemas[static_cast<std::size_t>(match.key.schema)]
                               .members.size())
        : 0;
    out[match.key] = members;
  }
  return out;
}

Program GroundContext::toProgram() const {
  Program out;
  // Deterministic order: by head string, then rule insertion order.
  std::vector<const GroundClause*> all;
  for (const auto& [head, rules] : rules_)
    for (const auto& r : rules) all.push_back(&r);
  std::stable_sort(all.begin(), all.end(), [](const GroundClause* a, const GroundClause* b) {
    return a->head.toString() < b->head.toString();
  });
  for (const auto* r : all) {
    Clause c;
    c.head = r->head;
    for (const auto& l : r->body)
      c.body.push_back(l.positive ? Literal::pos(l.atom) : Literal::neg(l.atom));
    out.add(std::move(c));
  }
  return out;
}

Program relevantGround(const Program& program, const Formula& goal, int horizon,
                       const Theory* theory) {
  GroundContext ctx(program, theory, horizon);
  std::vector<Atom> atoms;
  goal.collectAtoms(atoms);
  for (const auto& a : atoms) ctx.ensure(a);
  return ctx.toProgram();
}

}  // namespace icl
