#include "iclsc/acyclic.hpp"

#include <algorithm>
#include <functional>

namespace icl {

namespace {

bool situationLike(const Term& t) {
  if (t.isVar()) return true;
  return situationDepth(t) >= 0 ||
         (t.kind() == Term::Kind::App && t.name() == "do" && t.args().size() == 2);
}

}  // namespace

AcyclicityResult checkAcyclic(const Program& program, int horizon,
                              const std::vector<Term>& groundActions,
                              const Theory* theory) {
  AcyclicityResult result;
  // Representative situations: s0 plus single-action chains to the horizon.
  std::vector<Term> situations{s0()};
  for (const auto& action : groundActions) {
    if (!action.ground()) continue;
    Term s = s0();
    for (int d = 0; d < horizon; ++d) {
      s = doTerm(action, s);
      situations.push_back(s);
    }
  }
  GroundContext ctx(program, theory, horizon);
  long fresh = 0;
  try {
    for (const auto& clause : program.clauses) {
      std::vector<std::string> vars;
      for (const auto& a : clause.head.args) collectVars(a, vars);
      Subst rename;
      for (const auto& v : vars)
        rename.emplace(v, Term::var("_A" + std::to_string(++fresh) + v));
      Atom head = applySubst(clause.head, rename);
      // Arithmetic head arguments become fresh variables; the grounder
      // resolves them per instance.
      for (auto& arg : head.args)
        if (arg.kind() == Term::Kind::App &&
            isArithFunctor(arg.name(), arg.args().size()))
          arg = Term::var("_A" + std::to_string(++fresh) + "val");
      // Open templates (heads that stay non-ground under every situation)
      // cannot be enumerated; they are leaves and are skipped as roots.
      if (!head.args.empty() && situationLike(head.args.back())) {
        for (const auto& s : situations) {
          Subst theta;
          if (!unify(head.args.back(), s, theta)) continue;
          try {
            ctx.ensure(applySubst(head, theta));
          } catch (const NonGroundableClauseError&) {
          }
        }
      } else {
        try {
          ctx.ensure(head);
        } catch (const NonGroundableClauseError&) {
        }
      }
    }
  } catch (const CycleError& e) {
    result.acyclic = false;
    result.cycle = e.cycle;
    return result;
  }

  Program ground = ctx.toProgram();
  std::map<std::string, std::vector<const Clause*>> byHead;
  std::map<std::string, const Atom*> atoms;
  for (const auto& c : ground.clauses) {
    byHead[c.head.toString()].push_back(&c);
    atoms.emplace(c.head.toString(), &c.head);
    for (const auto& l : c.body) atoms.emplace(l.atom.toString(), &l.atom);
  }

  // Longest-path levels via DFS; a back edge is a witness cycle.
  std::map<std::string, int> state;  // 1 in progress, 2 done
  std::vector<std::string> stack;
  std::function<bool(const std::string&)> visit = [&](const std::string& key) {
    auto st = state.find(key);
    if (st != state.end()) {
      if (st->second == 2) return true;
      auto it = std::find(stack.begin(), stack.end(), key);
      result.cycle.assign(it, stack.end());
      result.cycle.push_back(key);
      return false;
    }
    state[key] = 1;
    stack.push_back(key);
    int level = 0;
    auto rules = byHead.find(key);
    if (rules != byHead.end()) {
      for (const auto* c : rules->second)
        for (const auto& l : c->body) {
          if (!visit(l.atom.toString())) return false;
          level = std::max(level, result.levels[l.atom.toString()] + 1);
        }
    }
    result.levels[key] = level;
    state[key] = 2;
    stack.pop_back();
    return true;
  };
  for (const auto& [key, atom] : atoms)
    if (!visit(key)) {
      result.acyclic = false;
      result.levels.clear();
      return result;
    }
  result.acyclic = true;
  return result;
}

namespace {

void harvestConstants(const Term& t, std::vector<Term>& out) {
  if (t.kind() == Term::Kind::Sym || t.kind() == Term::Kind::Num) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  if (t.kind() == Term::Kind::App)
    for (const auto& a : t.args()) harvestConstants(a, out);
}

}  // namespace

AcyclicityResult checkAcyclic(const Theory& theory, int horizon) {
  std::vector<Term> constants;
  for (const auto& clause : theory.facts.clauses) {
    for (const auto& a : clause.head.args) harvestConstants(a, constants);
    for (const auto& lit : clause.body) {
      for (const auto& a : lit.atom.args) harvestConstants(a, constants);
      harvestConstants(lit.lhs, constants);
      harvestConstants(lit.rhs, constants);
    }
  }
  for (const auto& schema : theory.schemas)
    for (const auto& [atom, prob] : schema.members)
      for (const auto& a : atom.args) harvestConstants(a, constants);

  // Sampled instantiations of non-ground action templates keep the check
  // tractable; a handful per template suffices for a structural cycle.
  constexpr std::size_t kMaxPerTemplate = 16;
  std::vector<Term> actions;
  for (const auto& tmpl : theory.actions) {
    if (tmpl.ground()) {
      actions.push_back(tmpl);
      continue;
    }
    std::vector<std::string> vars;
    collectVars(tmpl, vars);
    if (constants.empty()) continue;
    std::vector<std::size_t> index(vars.size(), 0);
    for (std::size_t count = 0; count < kMaxPerTemplate; ++count) {
      Subst theta;
      for (std::size_t v = 0; v < vars.size(); ++v)
        theta.emplace(vars[v], constants[index[v]]);
      actions.push_back(applySubst(tmpl, theta));
      std::size_t v = 0;
      for (; v < index.size(); ++v) {
        if (++index[v] < constants.size()) break;
        index[v] = 0;
      }
      if (v == index.size()) break;
    }
  }
  return checkAcyclic(theory.facts, horizon, actions, &theory);
}

}  // namespace icl
