#include "iclsc/solve.hpp"

namespace icl {

Evaluator::Evaluator(const GroundContext& ground, ChoiceOracle* oracle)
    : ground_(ground), oracle_(oracle), memo_(ground.atomCount(), 0) {}

bool Evaluator::truth(const Atom& atom) {
  int id = ground_.idOf(atom);
  if (id < 0) {
    // Never grounded: not derivable and not an atomic choice.
    if (!atom.ground())
      throw NotGroundError("query atom " + atom.toString() + " is not ground");
    return false;
  }
  if (memo_.size() < ground_.atomCount()) memo_.resize(ground_.atomCount(), 0);
  return truthById(id);
}

bool Evaluator::truthById(int id) {
  if (const ChoiceMatch* match = ground_.choiceById(id)) {
    queried_.insert(match->key);
    if (!oracle_) return false;
    return oracle_->choiceValue(ground_.atomById(id), *match);
  }
  char state = memo_[static_cast<std::size_t>(id)];
  if (state == 3) {
    std::string name = ground_.atomById(id).toString();
    throw CycleError("cyclic evaluation of " + name, {name});
  }
  if (state) return state == 2;
  memo_[static_cast<std::size_t>(id)] = 3;
  bool value = false;
  for (const auto& rule : ground_.rulesById(id)) {
    bool bodyTrue = true;
    for (std::uint32_t lit : rule.body) {
      bool t = truthById(static_cast<int>(lit >> 1));
      if (t == static_cast<bool>(lit & 1u)) {
        bodyTrue = false;
        break;
      }
    }
    if (bodyTrue) {
      value = true;
      break;
    }
  }
  memo_[static_cast<std::size_t>(id)] = value ? 2 : 1;
  return value;
}

bool Evaluator::holds(const Formula& goal) {
  switch (goal.kind()) {
    case Formula::Kind::Atom:
      return truth(goal.atomValue());
    case Formula::Kind::And:
      return holds(goal.left()) && holds(goal.right());
    case Formula::Kind::Or:
      return holds(goal.left()) || holds(goal.right());
    case Formula::Kind::Not:
      return !holds(goal.child());
  }
  return false;
}

namespace {

/// Evaluation over a plain ground program with an assumed-atom set.
class ProgramEvaluator {
 public:
  ProgramEvaluator(const Program& program, const std::unordered_set<Atom>& assumed)
      : program_(program), assumed_(assumed) {}

  bool truth(const Atom& atom) {
    if (!atom.ground())
      throw NotGroundError("query atom " + atom.toString() + " is not ground");
    if (assumed_.count(atom)) return true;
    auto it = memo_.find(atom);
    if (it != memo_.end()) {
      if (it->second == 2)
        throw CycleError("cyclic evaluation of " + atom.toString(), {atom.toString()});
      return it->second == 1;
    }
    memo_[atom] = 2;
    bool value = false;
    for (std::size_t idx : program_.clausesFor(atom.pred)) {
      const Clause& clause = program_.clauses[idx];
      if (clause.head != atom) continue;
      bool bodyTrue = true;
      for (const auto& lit : clause.body) {
        bool t = false;
        switch (lit.kind) {
          case Literal::Kind::Pos:
            t = truth(lit.atom);
            break;
          case Literal::Kind::Neg:
            t = !truth(lit.atom);
            break;
          case Literal::Kind::Neq:
            t = evalArith(lit.lhs) != evalArith(lit.rhs);
            break;
          case Literal::Kind::Is:
            t = evalArith(lit.lhs) == evalArith(lit.rhs);
            break;
        }
        if (!t) {
          bodyTrue = false;
          break;
        }
      }
      if (bodyTrue) {
        value = true;
        break;
      }
    }
    memo_[atom] = value ? 1 : 0;
    return value;
  }

  bool holds(const Formula& goal) {
    switch (goal.kind()) {
      case Formula::Kind::Atom:
        return truth(goal.atomValue());
      case Formula::Kind::And:
        return holds(goal.left()) && holds(goal.right());
      case Formula::Kind::Or:
        return holds(goal.left()) || holds(goal.right());
      case Formula::Kind::Not:
        return !holds(goal.child());
    }
    return false;
  }

 private:
  const Program& program_;
  const std::unordered_set<Atom>& assumed_;
  std::unordered_map<Atom, char> memo_;
};

}  // namespace

bool holds(const Program& groundProgram, const std::unordered_set<Atom>& assumed,
           const Formula& goal) {
  ProgramEvaluator eval(groundProgram, assumed);
  return eval.holds(goal);
}

bool TotalChoiceOracle::choiceValue(const Atom& atom, const ChoiceMatch& match) {
  (void)atom;
  auto selected = tc_.selected(match.key);
  if (!selected) throw NeedChoice{match.key};
  return *selected == match.member;
}

}  // namespace icl
