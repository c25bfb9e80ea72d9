#pragma once

#include "iclsc/eval.hpp"

namespace icl {

/// Search space for plan enumeration: ground actions and observable
/// conditions considered at each step, a bound on sequence length, and a
/// bound on conditional nesting.
struct PlanSpace {
  std::vector<Term> actions;
  std::vector<Term> observables;
  int depth = 0;
  int nesting = 0;
};

/// All plans of the space in canonical order: skip first, then each action
/// followed by every continuation, then each eligible condition with every
/// pair of sub-plans. Branching consumes one nesting level and a condition
/// is not re-branched on at the same point; both reset after an action.
std::vector<Plan> enumeratePlans(const PlanSpace& space);

/// Streaming variant; return false from `fn` to stop early.
void forEachPlan(const PlanSpace& space, const std::function<bool(const Plan&)>& fn);

struct BestPlanResult {
  Plan plan = Plan::skip();
  Rational expectedUtility;
};

/// Highest expected utility plan in the space; ties go to the plan that
/// enumeratePlans emits first. Computed by expectimax over belief states
/// (plan position plus probability mass over partial choices), which agrees
/// with evaluating every enumerated plan.
BestPlanResult bestPlan(const Theory& theory, const PlanSpace& space);
BestPlanResult bestPlan(EvalSession& session, const PlanSpace& space);

}  // namespace icl
