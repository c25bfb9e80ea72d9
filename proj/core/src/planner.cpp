#include "iclsc/planner.hpp"

#include <sstream>
#include <unordered_map>

namespace icl {

namespace {

using PlanSink = std::function<bool(const Plan&)>;

bool generate(const PlanSpace& space, int depth, int nesting,
              const std::vector<bool>& eligible, const PlanSink& fn) {
  if (!fn(Plan::skip())) return false;
  if (depth > 0) {
    std::vector<bool> all(space.observables.size(), true);
    for (const auto& action : space.actions) {
      bool more = generate(space, depth - 1, nesting, all, [&](const Plan& rest) {
        return fn(Plan::seq(Plan::primitive(action), rest));
      });
      if (!more) return false;
    }
  }
  if (nesting > 0) {
    for (std::size_t i = 0; i < space.observables.size(); ++i) {
      if (!eligible[i]) continue;
      std::vector<bool> rest = eligible;
      rest[i] = false;
      bool more = generate(space, depth, nesting - 1, rest, [&](const Plan& thenPlan) {
        return generate(space, depth, nesting - 1, rest, [&](const Plan& elsePlan) {
          return fn(Plan::ifThenElse(space.observables[i], thenPlan, elsePlan));
        });
      });
      if (!more) return false;
    }
  }
  return true;
}

}  // namespace

void forEachPlan(const PlanSpace& space, const PlanSink& fn) {
  std::vector<bool> all(space.observables.size(), true);
  generate(space, space.depth, space.nesting, all, fn);
}

std::vector<Plan> enumeratePlans(const PlanSpace& space) {
  std::vector<Plan> out;
  forEachPlan(space, [&](const Plan& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

namespace {

/// Probability mass over partial choices at one plan position.
using Belief = std::vector<std::pair<TotalChoice, Rational>>;

Rational memberProbability(const Theory& theory, const AltKey& key, int member) {
  return instantiate(theory.schemas[key.schema], key.situation)[member].second;
}

class BestPlanSearch {
 public:
  BestPlanSearch(EvalSession& session, const PlanSpace& space)
      : session_(session), theory_(session.theory()), space_(space) {}

  BestPlanResult run() {
    std::vector<bool> all(space_.observables.size(), true);
    return best(space_.depth, space_.nesting, all, s0(),
                Belief{{TotalChoice{}, Rational(1)}});
  }

 private:
  /// Sum of mass * utility over the worlds the belief covers.
  Rational utilityMass(const Belief& belief, const Term& situation) {
    Rational total = 0;
    for (const auto& element : belief) {
      std::vector<std::pair<TotalChoice, Rational>> pending{element};
      while (!pending.empty()) {
        auto [tc, mass] = std::move(pending.back());
        pending.pop_back();
        try {
          total += mass * session_.utilityOf(tc, situation);
        } catch (const NeedChoice& need) {
          int members =
              static_cast<int>(theory_.schemas[need.key.schema].members.size());
          for (int m = members - 1; m >= 0; --m)
            pending.emplace_back(tc.with(need.key, m),
                                 mass * memberProbability(theory_, need.key, m));
        }
      }
    }
    return total;
  }

  std::pair<Belief, Belief> splitBelief(const Belief& belief, const Term& condition,
                                        const Term& situation) {
    std::pair<Belief, Belief> out;
    for (const auto& element : belief) {
      std::vector<std::pair<TotalChoice, Rational>> pending{element};
      while (!pending.empty()) {
        auto [tc, mass] = std::move(pending.back());
        pending.pop_back();
        try {
          bool value = session_.senseValue(tc, condition, situation);
          (value ? out.first : out.second).emplace_back(tc, mass);
        } catch (const NeedChoice& need) {
          int members =
              static_cast<int>(theory_.schemas[need.key.schema].members.size());
          for (int m = members - 1; m >= 0; --m)
            pending.emplace_back(tc.with(need.key, m),
                                 mass * memberProbability(theory_, need.key, m));
        }
      }
    }
    return out;
  }

  std::string stateKey(int depth, int nesting, const std::vector<bool>& eligible,
                       const Term& situation, const Belief& belief) {
    std::ostringstream key;
    key << depth << '|' << nesting << '|';
    for (bool b : eligible) key << (b ? '1' : '0');
    key << '|' << situation.toString() << '|';
    for (const auto& [tc, mass] : belief) {
      for (const auto& [alt, member] : tc.selections())
        key << alt.toString() << '=' << member << ',';
      key << '#' << rationalToString(mass) << ';';
    }
    return key.str();
  }

  BestPlanResult best(int depth, int nesting, const std::vector<bool>& eligible,
                      const Term& situation, const Belief& belief) {
    std::string key = stateKey(depth, nesting, eligible, situation, belief);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    BestPlanResult result{Plan::skip(), utilityMass(belief, situation)};
    if (depth > 0) {
      std::vector<bool> all(space_.observables.size(), true);
      for (const auto& action : space_.actions) {
        BestPlanResult sub =
            best(depth - 1, nesting, all, doTerm(action, situation), belief);
        if (sub.expectedUtility > result.expectedUtility) {
          result.plan = Plan::seq(Plan::primitive(action), sub.plan);
          result.expectedUtility = sub.expectedUtility;
        }
      }
    }
    if (nesting > 0) {
      for (std::size_t i = 0; i < space_.observables.size(); ++i) {
        if (!eligible[i]) continue;
        auto [trueBelief, falseBelief] =
            splitBelief(belief, space_.observables[i], situation);
        std::vector<bool> rest = eligible;
        rest[i] = false;
        BestPlanResult thenBest =
            best(depth, nesting - 1, rest, situation, trueBelief);
        BestPlanResult elseBest =
            best(depth, nesting - 1, rest, situation, falseBelief);
        Rational value = thenBest.expectedUtility + elseBest.expectedUtility;
        if (value > result.expectedUtility) {
          result.plan = Plan::ifThenElse(space_.observables[i], thenBest.plan,
                                         elseBest.plan);
          result.expectedUtility = value;
        }
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  EvalSession& session_;
  const Theory& theory_;
  const PlanSpace& space_;
  std::unordered_map<std::string, BestPlanResult> memo_;
};

}  // namespace

BestPlanResult bestPlan(EvalSession& session, const PlanSpace& space) {
  return BestPlanSearch(session, space).run();
}

BestPlanResult bestPlan(const Theory& theory, const PlanSpace& space) {
  EvalSession session(theory, space.depth);
  return bestPlan(session, space);
}

}  // namespace icl
