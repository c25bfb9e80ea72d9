#pragma once

#include <functional>
#include <memory>

#include "iclsc/choice.hpp"

namespace icl {

class LoopBoundError : public std::runtime_error {
 public:
  LoopBoundError(const std::string& what, Term situation)
      : std::runtime_error(what), situation(std::move(situation)) {}
  Term situation;
};

/// Conditional plan: skip, a primitive action, a sequence, a branch on an
/// observable, or a bounded while loop.
class Plan {
 public:
  enum class Kind { Skip, Primitive, Seq, IfThenElse, While };

  static Plan skip();
  static Plan primitive(Term action);
  static Plan seq(Plan first, Plan rest);
  static Plan ifThenElse(Term condition, Plan thenPlan, Plan elsePlan);
  static Plan whileLoop(Term condition, Plan body, int bound);

  Kind kind() const { return node_->kind; }
  const Term& action() const { return node_->term; }
  const Term& condition() const { return node_->term; }
  const Plan& first() const { return node_->children[0]; }
  const Plan& rest() const { return node_->children[1]; }
  const Plan& thenPlan() const { return node_->children[0]; }
  const Plan& elsePlan() const { return node_->children[1]; }
  const Plan& body() const { return node_->children[0]; }
  int bound() const { return node_->bound; }

  bool operator==(const Plan& other) const;
  bool operator!=(const Plan& other) const { return !(*this == other); }
  std::string toString() const;

 private:
  struct Node {
    Kind kind;
    Term term = s0();
    std::vector<Plan> children;
    int bound = 0;
  };
  explicit Plan(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Answers sense queries for one world.
using WorldOracle = std::function<bool(const Term& condition, const Term& situation)>;

/// The situation reached by running `plan` in the world described by the
/// oracle. Throws LoopBoundError when a while condition is still true after
/// the loop's iteration bound.
Term trans(const Plan& plan, const WorldOracle& world, const Term& situation);

struct BranchOutcome {
  Term condition;
  Term situation;
  bool value = false;
};

/// One root-to-leaf path of the plan's branching structure.
struct PlanBranch {
  std::vector<BranchOutcome> outcomes;
  Term finalSituation = s0();
  int actionCount = 0;
  bool overflow = false;  // while bound exhausted with the condition still true
};

std::vector<PlanBranch> branchProfile(const Plan& plan, const Term& start = s0());

/// Number of primitive actions on the deepest branch.
int maxBranchDepth(const Plan& plan);

/// Checks actions against A and conditions against O.
std::vector<std::string> validatePlan(const Theory& theory, const Plan& plan);

}  // namespace icl
