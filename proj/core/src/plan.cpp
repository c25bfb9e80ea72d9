#include "iclsc/plan.hpp"

#include <algorithm>
#include <sstream>

namespace icl {

Plan Plan::skip() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Skip;
  return Plan(std::move(node));
}

Plan Plan::primitive(Term action) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Primitive;
  node->term = std::move(action);
  return Plan(std::move(node));
}

Plan Plan::seq(Plan first, Plan rest) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Seq;
  node->children = {std::move(first), std::move(rest)};
  return Plan(std::move(node));
}

Plan Plan::ifThenElse(Term condition, Plan thenPlan, Plan elsePlan) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::IfThenElse;
  node->term = std::move(condition);
  node->children = {std::move(thenPlan), std::move(elsePlan)};
  return Plan(std::move(node));
}

Plan Plan::whileLoop(Term condition, Plan body, int bound) {
  if (bound < 1) throw std::invalid_argument("while bound must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::While;
  node->term = std::move(condition);
  node->children = {std::move(body)};
  node->bound = bound;
  return Plan(std::move(node));
}

bool Plan::operator==(const Plan& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->kind != Kind::Skip && node_->kind != Kind::Seq &&
      node_->term != other.node_->term)
    return false;
  if (node_->bound != other.node_->bound) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i)
    if (node_->children[i] != other.node_->children[i]) return false;
  return true;
}

std::string Plan::toString() const {
  switch (node_->kind) {
    case Kind::Skip:
      return "skip";
    case Kind::Primitive:
      return node_->term.toString();
    case Kind::Seq:
      return first().toString() + "; " + rest().toString();
    case Kind::IfThenElse: {
      std::string out = "if " + node_->term.toString() + " then " +
                        thenPlan().toString();
      if (elsePlan().kind() != Kind::Skip)
        out += " else " + elsePlan().toString();
      return out + " endIf";
    }
    case Kind::While: {
      std::ostringstream out;
      out << "while " << node_->term.toString() << " do " << body().toString()
          << " endDo(bound=" << node_->bound << ")";
      return out.str();
    }
  }
  return "?";
}

Term trans(const Plan& plan, const WorldOracle& world, const Term& situation) {
  switch (plan.kind()) {
    case Plan::Kind::Skip:
      return situation;
    case Plan::Kind::Primitive:
      return doTerm(plan.action(), situation);
    case Plan::Kind::Seq:
      return trans(plan.rest(), world, trans(plan.first(), world, situation));
    case Plan::Kind::IfThenElse:
      return world(plan.condition(), situation)
                 ? trans(plan.thenPlan(), world, situation)
                 : trans(plan.elsePlan(), world, situation);
    case Plan::Kind::While: {
      Term s = situation;
      for (int i = 0; i < plan.bound(); ++i) {
        if (!world(plan.condition(), s)) return s;
        s = trans(plan.body(), world, s);
      }
      if (!world(plan.condition(), s)) return s;
      throw LoopBoundError("while " + plan.condition().toString() +
                               " still true after " + std::to_string(plan.bound()) +
                               " iterations",
                           s);
    }
  }
  return situation;
}

namespace {

using BranchSink = std::function<void(const Term&, std::vector<BranchOutcome>&, int, bool)>;

void profile(const Plan& plan, const Term& s, std::vector<BranchOutcome>& outcomes,
             int actions, const BranchSink& leaf,
             const std::function<void(const Term&, std::vector<BranchOutcome>&, int)>& k) {
  switch (plan.kind()) {
    case Plan::Kind::Skip:
      k(s, outcomes, actions);
      return;
    case Plan::Kind::Primitive:
      k(doTerm(plan.action(), s), outcomes, actions + 1);
      return;
    case Plan::Kind::Seq:
      profile(plan.first(), s, outcomes, actions, leaf,
              [&](const Term& s2, std::vector<BranchOutcome>& o2, int a2) {
                profile(plan.rest(), s2, o2, a2, leaf, k);
              });
      return;
    case Plan::Kind::IfThenElse: {
      outcomes.push_back({plan.condition(), s, true});
      profile(plan.thenPlan(), s, outcomes, actions, leaf, k);
      outcomes.back().value = false;
      profile(plan.elsePlan(), s, outcomes, actions, leaf, k);
      outcomes.pop_back();
      return;
    }
    case Plan::Kind::While: {
      std::function<void(const Term&, std::vector<BranchOutcome>&, int, int)> loop =
          [&](const Term& s2, std::vector<BranchOutcome>& o2, int a2, int remaining) {
            o2.push_back({plan.condition(), s2, false});
            k(s2, o2, a2);
            o2.pop_back();
            if (remaining == 0) {
              o2.push_back({plan.condition(), s2, true});
              leaf(s2, o2, a2, true);
              o2.pop_back();
              return;
            }
            o2.push_back({plan.condition(), s2, true});
            profile(plan.body(), s2, o2, a2, leaf,
                    [&](const Term& s3, std::vector<BranchOutcome>& o3, int a3) {
                      loop(s3, o3, a3, remaining - 1);
                    });
            o2.pop_back();
          };
      loop(s, outcomes, actions, plan.bound());
      return;
    }
  }
}

}  // namespace

std::vector<PlanBranch> branchProfile(const Plan& plan, const Term& start) {
  std::vector<PlanBranch> out;
  std::vector<BranchOutcome> outcomes;
  BranchSink leaf = [&](const Term& s, std::vector<BranchOutcome>& o, int a, bool overflow) {
    out.push_back(PlanBranch{o, s, a, overflow});
  };
  profile(plan, start, outcomes, 0, leaf,
          [&](const Term& s, std::vector<BranchOutcome>& o, int a) {
            out.push_back(PlanBranch{o, s, a, false});
          });
  return out;
}

int maxBranchDepth(const Plan& plan) {
  int best = 0;
  for (const auto& b : branchProfile(plan)) best = std::max(best, b.actionCount);
  return best;
}

std::vector<std::string> validatePlan(const Theory& theory, const Plan& plan) {
  std::vector<std::string> violations;
  long fresh = 0;
  auto matchesTemplate = [&fresh](const Term& t, const std::vector<Term>& templates) {
    for (const auto& tmpl : templates) {
      std::vector<std::string> vars;
      collectVars(tmpl, vars);
      Subst rename;
      for (const auto& v : vars)
        rename.emplace(v, Term::var("_T" + std::to_string(++fresh) + v));
      Subst s;
      if (unify(applySubst(tmpl, rename), t, s)) return true;
    }
    return false;
  };
  std::function<void(const Plan&)> visit = [&](const Plan& p) {
    switch (p.kind()) {
      case Plan::Kind::Skip:
        return;
      case Plan::Kind::Primitive:
        if (!matchesTemplate(p.action(), theory.actions))
          violations.push_back("action " + p.action().toString() +
                               " matches no declared action");
        return;
      case Plan::Kind::Seq:
        visit(p.first());
        visit(p.rest());
        return;
      case Plan::Kind::IfThenElse:
        if (!matchesTemplate(p.condition(), theory.observables))
          violations.push_back("condition " + p.condition().toString() +
                               " matches no declared observable");
        visit(p.thenPlan());
        visit(p.elsePlan());
        return;
      case Plan::Kind::While:
        if (!matchesTemplate(p.condition(), theory.observables))
          violations.push_back("condition " + p.condition().toString() +
                               " matches no declared observable");
        if (p.bound() < 1)
          violations.push_back("while bound must be >= 1");
        visit(p.body());
        return;
    }
  };
  visit(plan);
  return violations;
}

}  // namespace icl
