#include "support/oracles.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace icl::testing {

std::string readFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

// -1 unknown, 0 false, 1 true
int literalTruth(const Literal& lit, const std::unordered_map<Atom, int>& val) {
  switch (lit.kind) {
    case Literal::Kind::Pos: {
      auto it = val.find(lit.atom);
      return it == val.end() ? 0 : it->second;
    }
    case Literal::Kind::Neg: {
      auto it = val.find(lit.atom);
      int v = it == val.end() ? 0 : it->second;
      return v < 0 ? -1 : 1 - v;
    }
    case Literal::Kind::Neq:
      return lit.lhs != lit.rhs ? 1 : 0;
    case Literal::Kind::Is:
      return evalArith(lit.rhs) == lit.lhs ? 1 : 0;
  }
  return 0;
}

}  // namespace

bool bottomUpHolds(const Program& ground, const std::unordered_set<Atom>& assumed,
                   const Atom& query) {
  std::unordered_map<Atom, std::vector<const Clause*>> rules;
  std::unordered_map<Atom, int> val;
  auto universe = [&](const Atom& a) { val.emplace(a, -1); };
  for (const auto& clause : ground.clauses) {
    rules[clause.head].push_back(&clause);
    universe(clause.head);
    for (const auto& lit : clause.body)
      if (lit.kind == Literal::Kind::Pos || lit.kind == Literal::Kind::Neg)
        universe(lit.atom);
  }
  universe(query);
  for (const auto& a : assumed) val[a] = 1;
  for (auto& [atom, v] : val)
    if (v < 0 && !rules.count(atom)) v = 0;

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [atom, v] : val) {
      if (v >= 0) continue;
      bool someRuleMayFire = false;
      bool derived = false;
      for (const auto* clause : rules[atom]) {
        int ruleValue = 1;
        for (const auto& lit : clause->body) {
          int t = literalTruth(lit, val);
          if (t == 0) {
            ruleValue = 0;
            break;
          }
          if (t < 0) ruleValue = -1;
        }
        if (ruleValue == 1) {
          derived = true;
          break;
        }
        if (ruleValue < 0) someRuleMayFire = true;
      }
      if (derived) {
        v = 1;
        changed = true;
      } else if (!someRuleMayFire) {
        v = 0;
        changed = true;
      }
    }
  }
  auto it = val.find(query);
  return it != val.end() && it->second == 1;
}

long long planCountReference(int actionCount, int depth, int nesting,
                             std::vector<bool> eligible) {
  long long total = 1;  // skip
  if (depth > 0) {
    std::vector<bool> all(eligible.size(), true);
    total += actionCount * planCountReference(actionCount, depth - 1, nesting, all);
  }
  if (nesting > 0) {
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (!eligible[i]) continue;
      std::vector<bool> rest = eligible;
      rest[i] = false;
      long long arm = planCountReference(actionCount, depth, nesting - 1, rest);
      total += arm * arm;
    }
  }
  return total;
}

long long planCountReference(const PlanSpace& space) {
  return planCountReference(static_cast<int>(space.actions.size()), space.depth,
                            space.nesting,
                            std::vector<bool>(space.observables.size(), true));
}

namespace {

int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct ChoicePool {
  // (schema index, member atoms with the schema's situation argument intact)
  std::vector<std::pair<bool, std::vector<Atom>>> schemas;  // bool: parameterized
};

Literal randomChoiceLit(std::mt19937& rng, const ChoicePool& pool, const Term& situation) {
  int i = pick(rng, 0, static_cast<int>(pool.schemas.size()) - 1);
  const auto& [parameterized, members] = pool.schemas[i];
  Atom atom = members[pick(rng, 0, static_cast<int>(members.size()) - 1)];
  if (parameterized) atom.args.back() = situation;
  return Literal::pos(atom);
}

}  // namespace

RandomTheory randomTheory(std::mt19937& rng) {
  RandomTheory rt;
  Term sVar = Term::var("S");
  Term aVar = Term::var("A");
  rt.actions = {Term::sym("a1"), Term::sym("a2")};
  rt.observable = Term::sym("o1");
  rt.theory.actions = rt.actions;
  rt.theory.observables = {rt.observable};

  ChoicePool pool;
  int schemaCount = pick(rng, 1, 5);
  bool haveParameterized = false;
  for (int i = 0; i < schemaCount; ++i) {
    bool parameterized = !haveParameterized && pick(rng, 0, 2) > 0;
    haveParameterized = haveParameterized || parameterized;
    // One parameterized schema at most, with two members, keeps the world
    // count small enough for exhaustive enumeration.
    int memberCount = parameterized ? 2 : pick(rng, 2, 3);
    AlternativeSchema schema;
    if (parameterized) schema.situationVar = "S";
    std::vector<Atom> memberAtoms;
    std::vector<int> weights;
    int sum = 0;
    for (int j = 0; j < memberCount; ++j) {
      weights.push_back(pick(rng, 1, 5));
      sum += weights.back();
    }
    for (int j = 0; j < memberCount; ++j) {
      Atom atom{"c" + std::to_string(i) + "m" + std::to_string(j),
                {parameterized ? sVar : s0()}};
      schema.members.emplace_back(atom, Rational(weights[j], sum));
      memberAtoms.push_back(atom);
    }
    pool.schemas.emplace_back(parameterized, std::move(memberAtoms));
    rt.theory.schemas.push_back(std::move(schema));
  }

  const int fluentCount = 2;
  auto fluent = [](int k, const Term& s) {
    return Atom{"p" + std::to_string(k), {s}};
  };

  for (int k = 1; k <= fluentCount; ++k) {
    int kind = pick(rng, 0, 2);
    if (kind == 2) continue;  // initially false
    Clause init;
    init.head = fluent(k, s0());
    if (kind == 1) {
      if (k > 1 && pick(rng, 0, 1) == 1)
        init.body.push_back(Literal::neg(fluent(pick(rng, 1, k - 1), s0())));
      init.body.push_back(randomChoiceLit(rng, pool, s0()));
    }
    rt.theory.facts.add(std::move(init));
  }

  for (int k = 1; k <= fluentCount; ++k) {
    for (const auto& action : rt.actions) {
      int kind = pick(rng, 0, 3);
      if (kind == 3) continue;  // this action never establishes p_k
      Clause effect;
      effect.head = fluent(k, doTerm(action, sVar));
      if (kind >= 1) {
        int j = pick(rng, 1, fluentCount);
        effect.body.push_back(pick(rng, 0, 1) == 0 ? Literal::pos(fluent(j, sVar))
                                                   : Literal::neg(fluent(j, sVar)));
      }
      if (kind == 2) effect.body.push_back(randomChoiceLit(rng, pool, sVar));
      rt.theory.facts.add(std::move(effect));
    }
    int frame = pick(rng, 0, 2);
    if (frame == 2) continue;  // p_k never persists
    Clause persist;
    persist.head = fluent(k, doTerm(aVar, sVar));
    persist.body.push_back(Literal::pos(fluent(k, sVar)));
    if (frame == 1) persist.body.push_back(randomChoiceLit(rng, pool, sVar));
    rt.theory.facts.add(std::move(persist));
  }

  Clause sensePos;
  sensePos.head = Atom{"sense", {rt.observable, sVar}};
  sensePos.body.push_back(Literal::pos(fluent(1, sVar)));
  rt.theory.facts.add(std::move(sensePos));
  if (pick(rng, 0, 1) == 1) {
    Clause senseNoise;
    senseNoise.head = Atom{"sense", {rt.observable, sVar}};
    senseNoise.body.push_back(Literal::neg(fluent(1, sVar)));
    senseNoise.body.push_back(randomChoiceLit(rng, pool, sVar));
    rt.theory.facts.add(std::move(senseNoise));
  }

  auto utilityClause = [&](Rational value, std::vector<Literal> body) {
    Clause c;
    c.head = Atom{"utility", {Term::num(std::move(value)), sVar}};
    c.body = std::move(body);
    rt.theory.facts.add(std::move(c));
  };
  if (pick(rng, 0, 1) == 0) {
    utilityClause(pick(rng, -50, 50), {Literal::pos(fluent(1, sVar))});
    utilityClause(pick(rng, -50, 50), {Literal::neg(fluent(1, sVar))});
  } else {
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2)
        utilityClause(
            pick(rng, -50, 50),
            {b1 ? Literal::pos(fluent(1, sVar)) : Literal::neg(fluent(1, sVar)),
             b2 ? Literal::pos(fluent(2, sVar)) : Literal::neg(fluent(2, sVar))});
  }
  return rt;
}

namespace {

Plan randomSequence(std::mt19937& rng, const RandomTheory& rt, int depth,
                    bool allowBranch) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) return Plan::skip();
  if (allowBranch && pick(rng, 0, 2) == 0) {
    Plan thenPlan = randomSequence(rng, rt, depth, false);
    Plan elsePlan = randomSequence(rng, rt, depth, false);
    return Plan::ifThenElse(rt.observable, thenPlan, elsePlan);
  }
  const Term& action =
      rt.actions[pick(rng, 0, static_cast<int>(rt.actions.size()) - 1)];
  return Plan::seq(Plan::primitive(action),
                   randomSequence(rng, rt, depth - 1, allowBranch));
}

}  // namespace

Plan randomPlan(std::mt19937& rng, const RandomTheory& rt, int maxDepth) {
  return randomSequence(rng, rt, maxDepth, true);
}

RandomPStrips randomPStrips(std::mt19937& rng) {
  RandomPStrips domain;
  int n = pick(rng, 2, 3);
  for (int k = 1; k <= n; ++k) domain.fluents.push_back("f" + std::to_string(k));
  domain.initMask = static_cast<std::uint32_t>(pick(rng, 0, (1 << n) - 1));
  for (int k = 0; k < n; ++k) domain.weights.emplace_back(pick(rng, -5, 5));

  for (int a = 1; a <= 2; ++a) {
    PStripsAction action;
    action.name = "act" + std::to_string(a);
    std::vector<std::vector<FluentLiteral>> triggers;
    if (pick(rng, 0, 1) == 0) {
      triggers.push_back({});  // matches every state
    } else {
      std::string pivot = domain.fluents[pick(rng, 0, n - 1)];
      triggers.push_back({FluentLiteral{pivot, true}});
      triggers.push_back({FluentLiteral{pivot, false}});
    }
    for (auto& trigger : triggers) {
      PStripsTuple tuple;
      tuple.trigger = std::move(trigger);
      int outcomes = pick(rng, 1, 3);
      std::vector<int> weights;
      int sum = 0;
      for (int j = 0; j < outcomes; ++j) {
        weights.push_back(pick(rng, 1, 4));
        sum += weights.back();
      }
      for (int j = 0; j < outcomes; ++j) {
        PStripsOutcome outcome;
        outcome.probability = Rational(weights[j], sum);
        for (const auto& fluent : domain.fluents)
          if (pick(rng, 0, 2) == 0)
            outcome.effects.push_back(SignedFluent{fluent, pick(rng, 0, 1) == 1});
        tuple.outcomes.push_back(std::move(outcome));
      }
      action.tuples.push_back(std::move(tuple));
    }
    domain.actions.push_back(std::move(action));
  }
  return domain;
}

Theory importWithUtility(const RandomPStrips& domain) {
  Theory theory = importPStrips(domain.actions, domain.fluents);
  for (std::size_t k = 0; k < domain.fluents.size(); ++k)
    if (domain.initMask & (std::uint32_t{1} << k))
      theory.facts.add(Clause{Atom{domain.fluents[k], {s0()}}, {}});

  // utility(U, S) where U is the weighted sum of the true fluents, built as
  // a chain of accumulator predicates.
  Term sVar = Term::var("S");
  Term vVar = Term::var("V");
  auto acc = [](std::size_t k) { return "uacc" + std::to_string(k); };
  theory.facts.add(Clause{Atom{acc(0), {Term::num(0), sVar}}, {}});
  for (std::size_t k = 0; k < domain.fluents.size(); ++k) {
    Atom fluent{domain.fluents[k], {sVar}};
    Clause onTrue;
    onTrue.head = Atom{acc(k + 1),
                       {Term::app("+", {vVar, Term::num(domain.weights[k])}), sVar}};
    onTrue.body.push_back(Literal::pos(Atom{acc(k), {vVar, sVar}}));
    onTrue.body.push_back(Literal::pos(fluent));
    theory.facts.add(std::move(onTrue));
    Clause onFalse;
    onFalse.head = Atom{acc(k + 1), {vVar, sVar}};
    onFalse.body.push_back(Literal::pos(Atom{acc(k), {vVar, sVar}}));
    onFalse.body.push_back(Literal::neg(fluent));
    theory.facts.add(std::move(onFalse));
  }
  Clause top;
  top.head = Atom{"utility", {vVar, sVar}};
  top.body.push_back(Literal::pos(Atom{acc(domain.fluents.size()), {vVar, sVar}}));
  theory.facts.add(std::move(top));
  return theory;
}

Rational simulateSequenceEU(const RandomPStrips& domain,
                            const std::vector<std::string>& actionNames) {
  auto matches = [&](const PStripsTuple& tuple, std::uint32_t mask) {
    for (const auto& lit : tuple.trigger) {
      std::size_t k = 0;
      while (domain.fluents[k] != lit.fluent) ++k;
      if (((mask >> k) & 1u) != static_cast<std::uint32_t>(lit.positive)) return false;
    }
    return true;
  };
  std::map<std::uint32_t, Rational> dist{{domain.initMask, Rational(1)}};
  for (const auto& name : actionNames) {
    const PStripsAction* action = nullptr;
    for (const auto& a : domain.actions)
      if (a.name == name) action = &a;
    if (!action) throw std::runtime_error("unknown action " + name);
    std::map<std::uint32_t, Rational> next;
    for (const auto& [mask, p] : dist) {
      const PStripsTuple* tuple = nullptr;
      for (const auto& t : action->tuples)
        if (matches(t, mask)) tuple = &t;
      if (!tuple) throw std::runtime_error("no trigger matches");
      for (const auto& outcome : tuple->outcomes) {
        std::uint32_t out = mask;
        for (const auto& eff : outcome.effects) {
          std::size_t k = 0;
          while (domain.fluents[k] != eff.fluent) ++k;
          if (eff.add)
            out |= std::uint32_t{1} << k;
          else
            out &= ~(std::uint32_t{1} << k);
        }
        next[out] += p * outcome.probability;
      }
    }
    dist = std::move(next);
  }
  Rational eu = 0;
  for (const auto& [mask, p] : dist) {
    Rational u = 0;
    for (std::size_t k = 0; k < domain.fluents.size(); ++k)
      if ((mask >> k) & 1u) u += domain.weights[k];
    eu += p * u;
  }
  return eu;
}

}  // namespace icl::testing
