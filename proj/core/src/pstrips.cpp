#include "iclsc/pstrips.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace icl {

namespace {

bool triggerMatches(const PStripsTuple& tuple, const std::set<std::string>& state) {
  for (const auto& lit : tuple.trigger)
    if ((state.count(lit.fluent) > 0) != lit.positive) return false;
  return true;
}

}  // namespace

std::vector<std::string> validatePStrips(const std::vector<PStripsAction>& actions,
                                         const std::vector<std::string>& fluents) {
  std::vector<std::string> errors;
  std::set<std::string> known(fluents.begin(), fluents.end());
  for (const auto& action : actions) {
    if (action.tuples.empty()) {
      errors.push_back("action " + action.name + " has no trigger");
      continue;
    }
    for (const auto& tuple : action.tuples) {
      for (const auto& lit : tuple.trigger)
        if (!known.count(lit.fluent))
          errors.push_back("action " + action.name + " trigger uses unknown fluent " +
                           lit.fluent);
      if (tuple.outcomes.empty()) {
        errors.push_back("action " + action.name + " has a trigger with no outcomes");
        continue;
      }
      Rational sum = 0;
      for (const auto& outcome : tuple.outcomes) {
        if (outcome.probability < 0 || outcome.probability > 1)
          errors.push_back("action " + action.name + " outcome probability " +
                           rationalToString(outcome.probability) + " outside [0,1]");
        for (const auto& eff : outcome.effects)
          if (!known.count(eff.fluent))
            errors.push_back("action " + action.name + " effect uses unknown fluent " +
                             eff.fluent);
        sum += outcome.probability;
      }
      if (sum != 1)
        errors.push_back("action " + action.name + " outcome probabilities sum to " +
                         rationalToString(sum) + ", expected 1");
    }
  }
  if (fluents.size() > 20) {
    errors.push_back("too many fluents to check the trigger partition");
    return errors;
  }
  const std::size_t states = std::size_t{1} << fluents.size();
  for (const auto& action : actions) {
    for (std::size_t mask = 0; mask < states; ++mask) {
      std::set<std::string> state;
      for (std::size_t k = 0; k < fluents.size(); ++k)
        if (mask & (std::size_t{1} << k)) state.insert(fluents[k]);
      int matches = 0;
      for (const auto& tuple : action.tuples)
        if (triggerMatches(tuple, state)) ++matches;
      if (matches != 1) {
        std::ostringstream what;
        what << "action " << action.name << ": "
             << (matches == 0 ? "no trigger matches" : "overlapping triggers in")
             << " state {";
        bool first = true;
        for (const auto& f : state) {
          if (!first) what << ", ";
          what << f;
          first = false;
        }
        what << "}";
        errors.push_back(what.str());
      }
    }
  }
  return errors;
}

Theory importPStrips(const std::vector<PStripsAction>& actions,
                     const std::vector<std::string>& fluents) {
  auto errors = validatePStrips(actions, fluents);
  if (!errors.empty()) {
    const std::string& first = errors.front();
    if (first.find("probabilit") != std::string::npos ||
        first.find("outcome") != std::string::npos)
      throw BadOutcomeDistribution(first);
    throw BadTriggerPartition(first);
  }

  std::set<std::string> used(fluents.begin(), fluents.end());
  for (const auto& a : actions) used.insert(a.name);
  used.insert({"do", "s0", "sense", "utility"});
  auto fresh = [&used](std::string name) {
    while (used.count(name)) name = "_" + name;
    used.insert(name);
    return name;
  };

  Theory theory;
  Term sVar = Term::var("S");
  Term aVar = Term::var("A");
  std::string undoesPred = fresh("undoes");

  std::vector<Clause> effectRules;
  int index = 0;
  for (const auto& action : actions) {
    theory.actions.push_back(Term::sym(action.name));
    Term actionTerm = Term::sym(action.name);
    for (const auto& tuple : action.tuples) {
      AlternativeSchema schema;
      schema.situationVar = "S";
      for (const auto& outcome : tuple.outcomes) {
        ++index;
        std::string bPred = fresh("b" + std::to_string(index));
        std::string rPred = fresh("r" + std::to_string(index));
        Atom rAtom{rPred, {sVar}};
        schema.members.emplace_back(rAtom, outcome.probability);
        Clause bRule;
        bRule.head = Atom{bPred, {actionTerm, sVar}};
        for (const auto& lit : tuple.trigger) {
          Atom fl{lit.fluent, {sVar}};
          bRule.body.push_back(lit.positive ? Literal::pos(fl) : Literal::neg(fl));
        }
        bRule.body.push_back(Literal::pos(rAtom));
        theory.facts.add(std::move(bRule));
        for (const auto& eff : outcome.effects) {
          Clause rule;
          if (eff.add)
            rule.head = Atom{eff.fluent, {doTerm(actionTerm, sVar)}};
          else
            rule.head = Atom{undoesPred, {Term::sym(eff.fluent), actionTerm, sVar}};
          rule.body.push_back(Literal::pos(Atom{bPred, {actionTerm, sVar}}));
          effectRules.push_back(std::move(rule));
        }
      }
      theory.schemas.push_back(std::move(schema));
    }
  }
  for (auto& rule : effectRules) theory.facts.add(std::move(rule));
  // Frame rules come last so action effects take precedence in clause order.
  for (const auto& fluent : fluents) {
    Clause frame;
    frame.head = Atom{fluent, {doTerm(aVar, sVar)}};
    frame.body.push_back(Literal::pos(Atom{fluent, {sVar}}));
    frame.body.push_back(
        Literal::neg(Atom{undoesPred, {Term::sym(fluent), aVar, sVar}}));
    theory.facts.add(std::move(frame));
  }
  return theory;
}

SizeMetrics measure(const Theory& theory) {
  SizeMetrics m;
  m.clauseCount = static_cast<long>(theory.facts.clauses.size());
  m.tupleCount = static_cast<long>(theory.schemas.size());
  for (const auto& c : theory.facts.clauses)
    m.literalCount += 1 + static_cast<long>(c.body.size());
  for (const auto& s : theory.schemas)
    m.literalCount += static_cast<long>(s.members.size());
  return m;
}

SizeMetrics measure(const PStripsAction& action) {
  SizeMetrics m;
  for (const auto& tuple : action.tuples) {
    m.tupleCount += static_cast<long>(tuple.outcomes.size());
    for (const auto& outcome : tuple.outcomes)
      m.literalCount += static_cast<long>(tuple.trigger.size()) +
                        static_cast<long>(outcome.effects.size());
  }
  return m;
}

PersistenceBenchmark persistenceBenchmark(int n) {
  if (n < 1) throw std::invalid_argument("persistence benchmark needs n >= 1");
  PersistenceBenchmark bench;
  Term sVar = Term::var("S");
  Term aVar = Term::var("A");
  Term wait = Term::sym("wait");
  bench.icl.actions.push_back(wait);
  for (int k = 1; k <= n; ++k) {
    std::string fluent = "f" + std::to_string(k);
    bench.fluents.push_back(fluent);
    Rational keeps(k, k + 1);

    AlternativeSchema schema;
    schema.situationVar = "S";
    schema.members.emplace_back(Atom{"keeps_" + fluent, {sVar}}, keeps);
    schema.members.emplace_back(Atom{"loses_" + fluent, {sVar}},
                                Rational(1) - keeps);
    bench.icl.schemas.push_back(std::move(schema));

    Clause frame;
    frame.head = Atom{fluent, {doTerm(aVar, sVar)}};
    frame.body.push_back(Literal::pos(Atom{fluent, {sVar}}));
    frame.body.push_back(
        Literal::neg(Atom{"undoes", {Term::sym(fluent), aVar, sVar}}));
    bench.icl.facts.add(std::move(frame));

    Clause undoes;
    undoes.head = Atom{"undoes", {Term::sym(fluent), wait, sVar}};
    undoes.body.push_back(Literal::pos(Atom{"loses_" + fluent, {sVar}}));
    bench.icl.facts.add(std::move(undoes));
  }

  bench.pstrips.name = "wait";
  PStripsTuple tuple;  // trigger `true`
  const std::size_t combos = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < combos; ++mask) {
    PStripsOutcome outcome;
    outcome.probability = 1;
    for (int k = 1; k <= n; ++k) {
      Rational keeps(k, k + 1);
      if (mask & (std::size_t{1} << (k - 1))) {
        outcome.probability *= keeps;
      } else {
        outcome.probability *= Rational(1) - keeps;
        outcome.effects.push_back({"f" + std::to_string(k), false});
      }
    }
    tuple.outcomes.push_back(std::move(outcome));
  }
  bench.pstrips.tuples.push_back(std::move(tuple));

  bench.iclMetrics = measure(bench.icl);
  bench.pstripsMetrics = measure(bench.pstrips);
  return bench;
}

std::string sizeReportText(const std::vector<SizeRow>& rows) {
  std::ostringstream out;
  out << std::setw(4) << "n" << std::setw(14) << "icl_clauses" << std::setw(14)
      << "icl_alts" << std::setw(14) << "icl_lits" << std::setw(16)
      << "pstrips_tuples" << std::setw(14) << "pstrips_lits" << "\n";
  for (const auto& row : rows)
    out << std::setw(4) << row.n << std::setw(14) << row.icl.clauseCount
        << std::setw(14) << row.icl.tupleCount << std::setw(14)
        << row.icl.literalCount << std::setw(16) << row.pstrips.tupleCount
        << std::setw(14) << row.pstrips.literalCount << "\n";
  return out.str();
}

}  // namespace icl
