#include "iclsc/choice.hpp"

#include <sstream>

namespace icl {

std::optional<int> TotalChoice::selected(const AltKey& key) const {
  auto it = selection_.find(key);
  if (it == selection_.end()) return std::nullopt;
  return it->second;
}

TotalChoice TotalChoice::with(const AltKey& key, int member) const {
  TotalChoice out = *this;
  out.selection_[key] = member;
  return out;
}

bool TotalChoice::operator<(const TotalChoice& other) const {
  return std::lexicographical_compare(
      selection_.begin(), selection_.end(), other.selection_.begin(),
      other.selection_.end(), [](const auto& a, const auto& b) {
        if (a.first < b.first) return true;
        if (b.first < a.first) return false;
        return a.second < b.second;
      });
}

namespace {

Atom renameSituationVar(const Atom& tmpl, const std::optional<std::string>& sitVar,
                        const std::string& fresh) {
  if (!sitVar) return tmpl;
  Subst s{{*sitVar, Term::var(fresh)}};
  return applySubst(tmpl, s);
}

}  // namespace

std::vector<std::string> validateTheory(const Theory& theory) {
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < theory.schemas.size(); ++i) {
    const auto& schema = theory.schemas[i];
    if (schema.members.empty()) {
      violations.push_back("alternative " + std::to_string(i) + " is empty");
      continue;
    }
    Rational sum = 0;
    for (const auto& [tmpl, p] : schema.members) {
      if (p < 0 || p > 1)
        violations.push_back("probability " + rationalToString(p) + " of " +
                             tmpl.toString() + " is outside [0, 1]");
      sum += p;
      std::vector<std::string> vars;
      for (const auto& arg : tmpl.args) collectVars(arg, vars);
      for (const auto& v : vars)
        if (!schema.situationVar || v != *schema.situationVar)
          violations.push_back("template " + tmpl.toString() +
                               " mentions variable " + v +
                               " other than the situation variable");
    }
    if (sum != 1)
      violations.push_back("probabilities of alternative " + std::to_string(i) +
                           " sum to " + rationalToString(sum) + " != 1");
    // Members must stay distinct for every instantiation of the shared
    // situation variable.
    for (std::size_t a = 0; a < schema.members.size(); ++a)
      for (std::size_t b = a + 1; b < schema.members.size(); ++b) {
        Atom x = renameSituationVar(schema.members[a].first, schema.situationVar, "_Sit");
        Atom y = renameSituationVar(schema.members[b].first, schema.situationVar, "_Sit");
        Subst s;
        if (unify(x, y, s))
          violations.push_back("atomic choices " + schema.members[a].first.toString() +
                               " and " + schema.members[b].first.toString() +
                               " in one alternative are unifiable");
      }
  }
  // Atomic choices from distinct alternatives must never collide.
  for (std::size_t i = 0; i < theory.schemas.size(); ++i)
    for (std::size_t j = i + 1; j < theory.schemas.size(); ++j)
      for (const auto& [ta, pa] : theory.schemas[i].members)
        for (const auto& [tb, pb] : theory.schemas[j].members) {
          Atom x = renameSituationVar(ta, theory.schemas[i].situationVar, "_SitA");
          Atom y = renameSituationVar(tb, theory.schemas[j].situationVar, "_SitA");
          Subst s;
          if (unify(x, y, s))
            violations.push_back("atomic choice " + ta.toString() +
                                 " appears in two alternatives (collides with " +
                                 tb.toString() + ")");
        }
  // No atomic choice may unify with any clause head.
  int counter = 0;
  for (const auto& schema : theory.schemas)
    for (const auto& [tmpl, p] : schema.members)
      for (const auto& clause : theory.facts.clauses) {
        if (clause.head.pred != tmpl.pred ||
            clause.head.args.size() != tmpl.args.size())
          continue;
        std::vector<std::string> headVars;
        for (const auto& arg : clause.head.args) collectVars(arg, headVars);
        Subst rename;
        for (const auto& v : headVars)
          rename.emplace(v, Term::var("_H" + std::to_string(counter++) + v));
        Atom head = applySubst(clause.head, rename);
        Atom choice = renameSituationVar(tmpl, schema.situationVar,
                                         "_C" + std::to_string(counter++));
        Subst s;
        if (unify(head, choice, s))
          violations.push_back("atomic choice " + tmpl.toString() +
                               " unifies with clause head " +
                               clause.head.toString());
      }
  for (const auto& clause : theory.facts.clauses)
    for (const auto& v : rangeRestrictionViolations(clause))
      violations.push_back(clause.toString() + ": " + v);
  return violations;
}

std::vector<std::pair<Atom, Rational>> instantiate(const AlternativeSchema& schema,
                                                   const Term& situation) {
  if (!situation.ground())
    throw NotGroundSituationError("situation " + situation.toString() +
                                  " is not ground");
  std::vector<std::pair<Atom, Rational>> out;
  out.reserve(schema.members.size());
  for (const auto& [tmpl, p] : schema.members) {
    if (schema.situationVar) {
      Subst s{{*schema.situationVar, situation}};
      out.emplace_back(applySubst(tmpl, s), p);
    } else {
      out.emplace_back(tmpl, p);
    }
  }
  return out;
}

AltKey altKeyFor(const Theory& theory, int schema, const Term& situation) {
  const auto& s = theory.schemas[static_cast<std::size_t>(schema)];
  return AltKey{schema, s.situationVar ? situation : s0()};
}

std::vector<ChoiceMatch> matchChoices(const Theory& theory, const Atom& pattern) {
  std::vector<ChoiceMatch> out;
  for (std::size_t i = 0; i < theory.schemas.size(); ++i) {
    const auto& schema = theory.schemas[i];
    for (std::size_t m = 0; m < schema.members.size(); ++m) {
      const Atom& tmpl = schema.members[m].first;
      if (tmpl.pred != pattern.pred || tmpl.args.size() != pattern.args.size())
        continue;
      Subst s;
      if (!unify(tmpl, pattern, s)) continue;
      Atom ground = applySubst(tmpl, s);
      if (!ground.ground())
        throw NonGroundableClauseError(
            "cannot enumerate instances of atomic choice " + tmpl.toString() +
            " for pattern " + pattern.toString());
      Term situation = s0();
      if (schema.situationVar) situation = walk(Term::var(*schema.situationVar), s);
      out.push_back(ChoiceMatch{ground,
                                AltKey{static_cast<int>(i), situation},
                                static_cast<int>(m), schema.members[m].second});
    }
  }
  return out;
}

Rational choiceProbability(const Theory& theory, const TotalChoice& tc) {
  Rational p = 1;
  for (const auto& [key, member] : tc.selections()) {
    const auto& schema = theory.schemas[static_cast<std::size_t>(key.schema)];
    p *= schema.members[static_cast<std::size_t>(member)].second;
  }
  return p;
}

std::vector<Atom> selectedAtoms(const Theory& theory, const TotalChoice& tc) {
  std::vector<Atom> out;
  for (const auto& [key, member] : tc.selections()) {
    const auto& schema = theory.schemas[static_cast<std::size_t>(key.schema)];
    auto ground = instantiate(schema, key.situation);
    out.push_back(ground[static_cast<std::size_t>(member)].first);
  }
  return out;
}

std::string describe(const Theory& theory, const TotalChoice& tc) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& atom : selectedAtoms(theory, tc)) {
    if (!first) out << ", ";
    out << atom.toString();
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace icl
