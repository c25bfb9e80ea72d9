#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iclsc/logic.hpp"

namespace icl {

/// One alternative controlled by nature: mutually exclusive atom templates
/// with probabilities summing to one. A schema may mention one shared
/// situation variable; it is instantiated lazily at the situations the
/// evaluation actually reaches.
struct AlternativeSchema {
  std::vector<std::pair<Atom, Rational>> members;
  std::optional<std::string> situationVar;
};

/// Identifies an instantiated alternative. Closed schemas use s0 as the
/// canonical instantiation key.
struct AltKey {
  int schema = 0;
  Term situation = s0();

  bool operator==(const AltKey& other) const {
    return schema == other.schema && situation == other.situation;
  }
  bool operator<(const AltKey& other) const {
    if (schema != other.schema) return schema < other.schema;
    if (situation == other.situation) return false;
    return situation.toString() < other.situation.toString();
  }
  std::string toString() const {
    return "alt#" + std::to_string(schema) + "@" + situation.toString();
  }
};

/// Selector over instantiated alternatives: maps each decided alternative to
/// the index of its selected member.
class TotalChoice {
 public:
  bool decided(const AltKey& key) const { return selection_.count(key) > 0; }
  std::optional<int> selected(const AltKey& key) const;
  TotalChoice with(const AltKey& key, int member) const;
  const std::map<AltKey, int>& selections() const { return selection_; }
  bool operator==(const TotalChoice& other) const {
    return selection_ == other.selection_;
  }
  bool operator<(const TotalChoice& other) const;

 private:
  std::map<AltKey, int> selection_;
};

struct Theory {
  std::vector<AlternativeSchema> schemas;  // nature's choice space
  std::vector<Term> actions;               // primitive action templates
  std::vector<Term> observables;           // sense-able terms
  Program facts;
};

struct ChoiceMatch {
  Atom atom;
  AltKey key;
  int member = 0;
  Rational prob;
};

/// Checks the theory conditions: per-schema normalization, disjointness of
/// instantiated alternatives, and that no atomic choice unifies with a
/// clause head. Empty result means the theory is valid.
std::vector<std::string> validateTheory(const Theory& theory);

class NotGroundSituationError : public std::runtime_error {
 public:
  explicit NotGroundSituationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Substitutes a ground situation into a schema's templates.
std::vector<std::pair<Atom, Rational>> instantiate(const AlternativeSchema& schema,
                                                   const Term& situation);

AltKey altKeyFor(const Theory& theory, int schema, const Term& situation);

/// All ground atomic choices matching `pattern` (choice-space side of the
/// grounder's candidate enumeration).
std::vector<ChoiceMatch> matchChoices(const Theory& theory, const Atom& pattern);

/// Product of the selected members' probabilities; 1 for the empty choice.
Rational choiceProbability(const Theory& theory, const TotalChoice& tc);

/// Ground atoms selected by `tc`.
std::vector<Atom> selectedAtoms(const Theory& theory, const TotalChoice& tc);

std::string describe(const Theory& theory, const TotalChoice& tc);

}  // namespace icl
