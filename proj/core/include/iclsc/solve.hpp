#pragma once

#include <set>
#include <unordered_set>

#include "iclsc/ground.hpp"

namespace icl {

/// Thrown when evaluation touches an atomic choice from an alternative the
/// current total choice has not decided. The evaluator's caller splits the
/// branch, one sub-branch per member, and retries.
struct NeedChoice {
  AltKey key;
};

class ChoiceOracle {
 public:
  virtual ~ChoiceOracle() = default;
  /// Truth of a ground atomic choice; may throw NeedChoice.
  virtual bool choiceValue(const Atom& atom, const ChoiceMatch& match) = 0;
};

/// Decides ground queries over a relevant grounding by memoized top-down
/// evaluation with short-circuiting: clauses in declaration order, literals
/// left to right. For acyclic programs this computes the unique stable
/// model restricted to the atoms actually needed, so an alternative is only
/// touched when the query truly demands it.
class Evaluator {
 public:
  Evaluator(const GroundContext& ground, ChoiceOracle* oracle);

  bool truth(const Atom& atom);
  bool holds(const Formula& goal);

  const std::set<AltKey>& queriedAlternatives() const { return queried_; }

 private:
  bool truthById(int id);

  const GroundContext& ground_;
  ChoiceOracle* oracle_;
  std::vector<char> memo_;  // by atom id: 0 unset, 1 false, 2 true, 3 in progress
  std::set<AltKey> queried_;
};

/// Truth of `goal` in the unique stable model of `groundProgram` plus the
/// assumed atoms (which must not unify with any clause head).
bool holds(const Program& groundProgram, const std::unordered_set<Atom>& assumed,
           const Formula& goal);

/// Oracle answering from a fixed (possibly partial) total choice, throwing
/// NeedChoice on undecided alternatives.
class TotalChoiceOracle : public ChoiceOracle {
 public:
  TotalChoiceOracle(const Theory& theory, const TotalChoice& tc)
      : theory_(theory), tc_(tc) {}
  bool choiceValue(const Atom& atom, const ChoiceMatch& match) override;

 private:
  const Theory& theory_;
  const TotalChoice& tc_;
};

}  // namespace icl
