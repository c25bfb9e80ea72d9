#pragma once

#include <cstdint>
#include <utility>

#include "iclsc/plan.hpp"
#include "iclsc/solve.hpp"

namespace icl {

class UtilityIncompleteError : public std::runtime_error {
 public:
  UtilityIncompleteError(const std::string& what, TotalChoice tc, Term situation,
                         std::vector<Rational> utilities)
      : std::runtime_error(what),
        tc(std::move(tc)),
        situation(std::move(situation)),
        utilities(std::move(utilities)) {}
  TotalChoice tc;
  Term situation;
  std::vector<Rational> utilities;
};

class TooManyWorldsError : public std::runtime_error {
 public:
  explicit TooManyWorldsError(const std::string& what) : std::runtime_error(what) {}
};

/// A set of worlds sharing the listed choices; undecided alternatives are
/// marginalized, which is what makes the masses sum to one exactly.
struct Explanation {
  TotalChoice tc;
  Term finalSituation = s0();
  Rational utility;
  Rational probability;
  std::vector<AltKey> queried;  // alternatives touched on this branch
};

struct EUReport {
  Rational expectedUtility;
  Rational totalMass;
  std::vector<Explanation> explanations;
};

struct UtilityWitness {
  TotalChoice tc;
  Term situation = s0();
  std::vector<Rational> utilities;  // empty: none derivable; >=2: ambiguous
};

/// Shares one relevant grounding across many queries over the same theory.
class EvalSession {
 public:
  EvalSession(const Theory& theory, int horizon);

  /// Grounds every sense and utility query any branch of the plan can raise.
  void prepare(const Plan& plan);

  /// sense(C, S) under a total choice; throws NeedChoice when undecided.
  bool senseValue(const TotalChoice& tc, const Term& condition, const Term& situation);

  /// The unique U with utility(U, S); throws NeedChoice or
  /// UtilityIncompleteError.
  Rational utilityOf(const TotalChoice& tc, const Term& situation);

  /// Same through an existing evaluator, e.g. over a sampling oracle.
  Rational utilityOf(Evaluator& eval, const Term& situation);

  EUReport expectedUtilityExact(const Plan& plan);
  std::vector<UtilityWitness> checkUtilityComplete(const Plan& plan);
  EUReport expectedUtilityEnumerate(const Plan& plan, int horizon);
  /// (estimate, standard error); deterministic for a fixed seed.
  std::pair<double, double> expectedUtilityMC(const Plan& plan, long n,
                                              std::uint64_t seed);

  /// Probability of a ground goal by exact explanation summation.
  Rational queryProbability(const Formula& goal);

  const Theory& theory() const { return theory_; }
  GroundContext& ground() { return ground_; }

 private:
  struct Leaf {
    Term situation = s0();
    Rational utility;
    std::vector<AltKey> queried;
  };
  Leaf runBranch(const Plan& plan, const TotalChoice& tc);
  Rational utilityWith(Evaluator& eval, const TotalChoice& tc, const Term& situation);
  const std::vector<Atom>& utilityCandidates(const Term& situation);

  const Theory& theory_;
  GroundContext ground_;
  std::unordered_map<Term, std::vector<Atom>> utilityCandidates_;
  std::size_t cacheRevision_ = 0;
};

/// Counter-based sampler: each alternative's draw is keyed by
/// (seed, sample index, alternative identity), so sampling order does not
/// matter and replay is exact.
class SampleOracle : public ChoiceOracle {
 public:
  SampleOracle(const Theory& theory, std::uint64_t seed);
  void startSample(std::uint64_t index);
  bool choiceValue(const Atom& atom, const ChoiceMatch& match) override;
  const TotalChoice& drawn() const { return tc_; }

 private:
  const Theory& theory_;
  std::uint64_t seed_;
  std::uint64_t sample_ = 0;
  TotalChoice tc_;
  std::map<AltKey, std::uint64_t> keyHash_;  // alternative identity, hashed once
  std::vector<std::vector<double>> cumulative_;  // per schema, over members
};

// Convenience wrappers building a one-shot session.
EUReport expectedUtilityExact(const Theory& theory, const Plan& plan);
EUReport expectedUtilityEnumerate(const Theory& theory, const Plan& plan, int horizon);
std::pair<double, double> expectedUtilityMC(const Theory& theory, const Plan& plan,
                                            long n, std::uint64_t seed);
std::vector<UtilityWitness> checkUtilityComplete(const Theory& theory, const Plan& plan);

}  // namespace icl
