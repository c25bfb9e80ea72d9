#pragma once

#include "iclsc/choice.hpp"

namespace icl {

class BadTriggerPartition : public std::runtime_error {
 public:
  explicit BadTriggerPartition(const std::string& what) : std::runtime_error(what) {}
};

class BadOutcomeDistribution : public std::runtime_error {
 public:
  explicit BadOutcomeDistribution(const std::string& what)
      : std::runtime_error(what) {}
};

struct FluentLiteral {
  std::string fluent;
  bool positive = true;
};

struct SignedFluent {
  std::string fluent;
  bool add = true;  // false: delete
};

struct PStripsOutcome {
  Rational probability;
  std::vector<SignedFluent> effects;
};

/// One trigger with its outcome distribution.
struct PStripsTuple {
  std::vector<FluentLiteral> trigger;  // empty: matches every state
  std::vector<PStripsOutcome> outcomes;
};

/// Stochastic action: the triggers must partition the state space and each
/// trigger's outcome probabilities must sum to one.
struct PStripsAction {
  std::string name;
  std::vector<PStripsTuple> tuples;
};

struct SizeMetrics {
  long clauseCount = 0;
  long tupleCount = 0;  // alternatives (rule side) or outcome tuples
  long literalCount = 0;
};

/// Checks the tuple invariants against the full state space over `fluents`.
/// Empty result means valid.
std::vector<std::string> validatePStrips(const std::vector<PStripsAction>& actions,
                                         const std::vector<std::string>& fluents);

/// Rule translation of the actions. Per outcome i of a trigger: a rule
/// b_i(a, S) <- trigger[S] & r_i(S) with the r_i of one trigger grouped into
/// an alternative, an effect rule per added fluent, an undoes rule per
/// deleted fluent, and one frame rule per fluent shared by all actions.
/// Generated predicate names avoid the fluent and action names.
/// Throws BadTriggerPartition or BadOutcomeDistribution.
Theory importPStrips(const std::vector<PStripsAction>& actions,
                     const std::vector<std::string>& fluents);

struct PersistenceBenchmark {
  Theory icl;  // direct linear encoding
  SizeMetrics iclMetrics;
  PStripsAction pstrips;  // the same behavior as one action, 2^n outcomes
  SizeMetrics pstripsMetrics;
  std::vector<std::string> fluents;
};

/// The wait action over n fluents that persist independently, fluent k with
/// probability k/(k+1). The rule encoding uses two clauses and one
/// alternative per fluent; the tuple encoding needs an outcome per subset.
PersistenceBenchmark persistenceBenchmark(int n);

struct SizeRow {
  int n = 0;
  SizeMetrics icl;
  SizeMetrics pstrips;
};

/// Aligned text table of the growth comparison.
std::string sizeReportText(const std::vector<SizeRow>& rows);

SizeMetrics measure(const Theory& theory);
SizeMetrics measure(const PStripsAction& action);

}  // namespace icl
