#include "iclsc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace icl {

namespace {

Atom senseAtom(const Term& condition, const Term& situation) {
  return Atom{"sense", {condition, situation}};
}

Atom utilityPattern(const Term& situation) {
  return Atom{"utility", {Term::var("_Utility"), situation}};
}

// Pre-grounds every sense and utility query any branch of the plan can
// raise, so evaluators run against a fixed ground context.
void ensurePlanQueries(GroundContext& ground, const Plan& plan) {
  for (const auto& branch : branchProfile(plan)) {
    for (const auto& outcome : branch.outcomes)
      ground.ensure(senseAtom(outcome.condition, outcome.situation));
    if (!branch.overflow) ground.ensure(utilityPattern(branch.finalSituation));
  }
}

constexpr std::uint64_t kWorldGuard = std::uint64_t{1} << 20;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

EvalSession::EvalSession(const Theory& theory, int horizon)
    : theory_(theory), ground_(theory.facts, &theory, horizon) {}

void EvalSession::prepare(const Plan& plan) { ensurePlanQueries(ground_, plan); }

bool EvalSession::senseValue(const TotalChoice& tc, const Term& condition,
                             const Term& situation) {
  ground_.ensure(senseAtom(condition, situation));
  TotalChoiceOracle oracle(theory_, tc);
  Evaluator eval(ground_, &oracle);
  return eval.truth(senseAtom(condition, situation));
}

const std::vector<Atom>& EvalSession::utilityCandidates(const Term& situation) {
  if (cacheRevision_ != ground_.revision()) {
    utilityCandidates_.clear();
    cacheRevision_ = ground_.revision();
  }
  auto hit = utilityCandidates_.find(situation);
  if (hit != utilityCandidates_.end()) return hit->second;
  std::vector<Atom> candidates = ground_.candidatesFor(utilityPattern(situation));
  std::vector<std::pair<std::string, Atom>> keyed;
  keyed.reserve(candidates.size());
  for (auto& atom : candidates) keyed.emplace_back(atom.toString(), std::move(atom));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  candidates.clear();
  for (auto& [key, atom] : keyed) candidates.push_back(std::move(atom));
  return utilityCandidates_.emplace(situation, std::move(candidates)).first->second;
}

Rational EvalSession::utilityWith(Evaluator& eval, const TotalChoice& tc,
                                  const Term& situation) {
  const std::vector<Atom>& candidates = utilityCandidates(situation);
  std::vector<Rational> values;
  for (const auto& atom : candidates) {
    if (!eval.truth(atom)) continue;
    if (atom.args.size() != 2 || !atom.args[0].isNum())
      throw UtilityIncompleteError(
          "non-numeric utility " + atom.toString() + " derivable", tc, situation, {});
    const Rational& v = atom.args[0].value();
    if (std::find(values.begin(), values.end(), v) == values.end())
      values.push_back(v);
  }
  if (values.size() == 1) return values.front();
  std::ostringstream what;
  what << (values.empty() ? "no" : "ambiguous") << " utility at "
       << situation.toString();
  throw UtilityIncompleteError(what.str(), tc, situation, values);
}

Rational EvalSession::utilityOf(const TotalChoice& tc, const Term& situation) {
  ground_.ensure(utilityPattern(situation));
  TotalChoiceOracle oracle(theory_, tc);
  Evaluator eval(ground_, &oracle);
  return utilityWith(eval, tc, situation);
}

Rational EvalSession::utilityOf(Evaluator& eval, const Term& situation) {
  ground_.ensure(utilityPattern(situation));
  return utilityWith(eval, TotalChoice{}, situation);
}

EvalSession::Leaf EvalSession::runBranch(const Plan& plan, const TotalChoice& tc) {
  TotalChoiceOracle oracle(theory_, tc);
  Evaluator eval(ground_, &oracle);
  WorldOracle world = [&](const Term& condition, const Term& situation) {
    return eval.truth(senseAtom(condition, situation));
  };
  Leaf leaf;
  leaf.situation = trans(plan, world, s0());
  leaf.utility = utilityWith(eval, tc, leaf.situation);
  leaf.queried.assign(eval.queriedAlternatives().begin(),
                      eval.queriedAlternatives().end());
  return leaf;
}

EUReport EvalSession::expectedUtilityExact(const Plan& plan) {
  ensurePlanQueries(ground_, plan);
  EUReport report;
  std::vector<TotalChoice> pending{TotalChoice{}};
  while (!pending.empty()) {
    TotalChoice tc = std::move(pending.back());
    pending.pop_back();
    try {
      Leaf leaf = runBranch(plan, tc);
      Explanation ex;
      ex.tc = tc;
      ex.finalSituation = leaf.situation;
      ex.utility = leaf.utility;
      ex.probability = choiceProbability(theory_, tc);
      ex.queried = std::move(leaf.queried);
      report.explanations.push_back(std::move(ex));
    } catch (const NeedChoice& need) {
      int members = static_cast<int>(theory_.schemas[need.key.schema].members.size());
      // Reverse push: member 0 is explored first.
      for (int m = members - 1; m >= 0; --m) pending.push_back(tc.with(need.key, m));
    }
  }
  std::sort(report.explanations.begin(), report.explanations.end(),
            [](const Explanation& a, const Explanation& b) { return a.tc < b.tc; });
  report.expectedUtility = 0;
  report.totalMass = 0;
  for (const auto& ex : report.explanations) {
    report.expectedUtility += ex.probability * ex.utility;
    report.totalMass += ex.probability;
  }
  return report;
}

std::vector<UtilityWitness> EvalSession::checkUtilityComplete(const Plan& plan) {
  ensurePlanQueries(ground_, plan);
  std::vector<UtilityWitness> witnesses;
  std::vector<TotalChoice> pending{TotalChoice{}};
  while (!pending.empty()) {
    TotalChoice tc = std::move(pending.back());
    pending.pop_back();
    try {
      runBranch(plan, tc);
    } catch (const NeedChoice& need) {
      int members = static_cast<int>(theory_.schemas[need.key.schema].members.size());
      for (int m = members - 1; m >= 0; --m) pending.push_back(tc.with(need.key, m));
    } catch (const UtilityIncompleteError& e) {
      witnesses.push_back(UtilityWitness{e.tc, e.situation, e.utilities});
    }
  }
  std::sort(witnesses.begin(), witnesses.end(),
            [](const UtilityWitness& a, const UtilityWitness& b) { return a.tc < b.tc; });
  return witnesses;
}

EUReport EvalSession::expectedUtilityEnumerate(const Plan& plan, int horizon) {
  ensurePlanQueries(ground_, plan);
  std::vector<std::pair<AltKey, int>> alts;
  std::uint64_t worlds = 1;
  for (const auto& [key, members] : ground_.seenAlternatives()) {
    if (maxSituationDepth(key.situation) > horizon) continue;
    alts.emplace_back(key, members);
    worlds *= static_cast<std::uint64_t>(members);
    if (worlds > kWorldGuard)
      throw TooManyWorldsError("world enumeration would exceed " +
                               std::to_string(kWorldGuard) + " worlds");
  }
  EUReport report;
  report.expectedUtility = 0;
  report.totalMass = 0;
  for (std::uint64_t index = 0; index < worlds; ++index) {
    TotalChoice tc;
    std::uint64_t rest = index;
    for (const auto& [key, members] : alts) {
      tc = tc.with(key, static_cast<int>(rest % members));
      rest /= members;
    }
    Explanation ex;
    try {
      Leaf leaf = runBranch(plan, tc);
      ex.finalSituation = leaf.situation;
      ex.utility = leaf.utility;
      ex.queried = std::move(leaf.queried);
    } catch (const NeedChoice& need) {
      throw HorizonError("alternative " + need.key.toString() +
                         " needed beyond enumeration horizon " +
                         std::to_string(horizon));
    }
    ex.tc = tc;
    ex.probability = choiceProbability(theory_, tc);
    report.expectedUtility += ex.probability * ex.utility;
    report.totalMass += ex.probability;
    report.explanations.push_back(std::move(ex));
  }
  return report;
}

SampleOracle::SampleOracle(const Theory& theory, std::uint64_t seed)
    : theory_(theory), seed_(seed) {
  for (const auto& schema : theory.schemas) {
    std::vector<double> cumulative;
    Rational sum = 0;
    for (const auto& [atom, prob] : schema.members) {
      sum += prob;
      cumulative.push_back(rationalToDouble(sum));
    }
    cumulative_.push_back(std::move(cumulative));
  }
}

void SampleOracle::startSample(std::uint64_t index) {
  sample_ = index;
  tc_ = TotalChoice{};
}

bool SampleOracle::choiceValue(const Atom& atom, const ChoiceMatch& match) {
  std::optional<int> chosen = tc_.selected(match.key);
  if (!chosen) {
    auto hashed = keyHash_.find(match.key);
    if (hashed == keyHash_.end())
      hashed = keyHash_.emplace(match.key, fnv1a(match.key.toString())).first;
    std::uint64_t bits =
        splitmix64(splitmix64(splitmix64(seed_) ^ sample_) ^ hashed->second);
    double r = static_cast<double>(bits >> 11) * 0x1.0p-53;
    const auto& cumulative = cumulative_[match.key.schema];
    int pick = static_cast<int>(cumulative.size()) - 1;
    for (std::size_t m = 0; m < cumulative.size(); ++m) {
      if (r < cumulative[m]) {
        pick = static_cast<int>(m);
        break;
      }
    }
    tc_ = tc_.with(match.key, pick);
    chosen = pick;
  }
  return *chosen == match.member;
}

std::pair<double, double> EvalSession::expectedUtilityMC(const Plan& plan, long n,
                                                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  ensurePlanQueries(ground_, plan);
  SampleOracle oracle(theory_, seed);
  double sum = 0.0;
  double sumSq = 0.0;
  for (long i = 0; i < n; ++i) {
    oracle.startSample(static_cast<std::uint64_t>(i));
    Evaluator eval(ground_, &oracle);
    WorldOracle world = [&](const Term& condition, const Term& situation) {
      return eval.truth(senseAtom(condition, situation));
    };
    Term final = trans(plan, world, s0());
    double u = rationalToDouble(utilityWith(eval, oracle.drawn(), final));
    sum += u;
    sumSq += u * u;
  }
  double mean = sum / static_cast<double>(n);
  double stderrOfMean = 0.0;
  if (n > 1) {
    double variance = (sumSq - sum * mean) / static_cast<double>(n - 1);
    if (variance < 0.0) variance = 0.0;
    stderrOfMean = std::sqrt(variance / static_cast<double>(n));
  }
  return {mean, stderrOfMean};
}

Rational EvalSession::queryProbability(const Formula& goal) {
  std::vector<Atom> atoms;
  goal.collectAtoms(atoms);
  for (const auto& a : atoms) ground_.ensure(a);
  Rational mass = 0;
  std::vector<TotalChoice> pending{TotalChoice{}};
  while (!pending.empty()) {
    TotalChoice tc = std::move(pending.back());
    pending.pop_back();
    try {
      TotalChoiceOracle oracle(theory_, tc);
      Evaluator eval(ground_, &oracle);
      if (eval.holds(goal)) mass += choiceProbability(theory_, tc);
    } catch (const NeedChoice& need) {
      int members = static_cast<int>(theory_.schemas[need.key.schema].members.size());
      for (int m = members - 1; m >= 0; --m) pending.push_back(tc.with(need.key, m));
    }
  }
  return mass;
}

EUReport expectedUtilityExact(const Theory& theory, const Plan& plan) {
  EvalSession session(theory, maxBranchDepth(plan));
  return session.expectedUtilityExact(plan);
}

EUReport expectedUtilityEnumerate(const Theory& theory, const Plan& plan, int horizon) {
  EvalSession session(theory, horizon);
  return session.expectedUtilityEnumerate(plan, horizon);
}

std::pair<double, double> expectedUtilityMC(const Theory& theory, const Plan& plan,
                                            long n, std::uint64_t seed) {
  EvalSession session(theory, maxBranchDepth(plan));
  return session.expectedUtilityMC(plan, n, seed);
}

std::vector<UtilityWitness> checkUtilityComplete(const Theory& theory, const Plan& plan) {
  EvalSession session(theory, maxBranchDepth(plan));
  return session.checkUtilityComplete(plan);
}

}  // namespace icl
