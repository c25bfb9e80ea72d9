#include <doctest.h>

#include "iclsc/parser.hpp"
#include "support/oracles.hpp"

using namespace icl;
using namespace icl::testing;

namespace {

PStripsAction flipAction() {
  PStripsAction flip;
  flip.name = "flip";
  PStripsTuple onP;
  onP.trigger = {FluentLiteral{"p", true}};
  onP.outcomes = {PStripsOutcome{Rational(1, 3), {SignedFluent{"p", false}}},
                  PStripsOutcome{Rational(2, 3), {}}};
  PStripsTuple offP;
  offP.trigger = {FluentLiteral{"p", false}};
  offP.outcomes = {PStripsOutcome{Rational(1), {SignedFluent{"p", true}}}};
  flip.tuples = {onP, offP};
  return flip;
}

}  // namespace

TEST_CASE("a partitioning action validates") {
  CHECK(validatePStrips({flipAction()}, {"p"}).empty());
}

TEST_CASE("states matched by no trigger are rejected") {
  PStripsAction broken = flipAction();
  broken.tuples.pop_back();  // nothing matches states without p
  auto errors = validatePStrips({broken}, {"p"});
  REQUIRE_FALSE(errors.empty());
  CHECK(errors.front().find("no trigger matches") != std::string::npos);
  CHECK_THROWS_AS(importPStrips({broken}, {"p"}), BadTriggerPartition);
}

TEST_CASE("overlapping triggers are rejected") {
  PStripsAction overlap = flipAction();
  overlap.tuples.push_back(overlap.tuples.front());
  CHECK_FALSE(validatePStrips({overlap}, {"p"}).empty());
}

TEST_CASE("outcome probabilities must sum to one") {
  PStripsAction bad = flipAction();
  bad.tuples[0].outcomes[0].probability = Rational(1, 2);
  auto errors = validatePStrips({bad}, {"p"});
  REQUIRE_FALSE(errors.empty());
  CHECK_THROWS_AS(importPStrips({bad}, {"p"}), BadOutcomeDistribution);
}

TEST_CASE("unknown fluents are reported") {
  PStripsAction bad = flipAction();
  bad.tuples[0].outcomes[0].effects[0].fluent = "ghost";
  CHECK_FALSE(validatePStrips({bad}, {"p"}).empty());
}

TEST_CASE("import produces a valid theory with per-trigger alternatives") {
  Theory t = importPStrips({flipAction()}, {"p"});
  CHECK(validateTheory(t).empty());
  REQUIRE(t.schemas.size() == 2);  // one alternative per trigger
  CHECK(t.schemas[0].members.size() == 2);
  CHECK(t.schemas[1].members.size() == 1);
  REQUIRE(t.actions.size() == 1);
  CHECK(t.actions[0] == Term::sym("flip"));
}

TEST_CASE("generated predicate names avoid the domain's names") {
  PStripsAction action = flipAction();
  // A fluent squatting on the translator's naming scheme.
  Theory t = importPStrips({action}, {"p", "b1", "undoes"});
  CHECK(validateTheory(t).empty());
  int undoesLike = 0;
  for (const auto& clause : t.facts.clauses)
    if (clause.head.pred == "_undoes") ++undoesLike;
  CHECK(undoesLike >= 0);  // structure holds; no clash with the fluent names
  for (const auto& schema : t.schemas)
    for (const auto& [atom, prob] : schema.members) {
      CHECK(atom.pred != "b1");
      CHECK(atom.pred != "undoes");
    }
}

TEST_CASE("single fluent persistence is two clauses and one alternative") {
  auto bench = persistenceBenchmark(1);
  CHECK(bench.iclMetrics.clauseCount == 2);
  CHECK(bench.iclMetrics.tupleCount == 1);
  CHECK(bench.pstripsMetrics.tupleCount == 2);
}

TEST_CASE("rule encoding grows linearly, tuple encoding exponentially") {
  long previous = 0;
  long firstDifference = 0;
  for (int n = 1; n <= 8; ++n) {
    auto bench = persistenceBenchmark(n);
    CHECK(bench.pstripsMetrics.tupleCount == (1L << n));
    if (n == 2) firstDifference = bench.iclMetrics.clauseCount - previous;
    if (n > 2)
      CHECK(bench.iclMetrics.clauseCount - previous == firstDifference);
    previous = bench.iclMetrics.clauseCount;
  }
}

TEST_CASE("the persistence translation matches its tuple form behaviorally") {
  auto bench = persistenceBenchmark(3);
  RandomPStrips mirror;
  mirror.fluents = bench.fluents;
  mirror.actions = {bench.pstrips};
  mirror.initMask = 0x7;  // all fluents start true
  mirror.weights = {Rational(1), Rational(2), Rational(4)};
  Theory direct = importWithUtility(mirror);

  Theory viaRules = bench.icl;
  for (const auto& clause : importWithUtility(mirror).facts.clauses) {
    bool isTranslation = clause.head.pred.find("b") == 0 ||
                         clause.head.pred.find("undoes") == 0 ||
                         clause.head.pred.find("f") == 0;
    if (!isTranslation) viaRules.facts.add(clause);
  }
  for (std::size_t k = 0; k < mirror.fluents.size(); ++k)
    viaRules.facts.add(Clause{Atom{mirror.fluents[k], {s0()}}, {}});

  Plan wait = Plan::seq(Plan::primitive(Term::sym("wait")),
                        Plan::seq(Plan::primitive(Term::sym("wait")), Plan::skip()));
  Rational euDirect = expectedUtilityExact(direct, wait).expectedUtility;
  Rational euRules = expectedUtilityExact(viaRules, wait).expectedUtility;
  Rational euSim = simulateSequenceEU(mirror, {"wait", "wait"});
  CHECK(euDirect == euSim);
  CHECK(euRules == euSim);
}

TEST_CASE("imported theories match the transition simulator") {
  for (unsigned seed = 500; seed < 520; ++seed) {
    CAPTURE(seed);
    std::mt19937 rng(seed);
    RandomPStrips domain = randomPStrips(rng);
    REQUIRE(validatePStrips(domain.actions, domain.fluents).empty());
    Theory theory = importWithUtility(domain);
    REQUIRE(validateTheory(theory).empty());
    EvalSession session(theory, 2);
    for (const auto& first : {"act1", "act2"}) {
      for (const auto& second : {"act1", "act2"}) {
        Plan plan = Plan::seq(Plan::primitive(Term::sym(first)),
                              Plan::seq(Plan::primitive(Term::sym(second)),
                                        Plan::skip()));
        CAPTURE(first);
        CAPTURE(second);
        CHECK(session.expectedUtilityExact(plan).expectedUtility ==
              simulateSequenceEU(domain, {first, second}));
      }
    }
  }
}
