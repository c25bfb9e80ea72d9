#include <doctest.h>

#include <random>

#include "iclsc/parser.hpp"
#include "support/oracles.hpp"

using namespace icl;
using namespace icl::testing;

TEST_CASE("alternatives parse with exact rational probabilities") {
  Theory t = parseDomain(
      "random([locked(door, s0) : 9/10, unlocked(door, s0) : 1/10]).\n"
      "random([at_key_lo(r101, s0) : 7/10, at_key_lo(r123, s0) : 3/10]).\n"
      "random([at_key_unlo(r101, s0) : 0.2, at_key_unlo(r123, s0) : 0.8]).\n");
  REQUIRE(t.schemas.size() == 3);
  CHECK(t.schemas[0].members[0].second == Rational(9, 10));
  CHECK(t.schemas[0].members[1].second == Rational(1, 10));
  CHECK(t.schemas[1].members[0].second == Rational(7, 10));
  CHECK(t.schemas[1].members[1].second == Rational(3, 10));
  CHECK(t.schemas[2].members[0].second == Rational(2, 10));
  CHECK(t.schemas[2].members[1].second == Rational(8, 10));
  CHECK_FALSE(t.schemas[0].situationVar.has_value());
}

TEST_CASE("a parameterized alternative records its situation variable") {
  Theory t = parseDomain("random([heads(S) : 1/2, tails(S) : 1/2]).\n");
  REQUIRE(t.schemas.size() == 1);
  CHECK(t.schemas[0].situationVar == "S");
}

TEST_CASE("clauses, facts and declarations") {
  Theory t = parseDomain(
      "action(go(X)).\nobservable(seen).\n"
      "at(home, s0).\n"
      "at(X, do(go(X), S)) <- at(Y, S) & X \\= Y.\n"
      "score(V, S) <- cost(C, S) & V is 10 - C.\n");
  CHECK(t.actions.size() == 1);
  CHECK(t.observables.size() == 1);
  REQUIRE(t.facts.clauses.size() == 3);
  CHECK(t.facts.clauses[0].body.empty());
  REQUIRE(t.facts.clauses[1].body.size() == 2);
  CHECK(t.facts.clauses[1].body[1].kind == Literal::Kind::Neq);
  CHECK(t.facts.clauses[2].body[1].kind == Literal::Kind::Is);
}

TEST_CASE("comments and empty input") {
  Theory t = parseDomain("% nothing here\n\n% more nothing\n");
  CHECK(t.facts.clauses.empty());
  CHECK(t.schemas.empty());
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parseDomain("at(home, s0).\nat(X <- y.\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("duplicate declarations are rejected") {
  CHECK_THROWS_AS(parseDomain("action(go).\naction(go).\n"), DuplicateDeclaration);
  CHECK_THROWS_AS(parseDomain("observable(seen).\nobservable(seen).\n"),
                  DuplicateDeclaration);
}

TEST_CASE("the office domain survives a print and parse round trip") {
  std::string source = readFileOrThrow(domainFile("office.icl"));
  Theory t = parseDomain(source);
  std::string printed = printTheory(t);
  Theory reparsed = parseDomain(printed);
  CHECK(printTheory(reparsed) == printed);
  CHECK(reparsed.schemas.size() == t.schemas.size());
  CHECK(reparsed.facts.clauses.size() == t.facts.clauses.size());
  CHECK(reparsed.actions.size() == t.actions.size());
}

TEST_CASE("plans parse, print and reparse") {
  std::string source = readFileOrThrow(domainFile("office.plan"));
  Plan p = parsePlan(source);
  CHECK(parsePlan(p.toString()) == p);
  Plan q = parsePlan("while hungry do eat endDo(bound=3); nap");
  CHECK(q.kind() == Plan::Kind::Seq);
  CHECK(q.first().kind() == Plan::Kind::While);
  CHECK(q.first().bound() == 3);
  CHECK(parsePlan(q.toString()) == q);
  // The default loop bound is large but finite.
  Plan r = parsePlan("while hungry do eat endDo");
  CHECK(r.bound() == 100);
  CHECK(parsePlan("skip") == Plan::skip());
}

TEST_CASE("if without else defaults to skip") {
  Plan p = parsePlan("if c then a endIf");
  REQUIRE(p.kind() == Plan::Kind::IfThenElse);
  CHECK(p.elsePlan() == Plan::skip());
}

TEST_CASE("stochastic action files parse") {
  PStripsDomain d = parsePStrips(
      "fluents: p q\n"
      "init: p\n"
      "action: flip\n"
      "when: p\n"
      "  1/3: -p +q\n"
      "  2/3:\n"
      "when: ~p\n"
      "  1: +p\n");
  CHECK(d.fluents == std::vector<std::string>{"p", "q"});
  CHECK(d.init == std::vector<std::string>{"p"});
  REQUIRE(d.actions.size() == 1);
  REQUIRE(d.actions[0].tuples.size() == 2);
  CHECK(d.actions[0].tuples[0].outcomes[0].probability == Rational(1, 3));
  CHECK(d.actions[0].tuples[0].outcomes[0].effects.size() == 2);
  CHECK_FALSE(d.actions[0].tuples[0].outcomes[0].effects[0].add);
  CHECK(validatePStrips(d.actions, d.fluents).empty());
}

TEST_CASE("fuzzing the parsers never crashes") {
  std::string office = readFileOrThrow(domainFile("office.icl"));
  std::mt19937 rng(7);
  auto byte = [&]() { return static_cast<char>(rng() % 256); };
  for (int round = 0; round < 300; ++round) {
    std::string text;
    if (round % 3 == 0) {
      // Random garbage.
      int n = static_cast<int>(rng() % 200);
      for (int i = 0; i < n; ++i) text.push_back(byte());
    } else {
      // Mutated office text: flips, deletions and truncation.
      text = office;
      for (int i = 0; i < 20; ++i) text[rng() % text.size()] = byte();
      if (round % 3 == 2) text.resize(rng() % text.size());
    }
    try {
      parseDomain(text);
    } catch (const SyntaxError&) {
    } catch (const DuplicateDeclaration&) {
    }
    try {
      parsePlan(text);
    } catch (const SyntaxError&) {
    }
    try {
      parsePStrips(text);
    } catch (const SyntaxError&) {
    }
  }
  CHECK(true);  // surviving without a crash is the assertion
}
