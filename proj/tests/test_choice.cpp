#include <doctest.h>

#include "iclsc/choice.hpp"

using namespace icl;

namespace {

Theory twoCoins() {
  Theory t;
  AlternativeSchema heads;
  heads.members.emplace_back(Atom{"h1", {s0()}}, Rational(1, 3));
  heads.members.emplace_back(Atom{"t1", {s0()}}, Rational(2, 3));
  t.schemas.push_back(heads);
  AlternativeSchema perSituation;
  perSituation.situationVar = "S";
  perSituation.members.emplace_back(Atom{"h2", {Term::var("S")}}, Rational(1, 2));
  perSituation.members.emplace_back(Atom{"t2", {Term::var("S")}}, Rational(1, 2));
  t.schemas.push_back(perSituation);
  return t;
}

}  // namespace

TEST_CASE("a well formed theory validates") {
  CHECK(validateTheory(twoCoins()).empty());
}

TEST_CASE("probabilities must sum to one") {
  Theory t = twoCoins();
  t.schemas[0].members[0].second = Rational(1, 2);
  CHECK_FALSE(validateTheory(t).empty());
}

TEST_CASE("atomic choices may not be clause heads") {
  Theory t = twoCoins();
  t.facts.add(Clause{Atom{"h1", {s0()}}, {}});
  CHECK_FALSE(validateTheory(t).empty());
  Theory u = twoCoins();
  // Non-ground head that unifies with a member of the parameterized schema.
  u.facts.add(Clause{Atom{"h2", {Term::var("S")}}, {}});
  CHECK_FALSE(validateTheory(u).empty());
}

TEST_CASE("instantiate substitutes the situation") {
  Theory t = twoCoins();
  Term s1 = doTerm(Term::sym("a"), s0());
  auto members = instantiate(t.schemas[1], s1);
  REQUIRE(members.size() == 2);
  CHECK(members[0].first == Atom{"h2", {s1}});
  CHECK(members[0].second == Rational(1, 2));
  // Closed schemas ignore the situation argument.
  auto closed = instantiate(t.schemas[0], s1);
  CHECK(closed[0].first == Atom{"h1", {s0()}});
}

TEST_CASE("matchChoices finds the ground choices matching a pattern") {
  Theory t = twoCoins();
  auto matches = matchChoices(t, Atom{"h1", {Term::var("S")}});
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].atom == Atom{"h1", {s0()}});
  CHECK(matches[0].key.schema == 0);
  CHECK(matches[0].member == 0);
  CHECK(matches[0].prob == Rational(1, 3));

  Term s1 = doTerm(Term::sym("a"), s0());
  auto atS1 = matchChoices(t, Atom{"t2", {s1}});
  REQUIRE(atS1.size() == 1);
  CHECK(atS1[0].key.schema == 1);
  CHECK(atS1[0].key.situation == s1);
  CHECK(atS1[0].member == 1);

  CHECK(matchChoices(t, Atom{"nope", {s0()}}).empty());
}

TEST_CASE("total choices compose and price multiplicatively") {
  Theory t = twoCoins();
  AltKey coin{0, s0()};
  AltKey flip{1, doTerm(Term::sym("a"), s0())};
  TotalChoice tc;
  CHECK(choiceProbability(t, tc) == 1);
  CHECK_FALSE(tc.decided(coin));
  tc = tc.with(coin, 1).with(flip, 0);
  CHECK(tc.decided(coin));
  CHECK(tc.selected(flip) == 0);
  CHECK(choiceProbability(t, tc) == Rational(2, 3) * Rational(1, 2));
  auto atoms = selectedAtoms(t, tc);
  REQUIRE(atoms.size() == 2);
  CHECK(std::find(atoms.begin(), atoms.end(), Atom{"t1", {s0()}}) != atoms.end());
  CHECK_FALSE(describe(t, tc).empty());
}

TEST_CASE("total choice ordering is deterministic") {
  AltKey a{0, s0()};
  AltKey b{1, s0()};
  TotalChoice x = TotalChoice{}.with(a, 0);
  TotalChoice y = TotalChoice{}.with(a, 1);
  TotalChoice z = TotalChoice{}.with(b, 0);
  CHECK(x < y);
  CHECK(x < z);
  CHECK(x == TotalChoice{}.with(a, 0));
}

TEST_CASE("instantiating a parameterized schema needs a ground situation") {
  Theory t = twoCoins();
  CHECK_THROWS_AS(instantiate(t.schemas[1], Term::var("S")),
                  NotGroundSituationError);
}
