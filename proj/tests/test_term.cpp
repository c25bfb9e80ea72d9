#include <doctest.h>

#include "iclsc/term.hpp"

using namespace icl;

TEST_CASE("term construction and equality") {
  Term x = Term::var("X");
  Term a = Term::sym("a");
  Term n = Term::num(Rational(3, 4));
  Term f = Term::app("f", {x, a});
  CHECK(x.isVar());
  CHECK(a.kind() == Term::Kind::Sym);
  CHECK(n.isNum());
  CHECK(n.value() == Rational(3, 4));
  CHECK(f.kind() == Term::Kind::App);
  CHECK(f.args().size() == 2);
  CHECK(f == Term::app("f", {Term::var("X"), Term::sym("a")}));
  CHECK(f != Term::app("f", {Term::var("Y"), Term::sym("a")}));
  CHECK(f.hash() == Term::app("f", {Term::var("X"), Term::sym("a")}).hash());
}

TEST_CASE("groundness") {
  CHECK(Term::sym("a").ground());
  CHECK(Term::num(1).ground());
  CHECK_FALSE(Term::var("X").ground());
  CHECK(Term::app("f", {Term::sym("a")}).ground());
  CHECK_FALSE(Term::app("f", {Term::var("X")}).ground());
}

TEST_CASE("situations") {
  Term s1 = doTerm(Term::sym("a"), s0());
  Term s2 = doTerm(Term::sym("b"), s1);
  CHECK(situationDepth(s0()) == 0);
  CHECK(situationDepth(s1) == 1);
  CHECK(situationDepth(s2) == 2);
  CHECK(situationDepth(Term::sym("a")) == -1);
  CHECK(maxSituationDepth(Term::app("at", {Term::sym("k"), s2})) == 2);
  CHECK(maxSituationDepth(Term::sym("a")) == 0);
}

TEST_CASE("toString round readable") {
  Term t = Term::app("f", {Term::var("X"), Term::num(Rational(1, 2))});
  CHECK(t.toString() == "f(X, 1/2)");
  CHECK(s0().toString() == "s0");
}

TEST_CASE("unify binds and propagates") {
  Subst theta;
  Term lhs = Term::app("f", {Term::var("X"), Term::var("X")});
  Term rhs = Term::app("f", {Term::sym("a"), Term::var("Y")});
  REQUIRE(unify(lhs, rhs, theta));
  CHECK(applySubst(Term::var("Y"), theta) == Term::sym("a"));
  CHECK(applySubst(lhs, theta) == applySubst(rhs, theta));
}

TEST_CASE("unify rejects clashes") {
  Subst theta;
  CHECK_FALSE(unify(Term::sym("a"), Term::sym("b"), theta));
  Subst theta2;
  CHECK_FALSE(unify(Term::app("f", {Term::sym("a")}),
                    Term::app("g", {Term::sym("a")}), theta2));
  Subst theta3;
  CHECK_FALSE(unify(Term::app("f", {Term::var("X"), Term::var("X")}),
                    Term::app("f", {Term::sym("a"), Term::sym("b")}), theta3));
}

TEST_CASE("atom unification") {
  Subst theta;
  Atom pattern{"at", {Term::var("Who"), Term::var("Where")}};
  Atom fact{"at", {Term::sym("robot"), Term::sym("r111")}};
  REQUIRE(unify(pattern, fact, theta));
  CHECK(applySubst(pattern, theta) == fact);
  Subst theta2;
  CHECK_FALSE(unify(Atom{"at", {Term::var("X")}}, fact, theta2));
}

TEST_CASE("arithmetic evaluation") {
  Term expr = Term::app("+", {Term::num(1), Term::app("*", {Term::num(2), Term::num(3)})});
  CHECK(evalArith(expr) == Term::num(7));
  CHECK(evalArith(Term::app("-", {Term::num(Rational(1, 2)), Term::num(Rational(1, 3))})) ==
        Term::num(Rational(1, 6)));
  CHECK(evalArith(Term::app("/", {Term::num(1), Term::num(3)})) ==
        Term::num(Rational(1, 3)));
  CHECK(isArithFunctor("+", 2));
  CHECK_FALSE(isArithFunctor("f", 2));
  CHECK_THROWS_AS(evalArith(Term::app("+", {Term::sym("a"), Term::num(1)})),
                  ArithmeticError);
}

TEST_CASE("collectVars") {
  std::vector<std::string> vars;
  collectVars(Term::app("f", {Term::var("X"), Term::app("g", {Term::var("Y"), Term::var("X")})}),
              vars);
  CHECK(vars == std::vector<std::string>{"X", "Y"});
}

TEST_CASE("atomFromTerm") {
  Atom a = atomFromTerm(Term::app("at", {Term::sym("key"), s0()}));
  CHECK(a.pred == "at");
  CHECK(a.args.size() == 2);
  CHECK(a.asTerm() == Term::app("at", {Term::sym("key"), s0()}));
  Atom b = atomFromTerm(Term::sym("at_key"));
  CHECK(b.pred == "at_key");
  CHECK(b.args.empty());
}
