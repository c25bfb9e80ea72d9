#pragma once

#include "iclsc/plan.hpp"
#include "iclsc/pstrips.hpp"

namespace icl {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

class DuplicateDeclaration : public std::runtime_error {
 public:
  explicit DuplicateDeclaration(const std::string& what) : std::runtime_error(what) {}
};

/// Domain language: `random([atom : prob, ...]).` declares an alternative,
/// `action(t).` and `observable(t).` declare templates, everything else is a
/// clause `head <- lit & ... & lit.` or a fact `head.`. Literals are atoms,
/// `~atom`, `X \= Y` and `X is Expr`. `%` starts a comment. Variables are
/// uppercase, constants lowercase.
Theory parseDomain(const std::string& text);

/// Plan language: `skip`, a ground action term, `P; Q`,
/// `if C then P [else Q] endIf` and `while C do P endDo[(bound=N)]`.
Plan parsePlan(const std::string& text);

/// Stochastic action file:
///   fluents: p q r
///   init: p
///   action: flip
///   when: p & ~q
///     1/2: +r -p
///     1/2: -q
struct PStripsDomain {
  std::vector<std::string> fluents;
  std::vector<std::string> init;
  std::vector<PStripsAction> actions;
};

PStripsDomain parsePStrips(const std::string& text);

/// Prints back the domain language; parseDomain(printTheory(t)) == t.
std::string printTheory(const Theory& theory);

/// Domain text for an imported stochastic action set: the translated rules
/// plus `init` facts at s0.
std::string printImported(const PStripsDomain& domain);

}  // namespace icl
