#include "iclsc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace icl {

namespace {

struct Token {
  enum class Kind { Ident, Var, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  Rational value;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(&text) {}

  Token next() {
    skipSpace();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_->size()) return tok;
    char c = (*text_)[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::Ident;
      tok.text = takeWord();
      return tok;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Token::Kind::Var;
      tok.text = takeWord();
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::Number;
      tok.text = takeNumber();
      auto value = parseRational(tok.text);
      if (!value) throw SyntaxError("bad number '" + tok.text + "'", tok.line, tok.column);
      tok.value = *value;
      return tok;
    }
    tok.kind = Token::Kind::Punct;
    if (c == '<' && pos_ + 1 < text_->size() && (*text_)[pos_ + 1] == '-') {
      tok.text = "<-";
      advance(2);
      return tok;
    }
    if (c == '\\' && pos_ + 1 < text_->size() && (*text_)[pos_ + 1] == '=') {
      tok.text = "\\=";
      advance(2);
      return tok;
    }
    if (std::string("()[],:.&~;+-*/=").find(c) != std::string::npos) {
      tok.text = std::string(1, c);
      advance(1);
      return tok;
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line_,
                      column_);
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_->size(); ++i, ++pos_) {
      if ((*text_)[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void skipSpace() {
    while (pos_ < text_->size()) {
      char c = (*text_)[pos_];
      if (c == '%') {
        while (pos_ < text_->size() && (*text_)[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string takeWord() {
    std::size_t start = pos_;
    while (pos_ < text_->size() &&
           (std::isalnum(static_cast<unsigned char>((*text_)[pos_])) ||
            (*text_)[pos_] == '_'))
      advance(1);
    return text_->substr(start, pos_ - start);
  }

  std::string takeNumber() {
    std::size_t start = pos_;
    while (pos_ < text_->size() && std::isdigit(static_cast<unsigned char>((*text_)[pos_])))
      advance(1);
    if (pos_ + 1 < text_->size() && ((*text_)[pos_] == '.' || (*text_)[pos_] == '/') &&
        std::isdigit(static_cast<unsigned char>((*text_)[pos_ + 1]))) {
      advance(1);
      while (pos_ < text_->size() &&
             std::isdigit(static_cast<unsigned char>((*text_)[pos_])))
        advance(1);
    }
    return text_->substr(start, pos_ - start);
  }

  const std::string* text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { current_ = lexer_.next(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token tok = current_;
    current_ = lexer_.next();
    return tok;
  }

  bool atPunct(const std::string& text) const {
    return current_.kind == Token::Kind::Punct && current_.text == text;
  }

  bool atIdent(const std::string& text) const {
    return current_.kind == Token::Kind::Ident && current_.text == text;
  }

  void expectPunct(const std::string& text) {
    if (!atPunct(text)) fail("expected '" + text + "'");
    take();
  }

  void expectIdent(const std::string& text) {
    if (!atIdent(text)) fail("expected '" + text + "'");
    take();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " (found '" +
                          (current_.kind == Token::Kind::End ? "end of input"
                                                            : current_.text) +
                          "')",
                      current_.line, current_.column);
  }

  Term parseExpr() {
    Term left = parseMul();
    while (atPunct("+") || atPunct("-")) {
      std::string op = take().text;
      Term right = parseMul();
      left = Term::app(op, {left, right});
    }
    return left;
  }

  Atom parseAtom() {
    Term t = parseExpr();
    if (t.kind() != Term::Kind::Sym && t.kind() != Term::Kind::App)
      fail("expected an atom");
    if (t.kind() == Term::Kind::App && isArithFunctor(t.name(), t.args().size()))
      fail("expected an atom");
    return atomFromTerm(t);
  }

 private:
  Term parseMul() {
    Term left = parseUnary();
    while (atPunct("*") || atPunct("/")) {
      std::string op = take().text;
      Term right = parseUnary();
      left = Term::app(op, {left, right});
    }
    return left;
  }

  Term parseUnary() {
    if (atPunct("-")) {
      take();
      if (peek().kind == Token::Kind::Number) return Term::num(-take().value);
      return Term::app("-", {parseUnary()});
    }
    return parsePrimary();
  }

  Term parsePrimary() {
    if (atPunct("(")) {
      take();
      Term t = parseExpr();
      expectPunct(")");
      return t;
    }
    if (peek().kind == Token::Kind::Number) return Term::num(take().value);
    if (peek().kind == Token::Kind::Var) return Term::var(take().text);
    if (peek().kind == Token::Kind::Ident) {
      std::string name = take().text;
      if (!atPunct("(")) return Term::sym(name);
      take();
      std::vector<Term> args;
      args.push_back(parseExpr());
      while (atPunct(",")) {
        take();
        args.push_back(parseExpr());
      }
      expectPunct(")");
      return Term::app(name, std::move(args));
    }
    fail("expected a term");
  }

  Lexer lexer_;
  Token current_;
};

Literal parseLiteral(Parser& p) {
  if (p.atPunct("~")) {
    p.take();
    return Literal::neg(p.parseAtom());
  }
  Term lhs = p.parseExpr();
  if (p.atPunct("\\=")) {
    p.take();
    return Literal::neq(lhs, p.parseExpr());
  }
  if (p.atIdent("is")) {
    p.take();
    return Literal::is(lhs, p.parseExpr());
  }
  if (lhs.kind() != Term::Kind::Sym && lhs.kind() != Term::Kind::App)
    p.fail("expected a literal");
  return Literal::pos(atomFromTerm(lhs));
}

std::optional<std::string> schemaSituationVar(Parser& p,
                                              const AlternativeSchema& schema) {
  std::vector<std::string> vars;
  for (const auto& [atom, prob] : schema.members)
    for (const auto& arg : atom.args) collectVars(arg, vars);
  if (vars.empty()) return std::nullopt;
  if (vars.size() > 1)
    p.fail("an alternative may use at most one shared variable");
  return vars.front();
}

}  // namespace

Theory parseDomain(const std::string& text) {
  Parser p(text);
  Theory theory;
  while (p.peek().kind != Token::Kind::End) {
    if (p.atIdent("random")) {
      // Commit to the declaration form only on `random([`; otherwise it is
      // an ordinary clause head named random.
      Parser probe = p;
      probe.take();
      if (probe.atPunct("(")) {
        probe.take();
        if (probe.atPunct("[")) {
          p = probe;
          p.take();
          AlternativeSchema schema;
          while (true) {
            Atom atom = p.parseAtom();
            p.expectPunct(":");
            if (p.peek().kind != Token::Kind::Number) p.fail("expected a probability");
            schema.members.emplace_back(atom, p.take().value);
            if (p.atPunct(",")) {
              p.take();
              continue;
            }
            break;
          }
          p.expectPunct("]");
          p.expectPunct(")");
          p.expectPunct(".");
          schema.situationVar = schemaSituationVar(p, schema);
          theory.schemas.push_back(std::move(schema));
          continue;
        }
      }
    }
    if (p.atIdent("action") || p.atIdent("observable")) {
      Parser probe = p;
      std::string which = probe.take().text;
      if (probe.atPunct("(")) {
        p = probe;
        p.take();
        Term tmpl = p.parseExpr();
        p.expectPunct(")");
        p.expectPunct(".");
        auto& list = which == "action" ? theory.actions : theory.observables;
        if (std::find(list.begin(), list.end(), tmpl) != list.end())
          throw DuplicateDeclaration("duplicate " + which + " declaration " +
                                     tmpl.toString());
        list.push_back(tmpl);
        continue;
      }
    }
    Clause clause;
    clause.head = p.parseAtom();
    if (p.atPunct("<-")) {
      p.take();
      clause.body.push_back(parseLiteral(p));
      while (p.atPunct("&") || p.atPunct(",")) {
        p.take();
        clause.body.push_back(parseLiteral(p));
      }
    }
    p.expectPunct(".");
    theory.facts.add(std::move(clause));
  }
  return theory;
}

namespace {

Plan parseSeq(Parser& p);

Plan parseStep(Parser& p) {
  if (p.atIdent("skip")) {
    p.take();
    return Plan::skip();
  }
  if (p.atIdent("if")) {
    p.take();
    Term condition = p.parseExpr();
    p.expectIdent("then");
    Plan thenPlan = parseSeq(p);
    Plan elsePlan = Plan::skip();
    if (p.atIdent("else")) {
      p.take();
      elsePlan = parseSeq(p);
    }
    p.expectIdent("endIf");
    return Plan::ifThenElse(condition, thenPlan, elsePlan);
  }
  if (p.atIdent("while")) {
    p.take();
    Term condition = p.parseExpr();
    p.expectIdent("do");
    Plan body = parseSeq(p);
    p.expectIdent("endDo");
    int bound = 100;
    if (p.atPunct("(")) {
      p.take();
      p.expectIdent("bound");
      p.expectPunct("=");
      if (p.peek().kind != Token::Kind::Number) p.fail("expected a bound");
      Rational value = p.take().value;
      Rational integral{numerator(value)};
      if (integral != value || value < 1) p.fail("bound must be a positive integer");
      bound = static_cast<int>(numerator(value).convert_to<long>());
      p.expectPunct(")");
    }
    return Plan::whileLoop(condition, body, bound);
  }
  Term action = p.parseExpr();
  if (action.kind() != Term::Kind::Sym && action.kind() != Term::Kind::App)
    p.fail("expected an action");
  return Plan::primitive(action);
}

Plan parseSeq(Parser& p) {
  Plan first = parseStep(p);
  if (p.atPunct(";")) {
    p.take();
    return Plan::seq(first, parseSeq(p));
  }
  return first;
}

}  // namespace

Plan parsePlan(const std::string& text) {
  Parser p(text);
  Plan plan = parseSeq(p);
  if (p.peek().kind != Token::Kind::End) p.fail("trailing input after plan");
  return plan;
}

namespace {

std::vector<std::string> splitWords(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

bool identifierLike(const std::string& word) {
  if (word.empty() || !std::islower(static_cast<unsigned char>(word[0])))
    return false;
  return std::all_of(word.begin(), word.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

PStripsDomain parsePStrips(const std::string& text) {
  PStripsDomain domain;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  PStripsAction* action = nullptr;
  PStripsTuple* tuple = nullptr;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = raw.substr(0, raw.find('%'));
    auto firstNonSpace = line.find_first_not_of(" \t\r");
    if (firstNonSpace == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw SyntaxError("expected 'keyword:' or 'probability:'", lineNo, 1);
    std::string key = line.substr(firstNonSpace, colon - firstNonSpace);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
      key.pop_back();
    std::string rest = line.substr(colon + 1);
    if (key == "fluents" || key == "init") {
      auto& target = key == "fluents" ? domain.fluents : domain.init;
      for (const auto& word : splitWords(rest)) {
        if (!identifierLike(word))
          throw SyntaxError("bad fluent name '" + word + "'", lineNo, 1);
        target.push_back(word);
      }
    } else if (key == "action") {
      auto words = splitWords(rest);
      if (words.size() != 1 || !identifierLike(words[0]))
        throw SyntaxError("expected one action name", lineNo, 1);
      domain.actions.push_back(PStripsAction{words[0], {}});
      action = &domain.actions.back();
      tuple = nullptr;
    } else if (key == "when") {
      if (!action) throw SyntaxError("'when:' before any 'action:'", lineNo, 1);
      action->tuples.push_back(PStripsTuple{});
      tuple = &action->tuples.back();
      std::string cond;
      for (const auto& word : splitWords(rest)) cond += word;
      std::size_t pos = 0;
      while (pos < cond.size()) {
        bool positive = true;
        if (cond[pos] == '~') {
          positive = false;
          ++pos;
        }
        auto end = cond.find('&', pos);
        std::string name = cond.substr(pos, end == std::string::npos ? end : end - pos);
        if (name == "true" && positive && tuple->trigger.empty() &&
            end == std::string::npos) {
          break;
        }
        if (!identifierLike(name))
          throw SyntaxError("bad trigger literal '" + name + "'", lineNo, 1);
        tuple->trigger.push_back(FluentLiteral{name, positive});
        if (end == std::string::npos) break;
        pos = end + 1;
      }
    } else {
      if (!tuple) throw SyntaxError("outcome line before any 'when:'", lineNo, 1);
      PStripsOutcome outcome;
      auto prob = parseRational(key);
      if (!prob) throw SyntaxError("bad probability '" + key + "'", lineNo, 1);
      outcome.probability = *prob;
      for (const auto& word : splitWords(rest)) {
        if (word.size() < 2 || (word[0] != '+' && word[0] != '-') ||
            !identifierLike(word.substr(1)))
          throw SyntaxError("bad effect '" + word + "'", lineNo, 1);
        outcome.effects.push_back(SignedFluent{word.substr(1), word[0] == '+'});
      }
      tuple->outcomes.push_back(std::move(outcome));
    }
  }
  return domain;
}

std::string printTheory(const Theory& theory) {
  std::ostringstream out;
  for (const auto& schema : theory.schemas) {
    out << "random([";
    for (std::size_t i = 0; i < schema.members.size(); ++i) {
      if (i) out << ", ";
      out << schema.members[i].first.toString() << " : "
          << rationalToString(schema.members[i].second);
    }
    out << "]).\n";
  }
  for (const auto& a : theory.actions) out << "action(" << a.toString() << ").\n";
  for (const auto& o : theory.observables)
    out << "observable(" << o.toString() << ").\n";
  for (const auto& clause : theory.facts.clauses) {
    out << clause.head.toString();
    for (std::size_t i = 0; i < clause.body.size(); ++i)
      out << (i == 0 ? " <- " : " & ") << clause.body[i].toString();
    out << ".\n";
  }
  return out.str();
}

std::string printImported(const PStripsDomain& domain) {
  Theory theory = importPStrips(domain.actions, domain.fluents);
  std::ostringstream out;
  out << printTheory(theory);
  for (const auto& fluent : domain.init) out << fluent << "(s0).\n";
  return out.str();
}

}  // namespace icl
