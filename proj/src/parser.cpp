#include "goedel/parser.hpp"

#include <cctype>
#include <map>
#include <set>

namespace goedel {

namespace {

enum class Tok { LParen, RParen, Arrow, Bar, Amp, Tilde, Less, Iff, Dot, Comma, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int len) {
    out.push_back({k, std::move(t), line, col});
    col += len;
    i += static_cast<std::size_t>(len);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '(') {
      push(Tok::LParen, "(", 1);
      continue;
    }
    if (c == ')') {
      push(Tok::RParen, ")", 1);
      continue;
    }
    if (c == '|') {
      push(Tok::Bar, "|", 1);
      continue;
    }
    if (c == '&') {
      push(Tok::Amp, "&", 1);
      continue;
    }
    if (c == '~') {
      push(Tok::Tilde, "~", 1);
      continue;
    }
    if (c == '.') {
      push(Tok::Dot, ".", 1);
      continue;
    }
    if (c == ',') {
      push(Tok::Comma, ",", 1);
      continue;
    }
    if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(Tok::Arrow, "->", 2);
        continue;
      }
      throw ParseError("stray '-'", line, col);
    }
    if (c == '<') {
      if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
        push(Tok::Iff, "<->", 3);
        continue;
      }
      push(Tok::Less, "<", 1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Tok::Ident, text.substr(i, j - i), static_cast<int>(j - i));
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseResult run() {
    FormulaPtr f = parse_impl();
    expect(Tok::End, "end of input");
    ParseResult r;
    r.formula = std::move(f);
    for (const auto& v : free_seen_) r.warnings.push_back("free variable: " + v);
    return r;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
  std::set<std::string> free_seen_;
  std::map<std::string, std::size_t> pred_arity_;
  std::map<std::string, std::size_t> func_arity_;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }
  void expect(Tok k, const std::string& what) {
    if (cur().kind != k) fail("expected " + what);
    ++pos_;
  }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }

  static bool reserved(const std::string& s) { return s == "D" || s == "bot" || s == "top"; }

  bool at_quantifier() const {
    return cur().kind == Tok::Ident && (cur().text == "A" || cur().text == "E") &&
           peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot;
  }

  FormulaPtr parse_impl() {
    FormulaPtr lhs = parse_disj();
    if (accept(Tok::Arrow)) return f_implies(std::move(lhs), parse_impl());
    return lhs;
  }

  FormulaPtr parse_disj() {
    FormulaPtr f = parse_conj();
    while (accept(Tok::Bar)) f = f_or(std::move(f), parse_conj());
    return f;
  }

  FormulaPtr parse_conj() {
    FormulaPtr f = parse_unary();
    while (accept(Tok::Amp)) f = f_and(std::move(f), parse_unary());
    return f;
  }

  FormulaPtr parse_unary() {
    if (accept(Tok::Tilde)) return f_not(parse_unary());
    if (cur().kind == Tok::Ident && cur().text == "D") {
      ++pos_;
      return f_delta(parse_unary());
    }
    if (at_quantifier()) {
      bool universal = cur().text == "A";
      ++pos_;
      std::string var = cur().text;
      if (reserved(var)) fail("reserved keyword '" + var + "' cannot be a variable");
      ++pos_;
      expect(Tok::Dot, "'.'");
      scope_.push_back(var);
      FormulaPtr body = parse_unary();
      scope_.pop_back();
      return universal ? f_forall(var, std::move(body)) : f_exists(var, std::move(body));
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (accept(Tok::LParen)) {
      FormulaPtr a = parse_impl();
      if (accept(Tok::Less)) {
        FormulaPtr b = parse_impl();
        expect(Tok::RParen, "')'");
        return f_less(std::move(a), std::move(b));
      }
      if (accept(Tok::Iff)) {
        FormulaPtr b = parse_impl();
        expect(Tok::RParen, "')'");
        return f_iff(std::move(a), std::move(b));
      }
      expect(Tok::RParen, "')'");
      return a;
    }
    if (cur().kind != Tok::Ident) fail("expected a formula");
    std::string name = cur().text;
    Token name_tok = cur();
    ++pos_;
    if (name == "bot") return f_bot();
    if (name == "top") return f_top();
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      args.push_back(parse_term());
      while (accept(Tok::Comma)) args.push_back(parse_term());
      expect(Tok::RParen, "')'");
    }
    auto [it, inserted] = pred_arity_.emplace(name, args.size());
    if (!inserted && it->second != args.size())
      throw ParseError("predicate '" + name + "' used with arities " +
                           std::to_string(it->second) + " and " + std::to_string(args.size()),
                       name_tok.line, name_tok.col);
    return f_atom(std::move(name), std::move(args));
  }

  Term parse_term() {
    if (cur().kind != Tok::Ident) fail("expected a term");
    std::string name = cur().text;
    Token name_tok = cur();
    if (reserved(name)) fail("reserved keyword '" + name + "' cannot appear in a term");
    ++pos_;
    if (accept(Tok::LParen)) {
      std::vector<Term> args;
      args.push_back(parse_term());
      while (accept(Tok::Comma)) args.push_back(parse_term());
      expect(Tok::RParen, "')'");
      auto [it, inserted] = func_arity_.emplace(name, args.size());
      if (!inserted && it->second != args.size())
        throw ParseError("function '" + name + "' used with arities " +
                             std::to_string(it->second) + " and " + std::to_string(args.size()),
                         name_tok.line, name_tok.col);
      return Term::app(std::move(name), std::move(args));
    }
    if (func_arity_.count(name))
      throw ParseError("function '" + name + "' used with arities " +
                           std::to_string(func_arity_[name]) + " and 0",
                       name_tok.line, name_tok.col);
    bool bound = false;
    for (const auto& v : scope_)
      if (v == name) bound = true;
    if (!bound) free_seen_.insert(name);
    return Term::var(std::move(name));
  }
};

}  // namespace

ParseResult parse_formula(const std::string& text) { return Parser(lex(text)).run(); }

}  // namespace goedel
