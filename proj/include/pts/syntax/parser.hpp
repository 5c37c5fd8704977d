/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ast.hpp"
#include "ops.hpp"

namespace pts {

namespace detail {

enum class Tok { Ident, Int, Lit, Const, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  static const char *multi[] = {"<=", "<-", "\\/"};
  std::vector<Token> out;
  std::size_t i = 0;
  auto word = [&](std::size_t from) {
    std::size_t j = from;
    while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
      ++j;
    return j;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = word(i);
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      if (j == i + 1)
        throw SyntaxError("expected digits after '#'", i);
      out.push_back({Tok::Lit, std::string(src.substr(i + 1, j - i - 1)), i});
      i = j;
      continue;
    }
    if (c == '$') {
      std::size_t j = word(i + 1);
      if (j == i + 1)
        throw SyntaxError("expected a constant name after '$'", i);
      out.push_back({Tok::Const, std::string(src.substr(i + 1, j - i - 1)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char *m : multi) {
      if (src.substr(i, 2) == m) {
        out.push_back({Tok::Punct, m, i});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched)
      continue;
    if (std::string_view("()[]{},;|.!&~=*+-/").find(c) == std::string_view::npos)
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    out.push_back({Tok::Punct, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

inline bool is_keyword(const std::string &s) {
  static const char *kws[] = {"E1", "A1", "ci", "cpi", "inc", "SUM", "exists", "forall", "sgn", "max", "fp"};
  for (const char *k : kws)
    if (s == k)
      return true;
  return false;
}

class ParserBase {
public:
  explicit ParserBase(std::string_view src) : toks_(tokenize(src)) {}

protected:
  const Token &peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(std::string_view punct, std::size_t ahead = 0) const {
    const Token &t = peek(ahead);
    return t.kind == Tok::Punct && t.text == punct;
  }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(std::string_view punct) {
    if (!at(punct))
      return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view punct) {
    if (!accept(punct))
      fail("expected '" + std::string(punct) + "'");
  }
  [[noreturn]] void fail(const std::string &msg) const {
    const Token &t = peek();
    throw SyntaxError(msg + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"),
                      t.pos);
  }
  void expect_end() {
    if (peek().kind != Tok::End)
      fail("unexpected trailing input");
  }

  Var variable() {
    const Token &t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      fail("expected a variable");
    ++pos_;
    return t.text;
  }

  std::vector<Var> variables() {
    std::vector<Var> out{variable()};
    while (accept(","))
      out.push_back(variable());
    return out;
  }

  Term term() {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Int:
    case Tok::Lit:
      ++pos_;
      return Term::lit(std::stoi(t.text));
    case Tok::Const:
      ++pos_;
      return Term::constant(t.text);
    default:
      return Term::var(variable());
    }
  }

  std::vector<Term> terms() {
    std::vector<Term> out{term()};
    while (accept(","))
      out.push_back(term());
    return out;
  }

  bool at_relation() const {
    return peek().kind == Tok::Ident && !is_keyword(peek().text) && at("(", 1);
  }

  /// R(t,...) or t=t.
  Qf literal_atom() {
    if (at_relation()) {
      std::string rel = peek().text;
      ++pos_;
      expect("(");
      std::vector<Term> args;
      if (!at(")"))
        args = terms();
      expect(")");
      return qf::atom(rel, std::move(args));
    }
    Term lhs = term();
    expect("=");
    return qf::eq(lhs, term());
  }

  /// Quantifier-free formula; `allow_or` admits '\/' (SUM guards).
  Qf qf_formula(bool allow_or) {
    Qf lhs = qf_conj(allow_or);
    while (allow_or && accept("\\/"))
      lhs = qf::disj(lhs, qf_conj(allow_or));
    return lhs;
  }
  Qf qf_conj(bool allow_or) {
    Qf lhs = qf_unary(allow_or);
    while (accept("&"))
      lhs = qf::conj(lhs, qf_unary(allow_or));
    return lhs;
  }
  Qf qf_unary(bool allow_or) {
    if (accept("!"))
      return qf::neg(qf_unary(allow_or));
    if (accept("(")) {
      Qf inner = qf_formula(allow_or);
      expect(")");
      return inner;
    }
    return literal_atom();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

class FoptParser : public ParserBase {
public:
  using ParserBase::ParserBase;

  Fopt parse() {
    Fopt f = formula();
    expect_end();
    return f;
  }

private:
  Fopt formula() {
    Fopt lhs = conj();
    while (accept("\\/"))
      lhs = fo::weak_or(lhs, conj());
    return lhs;
  }

  Fopt conj() {
    Fopt lhs = unary();
    while (accept("&"))
      lhs = fo::conj(lhs, unary());
    return lhs;
  }

  Qf as_delta(const Fopt &f, std::size_t pos) const {
    if (auto d = f.as<fo::Delta>())
      return d->delta;
    throw SyntaxError("expected a quantifier-free formula", pos);
  }

  Fopt unary() {
    if (accept("~"))
      return fo::dotneg(unary());
    if (at("!")) {
      std::size_t p = peek().pos;
      ++pos_;
      return fo::delta(qf::neg(as_delta(operand(false), p)));
    }
    if (at_word("E1") || at_word("A1")) {
      bool exists = peek().text == "E1";
      ++pos_;
      auto vs = variables();
      expect(".");
      Fopt body = formula();
      for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        body = exists ? fo::exists1(*it, body) : fo::forall1(*it, body);
      return body;
    }
    return operand(true);
  }

  /// `!` binds to a single operand; only a full operand may start (d) <= (d).
  Fopt operand(bool allow_leq) {
    if (at("!")) {
      std::size_t p = peek().pos;
      ++pos_;
      return fo::delta(qf::neg(as_delta(operand(false), p)));
    }
    if (at("(")) {
      std::size_t p = peek().pos;
      ++pos_;
      Fopt inner = formula();
      expect(")");
      if (allow_leq && at("<=")) {
        Qf lhs = as_delta(inner, p);
        ++pos_;
        std::size_t q = peek().pos;
        expect("(");
        Fopt rhs = formula();
        expect(")");
        return fo::leq(lhs, as_delta(rhs, q));
      }
      return inner;
    }
    if (at_word("ci") && at("(", 1)) {
      pos_ += 2;
      Qf d0 = qf_formula(false);
      expect(";");
      Qf d1 = qf_formula(false);
      expect(";");
      Qf d2 = qf_formula(false);
      expect(")");
      return fo::ci(d0, d1, d2);
    }
    if (at_word("cpi") && at("(", 1)) {
      pos_ += 2;
      Qf d0 = qf_formula(false);
      expect("|");
      Qf d1 = qf_formula(false);
      expect(",");
      Qf d2 = qf_formula(false);
      expect("|");
      Qf d3 = qf_formula(false);
      expect(")");
      return fo::cpi(d0, d1, d2, d3);
    }
    if (at_word("inc") && at("(", 1)) {
      std::size_t p = peek().pos;
      pos_ += 2;
      auto lhs = terms();
      expect(";");
      auto rhs = terms();
      expect(")");
      if (lhs.size() != rhs.size())
        throw SyntaxError("inclusion tuples differ in length", p);
      return fo::incl(lhs, rhs);
    }
    return fo::delta(literal_atom());
  }
};

class MfParser : public ParserBase {
public:
  using ParserBase::ParserBase;

  MfFormula parse() {
    MfFormula f = formula();
    expect_end();
    return f;
  }

  NumTerm parse_term() {
    NumTerm t = numterm();
    expect_end();
    return t;
  }

private:
  MfFormula formula() {
    MfFormula lhs = conj();
    while (accept("\\/"))
      lhs = mf::disj(lhs, conj());
    return lhs;
  }

  MfFormula conj() {
    MfFormula lhs = unary();
    while (accept("&"))
      lhs = mf::conj(lhs, unary());
    return lhs;
  }

  MfFormula unary() {
    if (accept("!"))
      return mf::neg(unary());
    if (at_word("exists") || at_word("forall")) {
      bool exists = peek().text == "exists";
      ++pos_;
      auto vs = variables();
      expect(".");
      MfFormula body = formula();
      for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        body = exists ? mf::exists(*it, body) : mf::forall(*it, body);
      return body;
    }
    return primary();
  }

  MfFormula primary() {
    // A numeric comparison is tried first; on failure the same tokens are
    // reread as a formula.
    std::size_t save = pos_;
    try {
      NumTerm lhs = numterm();
      if (accept("<="))
        return mf::leq(lhs, numterm());
    } catch (const SyntaxError &) {
    }
    pos_ = save;
    if (accept("(")) {
      MfFormula inner = formula();
      expect(")");
      return inner;
    }
    return mf::atom(literal_atom());
  }

  NumTerm numterm() {
    NumTerm lhs = factor();
    while (accept("*"))
      lhs = mf::times(lhs, factor());
    return lhs;
  }

  NumTerm factor() {
    if (at_word("SUM") && at("{", 1)) {
      pos_ += 2;
      std::vector<Var> bound;
      if (!at("|"))
        bound = variables();
      expect("|");
      Guard g = qf_formula(true);
      expect("}");
      expect("(");
      NumTerm body = numterm();
      expect(")");
      return mf::sum(bound, body, g);
    }
    if (accept("(")) {
      NumTerm inner = numterm();
      expect(")");
      return inner;
    }
    if (!at_relation())
      fail("expected a numerical term");
    std::string fn = peek().text;
    ++pos_;
    expect("(");
    std::vector<Term> args;
    if (!at(")"))
      args = terms();
    expect(")");
    return mf::fn(fn, std::move(args));
  }
};

class FfpParser : public ParserBase {
public:
  using ParserBase::ParserBase;

  FfpTerm parse() {
    FfpTerm t = sum();
    expect_end();
    return t;
  }

private:
  FfpTerm sum() {
    FfpTerm lhs = product();
    while (true) {
      if (accept("+"))
        lhs = ff::add(lhs, product());
      else if (accept("-"))
        lhs = ff::sub(lhs, product());
      else
        return lhs;
    }
  }

  FfpTerm product() {
    FfpTerm lhs = atom();
    while (true) {
      if (accept("*"))
        lhs = ff::mul(lhs, atom());
      else if (accept("/"))
        lhs = ff::div(lhs, atom());
      else
        return lhs;
    }
  }

  FfpTerm atom() {
    const Token &t = peek();
    if (t.kind == Tok::Int) {
      if (t.text != "0" && t.text != "1")
        fail("only the constants 0 and 1 are available");
      ++pos_;
      return t.text == "0" ? ff::zero() : ff::one();
    }
    if (accept("(")) {
      FfpTerm inner = sum();
      expect(")");
      return inner;
    }
    if (at_word("sgn")) {
      ++pos_;
      expect("(");
      FfpTerm arg = sum();
      expect(")");
      return ff::sgn(arg);
    }
    if (at_word("max")) {
      ++pos_;
      expect("{");
      auto vs = variables();
      expect("}");
      expect("(");
      FfpTerm body = sum();
      expect(")");
      return ff::max(vs, body);
    }
    if (at_word("fp")) {
      ++pos_;
      expect("[");
      std::string z = variable();
      expect("(");
      std::vector<Var> params;
      if (!at(")"))
        params = variables();
      expect(")");
      expect("<-");
      FfpTerm body = sum();
      expect("]");
      expect("(");
      std::vector<Var> args;
      if (!at(")"))
        args = variables();
      expect(")");
      if (args.size() != params.size())
        throw SyntaxError("fixed point applied to the wrong number of arguments", t.pos);
      return ff::fp(z, params, body, args);
    }
    if (!at_relation())
      fail("expected a term");
    std::string fn = t.text;
    ++pos_;
    expect("(");
    std::vector<Var> args;
    if (!at(")"))
      args = variables();
    expect(")");
    return ff::fn(fn, args);
  }
};

} // namespace detail

/// Parses a formula and checks that it lies in `dialect`.
inline Fopt parse(std::string_view text, Dialect dialect) {
  Fopt f = detail::FoptParser(text).parse();
  if (!in_dialect(f, dialect))
    throw DialectError(std::string("formula is not in ") + dialect_name(dialect));
  return f;
}

/// Parses a formula of any dialect.
inline Fopt parse_any(std::string_view text) { return detail::FoptParser(text).parse(); }

inline MfFormula parse_mf(std::string_view text) { return detail::MfParser(text).parse(); }

inline NumTerm parse_numterm(std::string_view text) { return detail::MfParser(text).parse_term(); }

inline FfpTerm parse_ffp(std::string_view text) { return detail::FfpParser(text).parse(); }

} // namespace pts
