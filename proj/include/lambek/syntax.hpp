// Concrete ASCII grammar: rendering and recursive-descent parsing.
//
//   modal   A ::= p | bot | ~A | <>A | []A | A /\ B | A \/ B | A -> B | (A)
//   lambek  A ::= p | bot | top | one | p_bot | p_top | p{A} | ~A | <>A | [v]A
//               | A * B | A \ B | A / B | A /\ B | A \/ B | (A)
//   trees   G ::= A | G o G | < G >
//   sequent     G => A  |  => A
//
// Precedence, loosest first: ->, \/, /\, \ and / (non-associative), *, unary.
#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambek/formula.hpp"

namespace lambek {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

inline int level(const ModalFormula& f) {
  switch (f.kind()) {
    case MKind::Implies: return 0;
    case MKind::Or: return 1;
    case MKind::And: return 2;
    case MKind::Not: case MKind::Diamond: return 5;
    default: return 6;
  }
}

inline int level(const LFormula& f) {
  switch (f.conn()) {
    case Conn::Or: return 1;
    case Conn::And: return 2;
    case Conn::Under: case Conn::Over: return 3;
    case Conn::Prod: return 4;
    case Conn::Not: case Conn::Dia: case Conn::BoxDown: return 5;
    default: return 6;
  }
}

inline void render_to(const ModalFormula& f, std::string& out);
inline void render_to(const LFormula& f, std::string& out);

template <typename F>
void render_operand(const F& child, int parent_level, bool unary_parent, std::string& out) {
  const int l = level(child);
  const bool parens = unary_parent ? l < 5 : l <= parent_level;
  if (parens) out += '(';
  render_to(child, out);
  if (parens) out += ')';
}

inline void render_to(const ModalFormula& f, std::string& out) {
  switch (f.kind()) {
    case MKind::Atom: out += f.name(); return;
    case MKind::Bottom: out += "bot"; return;
    case MKind::Not: out += '~'; render_operand(f.child(), 5, true, out); return;
    case MKind::Diamond: out += "<>"; render_operand(f.child(), 5, true, out); return;
    default: break;
  }
  const char* op = f.kind() == MKind::And ? " /\\ " : f.kind() == MKind::Or ? " \\/ " : " -> ";
  render_operand(f.left(), level(f), false, out);
  out += op;
  render_operand(f.right(), level(f), false, out);
}

inline void render_to(const LFormula& f, std::string& out) {
  switch (f.conn()) {
    case Conn::Atom: out += f.name(); return;
    case Conn::Fresh:
      if (f.tag() == FreshTag::BotMark) {
        out += "p_bot";
      } else if (f.tag() == FreshTag::TopMark) {
        out += "p_top";
      } else {
        out += "p{";
        render_to(f.payload(), out);
        out += '}';
      }
      return;
    case Conn::Bottom: out += "bot"; return;
    case Conn::Top: out += "top"; return;
    case Conn::Unit: out += "one"; return;
    case Conn::Not: out += '~'; render_operand(f.child(), 5, true, out); return;
    case Conn::Dia: out += "<>"; render_operand(f.child(), 5, true, out); return;
    case Conn::BoxDown: out += "[v]"; render_operand(f.child(), 5, true, out); return;
    default: break;
  }
  const char* op = " * ";
  switch (f.conn()) {
    case Conn::And: op = " /\\ "; break;
    case Conn::Or: op = " \\/ "; break;
    case Conn::Under: op = " \\ "; break;
    case Conn::Over: op = " / "; break;
    default: break;
  }
  render_operand(f.left(), level(f), false, out);
  out += op;
  render_operand(f.right(), level(f), false, out);
}

inline void render_to(const StructTree& t, std::string& out) {
  switch (t.kind()) {
    case TKind::Leaf: render_to(t.formula(), out); return;
    case TKind::Bracket:
      out += "< ";
      render_to(t.child(), out);
      out += " >";
      return;
    case TKind::Node: break;
  }
  auto side = [&](const StructTree& s) {
    if (s.is_node()) out += '(';
    render_to(s, out);
    if (s.is_node()) out += ')';
  };
  side(t.left());
  out += " o ";
  side(t.right());
}

}  // namespace detail

inline std::string render(const ModalFormula& f) {
  std::string out;
  detail::render_to(f, out);
  return out;
}
inline std::string render(const LFormula& f) {
  std::string out;
  detail::render_to(f, out);
  return out;
}
inline std::string render(const StructTree& t) {
  std::string out;
  detail::render_to(t, out);
  return out;
}
inline std::string render(const Sequent& s) {
  std::string out;
  if (s.antecedent) {
    detail::render_to(*s.antecedent, out);
    out += ' ';
  }
  out += "=> ";
  detail::render_to(s.succedent, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok {
  Ident, LParen, RParen, LBrace, RBrace, Not, And, Or, Under, Over, Star,
  Implies, Dia, Box, BoxDown, Lt, Gt, Arrow, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(src.substr(i, len)), line, col});
    i += len;
    col += static_cast<int>(len);
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < src.size() && (std::islower(static_cast<unsigned char>(src[j])) ||
                                std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (starts("\\/")) { push(Tok::Or, 2); continue; }
    if (starts("/\\")) { push(Tok::And, 2); continue; }
    if (starts("->")) { push(Tok::Implies, 2); continue; }
    if (starts("=>")) { push(Tok::Arrow, 2); continue; }
    if (starts("<>")) { push(Tok::Dia, 2); continue; }
    if (starts("[]")) { push(Tok::Box, 2); continue; }
    if (starts("[v]")) { push(Tok::BoxDown, 3); continue; }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '~': push(Tok::Not, 1); continue;
      case '\\': push(Tok::Under, 1); continue;
      case '/': push(Tok::Over, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      default: break;
    }
    throw ParseError(std::string("unknown token '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

inline bool is_keyword(const std::string& s) {
  return s == "bot" || s == "top" || s == "one" || s == "o" || s == "p_bot" || s == "p_top";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  // -- modal ---------------------------------------------------------------
  ModalFormula modal() {
    ModalFormula lhs = modal_or();
    if (peek().kind == Tok::Implies) {
      next();
      return ModalFormula::implies(lhs, modal());
    }
    return lhs;
  }
  ModalFormula modal_or() {
    ModalFormula lhs = modal_and();
    while (peek().kind == Tok::Or) {
      next();
      lhs = ModalFormula::disj(lhs, modal_and());
    }
    return lhs;
  }
  ModalFormula modal_and() {
    ModalFormula lhs = modal_unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = ModalFormula::conj(lhs, modal_unary());
    }
    return lhs;
  }
  ModalFormula modal_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: next(); return ModalFormula::neg(modal_unary());
      case Tok::Dia: next(); return ModalFormula::diamond(modal_unary());
      case Tok::Box: next(); return ModalFormula::box(modal_unary());
      case Tok::LParen: {
        next();
        ModalFormula f = modal();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        next();
        if (t.text == "bot") return ModalFormula::bottom();
        if (is_keyword(t.text)) fail("'" + t.text + "' is not part of the modal language", t);
        return ModalFormula::atom(t.text);
      }
      default: fail("expected a modal formula", t);
    }
  }

  // -- lambek --------------------------------------------------------------
  LFormula lambek() {
    LFormula lhs = lambek_and();
    while (peek().kind == Tok::Or) {
      next();
      lhs = LFormula::disj(lhs, lambek_and());
    }
    return lhs;
  }
  LFormula lambek_and() {
    LFormula lhs = lambek_slash();
    while (peek().kind == Tok::And) {
      next();
      lhs = LFormula::conj(lhs, lambek_slash());
    }
    return lhs;
  }
  LFormula lambek_slash() {
    LFormula lhs = lambek_prod();
    const Tok k = peek().kind;
    if (k != Tok::Under && k != Tok::Over) return lhs;
    next();
    LFormula rhs = lambek_prod();
    if (peek().kind == Tok::Under || peek().kind == Tok::Over)
      fail("'\\' and '/' are non-associative; parenthesize the chain", peek());
    return k == Tok::Under ? LFormula::under(lhs, rhs) : LFormula::over(lhs, rhs);
  }
  LFormula lambek_prod() {
    LFormula lhs = lambek_unary();
    while (peek().kind == Tok::Star) {
      next();
      lhs = LFormula::prod(lhs, lambek_unary());
    }
    return lhs;
  }
  LFormula lambek_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: next(); return LFormula::neg(lambek_unary());
      case Tok::Dia: next(); return LFormula::dia(lambek_unary());
      case Tok::BoxDown: next(); return LFormula::boxdown(lambek_unary());
      case Tok::LParen: {
        next();
        LFormula f = lambek();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        next();
        if (t.text == "bot") return LFormula::bottom();
        if (t.text == "top") return LFormula::top();
        if (t.text == "one") return LFormula::unit();
        if (t.text == "p_bot") return LFormula::p_bot();
        if (t.text == "p_top") return LFormula::p_top();
        if (t.text == "o") fail("'o' is the structure operator, not a formula", t);
        if (t.text == "p" && peek().kind == Tok::LBrace) {
          next();
          LFormula payload = lambek();
          expect(Tok::RBrace, "'}'");
          return LFormula::fresh_neg(payload);
        }
        return LFormula::atom(t.text);
      }
      default: fail("expected a formula", t);
    }
  }

  // -- trees and sequents ----------------------------------------------------
  StructTree tree() {
    StructTree lhs = tree_atom();
    while (peek().kind == Tok::Ident && peek().text == "o") {
      next();
      lhs = StructTree::node(lhs, tree_atom());
    }
    return lhs;
  }
  StructTree tree_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Lt) {
      next();
      StructTree inner = tree();
      expect(Tok::Gt, "'>'");
      return StructTree::bracket(inner);
    }
    if (t.kind == Tok::LParen) {
      const std::size_t save = pos_;
      try {
        LFormula f = lambek();
        if (ends_tree_atom(peek())) return StructTree::leaf(f);
      } catch (const ParseError&) {
      }
      pos_ = save;
      next();
      StructTree inner = tree();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return StructTree::leaf(lambek());
  }
  Sequent sequent() {
    if (peek().kind == Tok::Arrow) {
      next();
      return Sequent::empty(lambek());
    }
    StructTree ant = tree();
    expect(Tok::Arrow, "'=>'");
    return Sequent(ant, lambek());
  }

  void finish() {
    if (peek().kind != Tok::End) fail("unexpected trailing input '" + peek().text + "'", peek());
  }

 private:
  static bool ends_tree_atom(const Token& t) {
    return t.kind == Tok::Arrow || t.kind == Tok::RParen || t.kind == Tok::Gt || t.kind == Tok::End ||
           (t.kind == Tok::Ident && t.text == "o");
  }
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    next();
  }
  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg + (at.kind == Tok::End ? " at end of input" : " near '" + at.text + "'"), at.line,
                     at.column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ModalFormula parse_modal(std::string_view text) {
  detail::Parser p(text);
  ModalFormula f = p.modal();
  p.finish();
  return f;
}

inline LFormula parse_lambek(std::string_view text) {
  detail::Parser p(text);
  LFormula f = p.lambek();
  p.finish();
  return f;
}

inline StructTree parse_tree(std::string_view text) {
  detail::Parser p(text);
  StructTree t = p.tree();
  p.finish();
  return t;
}

inline Sequent parse_sequent(std::string_view text) {
  detail::Parser p(text);
  Sequent s = p.sequent();
  p.finish();
  return s;
}

}  // namespace lambek
