// Regression corpus of basic BFNL* facts: equivalences as sequent pairs, and
// conditional facts as (premises, conclusion) obligations. Conditional facts
// also come with their rule-level construction: a derivation of the
// conclusion assembled from derivations of the premises.
#pragma once

#include <string>
#include <vector>

#include "lambek/build.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

enum class FactKind { Equivalence, Contraposition, Internalization, Replacement };

struct FactCase {
  std::string label;
  FactKind kind = FactKind::Equivalence;
  std::vector<Sequent> premises;  // derived first; the conclusion must then be derivable
  Sequent conclusion;
  // Replacement only: conclusion is context ⇒ context[from := to]
  std::optional<LFormula> context, from, to;
};

/// Every occurrence of `from` in `c` replaced by `to`.
inline LFormula replace_all(const LFormula& c, const LFormula& from, const LFormula& to) {
  if (c == from) return to;
  switch (c.conn()) {
    case Conn::And: return LFormula::conj(replace_all(c.left(), from, to), replace_all(c.right(), from, to));
    case Conn::Or: return LFormula::disj(replace_all(c.left(), from, to), replace_all(c.right(), from, to));
    case Conn::Prod: return LFormula::prod(replace_all(c.left(), from, to), replace_all(c.right(), from, to));
    case Conn::Under: return LFormula::under(replace_all(c.left(), from, to), replace_all(c.right(), from, to));
    case Conn::Over: return LFormula::over(replace_all(c.left(), from, to), replace_all(c.right(), from, to));
    case Conn::Not: return LFormula::neg(replace_all(c.child(), from, to));
    case Conn::Dia: return LFormula::dia(replace_all(c.child(), from, to));
    case Conn::BoxDown: return LFormula::boxdown(replace_all(c.child(), from, to));
    default: return c;
  }
}

namespace facts {

/// A ⇒ B gives ¬B ⇒ ¬A.
inline Derivation contrapose(const Derivation& d) {
  using namespace build;
  const auto a = lhs(d), b = succ(d);
  const auto nb = LFormula::neg(b), na = LFormula::neg(a);
  // ¬B ⇒ ¬B∧(A∨¬A) ⇒ (¬B∧A)∨(¬B∧¬A) ⇒ ¬A
  auto split = chain(and_r(id(nb), excluded_middle(leaf(nb), a)), dist(nb, a, na));
  auto nba = LFormula::conj(nb, a);
  auto clash = and_r(and_l(d, nba, 1), and_l(id(nb), nba, 0));  // ¬B∧A ⇒ B∧¬B
  auto left = chain(chain(clash, neg1(b)), bot(na));
  auto right = and_l(id(na), LFormula::conj(nb, na), 1);
  return chain(split, or_l(left, right));
}

/// A ⇒ B gives ⇒ ¬A∨B.
inline Derivation internalize(const Derivation& d) {
  using namespace build;
  const auto a = lhs(d), b = succ(d);
  const auto na = LFormula::neg(a);
  auto cases = or_l(or_r(d, na, 1), or_r(id(na), b, 0));  // A∨¬A ⇒ ¬A∨B
  return cut(cut(top(std::nullopt), neg2(a)), cases);
}

namespace detail {

/// forward: c ⇒ c[a:=b]; otherwise c[a:=b] ⇒ c.
inline Derivation replace(const LFormula& c, const LFormula& a, const LFormula& b, const Derivation& ab,
                          const Derivation& ba, bool forward) {
  using namespace build;
  if (c == a) return forward ? ab : ba;
  const auto c2 = replace_all(c, a, b);
  if (c2 == c) return id(c);
  auto sub = [&](const LFormula& x, bool dir) { return replace(x, a, b, ab, ba, dir); };
  switch (c.conn()) {
    case Conn::And: {
      auto l = sub(c.left(), forward), r = sub(c.right(), forward);
      auto whole = LFormula::conj(lhs(l), lhs(r));
      return and_r(and_l(l, whole, 0), and_l(r, whole, 1));
    }
    case Conn::Or: {
      auto l = sub(c.left(), forward), r = sub(c.right(), forward);
      return or_l(or_r(l, succ(r), 0), or_r(r, succ(l), 1));
    }
    case Conn::Prod: return mono(sub(c.left(), forward), sub(c.right(), forward));
    case Conn::Not: return contrapose(sub(c.child(), !forward));
    case Conn::Under: {
      // X\Y ⇒ X'\Y' from X' ⇒ X and Y ⇒ Y'
      auto x = sub(c.left(), !forward), y = sub(c.right(), forward);
      return under_r(under_l(x, y));
    }
    case Conn::Over: {
      auto y = sub(c.left(), forward), x = sub(c.right(), !forward);
      return over_r(over_l(y, x));
    }
    default: throw std::invalid_argument("replacement under " + render(c) + " is not supported");
  }
}

}  // namespace detail

/// A ⇒ B and B ⇒ A give c ⇒ c[A:=B].
inline Derivation replace(const LFormula& c, const Derivation& ab, const Derivation& ba) {
  return detail::replace(c, build::lhs(ab), build::succ(ab), ab, ba, true);
}

}  // namespace facts

/// The conclusion's derivation built from the premises' derivations.
inline Derivation derive_from_premises(const FactCase& f, const std::vector<Derivation>& prem) {
  switch (f.kind) {
    case FactKind::Contraposition: return facts::contrapose(prem.at(0));
    case FactKind::Internalization: return facts::internalize(prem.at(0));
    case FactKind::Replacement: return facts::replace(*f.context, prem.at(0), prem.at(1));
    case FactKind::Equivalence: break;
  }
  throw std::invalid_argument("equivalence facts have no premises");
}

namespace detail {

struct Subst {
  std::string a, b, c;
};

inline std::string fill(const std::string& t, const Subst& s) {
  std::string out;
  for (char ch : t) {
    if (ch == 'A') out += "(" + s.a + ")";
    else if (ch == 'B') out += "(" + s.b + ")";
    else if (ch == 'C') out += "(" + s.c + ")";
    else out += ch;
  }
  return out;
}

}  // namespace detail

/// Both directions of each equivalence under several substitutions, then the
/// conditional facts on concrete premises.
inline std::vector<FactCase> facts_corpus() {
  std::vector<FactCase> out;
  auto both = [&](const std::string& label, const std::string& l, const std::string& r) {
    out.push_back({label, FactKind::Equivalence, {}, parse_sequent(l + " => " + r), {}, {}, {}});
    out.push_back({label, FactKind::Equivalence, {}, parse_sequent(r + " => " + l), {}, {}, {}});
  };
  both("neg-bot", "~bot", "top");
  both("neg-top", "~top", "bot");

  const std::vector<detail::Subst> subs = {
      {"p", "q", "r"},
      {"p * q", "~r", "p \\/ q"},
      {"m * p", "top", "~(q /\\ r)"},
      {"p \\ q", "r / p", "q"},
  };
  const std::vector<std::pair<std::string, std::pair<std::string, std::string>>> schemas = {
      {"double-negation", {"A", "~~A"}},
      {"de-morgan-and", {"~(A /\\ B)", "~A \\/ ~B"}},
      {"de-morgan-or", {"~(A \\/ B)", "~A /\\ ~B"}},
      {"distribute-and", {"A /\\ (B \\/ C)", "(A /\\ B) \\/ (A /\\ C)"}},
      {"distribute-or", {"A \\/ (B /\\ C)", "(A \\/ B) /\\ (A \\/ C)"}},
      {"product-over-or", {"m * (A \\/ B)", "(m * A) \\/ (m * B)"}},
  };
  for (const auto& s : subs)
    for (const auto& [label, eq] : schemas) both(label, detail::fill(eq.first, s), detail::fill(eq.second, s));

  auto simple = [&](const std::string& label, FactKind k, const std::string& prem) {
    auto p = parse_sequent(prem);
    const auto a = p.antecedent->formula(), b = p.succedent;
    Sequent c = k == FactKind::Contraposition ? Sequent::simple(LFormula::neg(b), LFormula::neg(a))
                                               : Sequent::empty(LFormula::disj(LFormula::neg(a), b));
    out.push_back({label, k, {p}, c, {}, {}, {}});
  };
  simple("contraposition", FactKind::Contraposition, "p /\\ q => q");
  simple("contraposition", FactKind::Contraposition, "p => p \\/ q");
  simple("contraposition", FactKind::Contraposition, "m * (p /\\ q) => m * p");
  simple("contraposition", FactKind::Contraposition, "p * (p \\ q) => q");
  simple("internalization", FactKind::Internalization, "p /\\ q => q");
  simple("internalization", FactKind::Internalization, "p => ~~p");
  simple("internalization", FactKind::Internalization, "m * ~q => m * (~p \\/ ~q)");
  simple("internalization", FactKind::Internalization, "p * (p \\ q) => q");

  auto repl = [&](const std::string& a, const std::string& b, const std::string& c) {
    const auto fa = parse_lambek(a), fb = parse_lambek(b), fc = parse_lambek(c);
    out.push_back({"replacement", FactKind::Replacement, {Sequent::simple(fa, fb), Sequent::simple(fb, fa)},
                   Sequent::simple(fc, replace_all(fc, fa, fb)), fc, fa, fb});
  };
  repl("p", "~~p", "m * p \\/ q");
  repl("~~p", "p", "m * ~~p \\/ q");
  repl("p \\/ ~p", "top", "m * ((p \\/ ~p) /\\ (~p \\/ ~q))");
  repl("top", "p \\/ ~p", "m * (top /\\ (~p \\/ ~q))");
  repl("p", "~~p", "~(p /\\ q) \\/ p");
  repl("q", "~~q", "(p \\ q) / (q \\ r)");
  return out;
}

}  // namespace lambek
