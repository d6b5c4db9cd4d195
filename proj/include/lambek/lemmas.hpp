// Derived rules over assumption sets: noncontradiction and excluded middle for
// the De Morgan dual (.)~ from Ψ, and absorption of structures into p_⊥ / p_⊤
// from Θ. Each lemma returns a genuine derivation or nothing.
#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "lambek/build.hpp"
#include "lambek/transform.hpp"

namespace lambek {

class DeMorganLemmas {
 public:
  explicit DeMorganLemmas(const AssumptionSet& phi) : phi_(phi.begin(), phi.end()) {}

  LFormula dual(const LFormula& x) { return tilde_(x); }

  /// x ∧ x~ ⇒ ⊥
  std::optional<Derivation> nc(const LFormula& x) {
    if (auto d = nc_.find(x)) return *d;
    auto d = nc_uncached(x);
    nc_.put(x, d);
    return d;
  }

  /// ⊤ ⇒ x ∨ x~
  std::optional<Derivation> em(const LFormula& x) {
    if (auto d = em_.find(x)) return *d;
    auto d = em_uncached(x);
    em_.put(x, d);
    return d;
  }

 private:
  // Small formulas recur as children of many larger ones and are kept; the
  // next size up goes to a short-lived table (siblings tend to be asked for
  // together); larger ones are not kept.
  class Cache {
   public:
    const std::optional<Derivation>* find(const LFormula& x) const {
      if (auto it = keep_.find(x); it != keep_.end()) return &it->second;
      if (auto it = recent_.find(x); it != recent_.end()) return &it->second;
      return nullptr;
    }
    void put(const LFormula& x, const std::optional<Derivation>& d) {
      if (x.size() <= kKeepSize) {
        if (keep_.size() > kCap) keep_.clear();
        keep_.emplace(x, d);
      } else if (x.size() == kKeepSize + 1) {
        if (recent_.size() >= kRecent) recent_.clear();
        recent_.emplace(x, d);
      }
    }

   private:
    static constexpr int kKeepSize = 3;
    static constexpr std::size_t kRecent = 512;
    static constexpr std::size_t kCap = 1'000'000;
    std::unordered_map<LFormula, std::optional<Derivation>, FormulaHash> keep_, recent_;
  };

  std::optional<Derivation> assumption(const Sequent& s) const {
    if (phi_.count(s)) return build::assume(s);
    return std::nullopt;
  }

  std::optional<Derivation> nc_uncached(const LFormula& x) {
    using namespace build;
    const auto top = LFormula::top(), bot = LFormula::bottom();
    switch (x.conn()) {
      case Conn::Top: return and_l(bot_leaf(), LFormula::conj(top, bot), 1);
      case Conn::Bottom: return and_l(bot_leaf(), LFormula::conj(bot, top), 0);
      case Conn::And:
      case Conn::Or: break;
      default: {
        if (x.is_fresh(FreshTag::NegOf)) {
          // p{Y} ∧ Y ⇒ Y ∧ p{Y} ⇒ ⊥
          auto y = x.payload();
          auto inner = tilde_base(y) ? nc(y) : assumption(seq(LFormula::conj(y, x), bot));
          if (!inner) return std::nullopt;
          return chain(and_swap(x, y), *inner);
        }
        return assumption(seq(LFormula::conj(x, LFormula::fresh_neg(x)), bot));
      }
    }
    const auto a = x.left(), b = x.right();
    const auto na = dual(a), nb = dual(b);
    auto da = nc(a), db = nc(b);
    if (!da || !db) return std::nullopt;
    if (x.is(Conn::And)) {
      // (A∧B)∧(A~∨B~) ⇒ ((A∧B)∧A~) ∨ ((A∧B)∧B~), then each case through NC of a child
      auto c1 = chain(pick2(x, na, a, 0), *da);
      auto c2 = chain(pick2(x, nb, b, 1), *db);
      return chain(dist(x, na, nb), or_l(c1, c2));
    }
    // (A∨B)∧(A~∧B~) ⇒ (A~∧B~)∧(A∨B) ⇒ ((A~∧B~)∧A) ∨ ((A~∧B~)∧B)
    const auto y = LFormula::conj(na, nb);
    auto c1 = chain(pick2_rev(y, a, na, 0), *da);
    auto c2 = chain(pick2_rev(y, b, nb, 1), *db);
    return chain(chain(and_swap(x, y), dist(y, a, b)), or_l(c1, c2));
  }

  std::optional<Derivation> em_uncached(const LFormula& x) {
    using namespace build;
    const auto top = LFormula::top(), bot = LFormula::bottom();
    switch (x.conn()) {
      case Conn::Top: return or_r(build::top(top), bot, 0);
      case Conn::Bottom: return or_r(build::top(top), bot, 1);
      case Conn::And:
      case Conn::Or: break;
      default: {
        if (x.is_fresh(FreshTag::NegOf)) {
          auto y = x.payload();
          auto inner = tilde_base(y) ? em(y) : assumption(seq(top, LFormula::disj(y, x)));
          if (!inner) return std::nullopt;
          return chain(*inner, or_swap(y, x));
        }
        return assumption(seq(top, LFormula::disj(x, LFormula::fresh_neg(x))));
      }
    }
    const auto a = x.left(), b = x.right();
    const auto na = dual(a), nb = dual(b);
    auto da = em(a), db = em(b);
    if (!da || !db) return std::nullopt;
    const auto P = LFormula::disj(a, na);
    auto both = and_r(*da, *db);  // ⊤ ⇒ P∧(B∨B~)
    auto split = dist(P, b, nb);  // P∧Q ⇒ (P∧B) ∨ (P∧B~)
    const auto PB = LFormula::conj(P, b), PnB = LFormula::conj(P, nb);
    Derivation case_b, case_nb;
    if (x.is(Conn::And)) {
      // x~ = A~∨B~
      const auto xd = dual(x);
      // P∧B ⇒ B∧P ⇒ (B∧A)∨(B∧A~)
      const auto BnA = LFormula::conj(b, na);
      auto ba = or_r(and_swap(b, a), xd, 0);
      auto bna = or_r(or_r(and_l(id(na), BnA, 1), nb, 0), x, 1);
      case_b = chain(chain(and_swap(P, b), dist(b, a, na)), or_l(ba, bna));
      case_nb = or_r(or_r(and_l(id(nb), PnB, 1), na, 1), x, 1);
    } else {
      // x~ = A~∧B~
      const auto xd = dual(x);
      case_b = or_r(or_r(and_l(id(b), PB, 1), a, 1), xd, 0);
      const auto nBA = LFormula::conj(nb, a);
      auto c1 = or_r(or_r(and_l(id(a), nBA, 1), b, 0), xd, 0);
      auto c2 = or_r(and_swap(nb, na), x, 1);
      case_nb = chain(chain(and_swap(P, nb), dist(nb, a, na)), or_l(c1, c2));
    }
    return chain(chain(both, split), or_l(case_b, case_nb));
  }

  static Derivation bot_leaf() { return build::bot(LFormula::bottom()); }

  /// (X)∧Z ⇒ A∧Z where A is conjunct `side` of X (an ∧).
  static Derivation pick2(const LFormula& x, const LFormula& z, const LFormula& a, int side) {
    using namespace build;
    const auto xz = LFormula::conj(x, z);
    return and_r(and_l(and_l(id(a), x, side), xz, 0), and_l(id(z), xz, 1));
  }

  /// Y∧A ⇒ A∧Y~side where Y = (A~∧B~) and the kept conjunct of Y is `side`.
  static Derivation pick2_rev(const LFormula& y, const LFormula& a, const LFormula& na, int side) {
    using namespace build;
    const auto ya = LFormula::conj(y, a);
    return and_r(and_l(id(a), ya, 1), and_l(and_l(id(na), y, side), ya, 0));
  }

  std::unordered_set<Sequent, SequentHash> phi_;
  Tilde tilde_;
  Cache nc_, em_;
};

/// Absorption into p_⊥ and p_⊤ from Θ-style assumptions.
class Absorption {
 public:
  explicit Absorption(const AssumptionSet& phi) : phi_(phi.begin(), phi.end()) {}

  /// p_⊥ ⇒ a
  std::optional<Derivation> below(const LFormula& a) {
    using namespace build;
    const auto pb = LFormula::p_bot();
    if (a == pb) return id(pb);
    if (auto d = assumption(seq(pb, a))) return d;
    if (a.is(Conn::And)) {
      auto l = below(a.left()), r = below(a.right());
      if (l && r) return and_r(*l, *r);
    } else if (a.is(Conn::Or)) {
      if (auto l = below(a.left())) return or_r(*l, a.right(), 0);
      if (auto r = below(a.right())) return or_r(*r, a.left(), 1);
    }
    return std::nullopt;
  }

  /// a ⇒ p_⊤
  std::optional<Derivation> above(const LFormula& a) {
    using namespace build;
    const auto pt = LFormula::p_top();
    if (a == pt) return id(pt);
    if (auto d = assumption(seq(a, pt))) return d;
    if (a.is(Conn::And)) {
      if (auto l = above(a.left())) return and_l(*l, a, 0);
      if (auto r = above(a.right())) return and_l(*r, a, 1);
    } else if (a.is(Conn::Or)) {
      auto l = above(a.left()), r = above(a.right());
      if (l && r) return or_l(*l, *r);
    } else if (a.is(Conn::Prod)) {
      // a·b ⇒ p_⊤ from the structure a∘b ⇒ p_⊤
      auto t = structure_top(StructTree::node(StructTree::leaf(a.left()), StructTree::leaf(a.right())));
      if (t) return prod_l(*t);
    }
    return std::nullopt;
  }

  /// Γ ⇒ p_⊤
  std::optional<Derivation> structure_top(const StructTree& g) {
    using namespace build;
    const auto pt = LFormula::p_top();
    if (g.is_leaf()) return above(g.formula());
    if (!g.is_node()) return std::nullopt;
    if (g.left().is_leaf() && g.right().is_leaf()) {
      Sequent direct{g, pt};
      if (auto d = pair_assumption(direct)) return d;
    }
    auto l = structure_top(g.left()), r = structure_top(g.right());
    auto base = pair_assumption({StructTree::node(leaf(pt), leaf(pt)), pt});
    if (!l || !r || !base) return std::nullopt;
    return cut(*r, cut(*l, *base, {0}), {1});
  }

  /// Γ ⇒ p_⊥ for Γ with a p_⊥ leaf at `at`.
  std::optional<Derivation> collapse(const StructTree& g, const Path& at, std::size_t depth = 0) {
    using namespace build;
    const auto pb = LFormula::p_bot(), pt = LFormula::p_top();
    if (depth == at.size()) {
      if (g.is_leaf() && g.formula() == pb) return id(pb);
      return std::nullopt;
    }
    if (!g.is_node()) return std::nullopt;
    const bool left = at[depth] == 0;
    auto inner = collapse(left ? g.left() : g.right(), at, depth + 1);
    if (!inner) return std::nullopt;
    const StructTree sib = left ? g.right() : g.left();
    auto shape = [&](const LFormula& other) {
      return left ? StructTree::node(leaf(pb), leaf(other)) : StructTree::node(leaf(other), leaf(pb));
    };
    std::optional<Derivation> step;
    if (sib.is_leaf()) step = pair_assumption({shape(sib.formula()), pb});
    if (!step) {
      auto t = structure_top(sib);
      auto base = pair_assumption({shape(pt), pb});
      if (!t || !base) return std::nullopt;
      step = cut(*t, *base, {static_cast<std::uint8_t>(left ? 1 : 0)});
    }
    return cut(*inner, *step, {static_cast<std::uint8_t>(left ? 0 : 1)});
  }

  /// Γ[p_⊥] ⇒ a
  std::optional<Derivation> structure_bottom(const StructTree& g, const Path& at, const LFormula& a) {
    auto c = collapse(g, at);
    if (!c) return std::nullopt;
    if (a == LFormula::p_bot()) return c;
    auto b = below(a);
    if (!b) return std::nullopt;
    return build::chain(*c, *b);
  }

 private:
  std::optional<Derivation> assumption(const Sequent& s) const {
    if (phi_.count(s)) return build::assume(s);
    return std::nullopt;
  }

  /// A two-leaf structure A∘B ⇒ C matched against the stored A·B ⇒ C.
  std::optional<Derivation> pair_assumption(const Sequent& s) const {
    const auto& g = *s.antecedent;
    if (phi_.count(s)) return build::assume(s);
    Sequent stored = Sequent::simple(LFormula::prod(g.left().formula(), g.right().formula()), s.succedent);
    if (phi_.count(stored)) return build::assume(s);
    return std::nullopt;
  }

  std::unordered_set<Sequent, SequentHash> phi_;
};

}  // namespace lambek
