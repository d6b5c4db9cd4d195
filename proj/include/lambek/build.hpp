// Forward construction of derivations, one rule application per call. Every
// function computes the conclusion from its premises.
#pragma once

#include <stdexcept>

#include "lambek/derivation.hpp"

namespace lambek::build {

inline StructTree leaf(const LFormula& f) { return StructTree::leaf(f); }
inline Sequent seq(const LFormula& a, const LFormula& b) { return Sequent::simple(a, b); }

inline const StructTree& ant(const Derivation& d) {
  if (!d->conclusion.antecedent) throw std::logic_error("derivation has an empty antecedent");
  return *d->conclusion.antecedent;
}
inline const LFormula& succ(const Derivation& d) { return d->conclusion.succedent; }
/// The single antecedent formula of a simple conclusion.
inline const LFormula& lhs(const Derivation& d) { return ant(d).formula(); }

inline Derivation id(const LFormula& a) { return make_node(seq(a, a), Rule::Id); }

/// A∧(B∨C) ⇒ (A∧B)∨(A∧C)
inline Derivation dist(const LFormula& a, const LFormula& b, const LFormula& c) {
  return make_node(seq(LFormula::conj(a, LFormula::disj(b, c)),
                       LFormula::disj(LFormula::conj(a, b), LFormula::conj(a, c))),
                   Rule::D);
}

inline Derivation top(std::optional<StructTree> g) { return make_node({std::move(g), LFormula::top()}, Rule::Top); }
inline Derivation top(const LFormula& a) { return top(leaf(a)); }

/// Γ[⊥] ⇒ c with the ⊥ leaf at `at`.
inline Derivation bot(const StructTree& g, const Path& at, const LFormula& c) {
  return make_node({g, c}, Rule::Bot, {}, {at, std::nullopt, 0});
}
inline Derivation bot(const LFormula& c) { return bot(leaf(LFormula::bottom()), {}, c); }

inline Derivation neg1(const LFormula& a) {
  return make_node(seq(LFormula::conj(a, LFormula::neg(a)), LFormula::bottom()), Rule::Neg1);
}
inline Derivation neg2(const LFormula& a) {
  return make_node(seq(LFormula::top(), LFormula::disj(a, LFormula::neg(a))), Rule::Neg2);
}
inline Derivation assume(const Sequent& s) { return make_node(s, Rule::Assumption); }

/// From Δ ⇒ A and Γ[A] ⇒ B (A a leaf at `at`) to Γ[Δ] ⇒ B.
inline Derivation cut(const Derivation& left, const Derivation& right, const Path& at = {}) {
  const LFormula& a = succ(left);
  if (!left->conclusion.antecedent) {
    if (!at.empty() || !right->conclusion.is_simple() || lhs(right) != a)
      throw std::logic_error("empty-antecedent cut needs A => B on the right");
    return make_node({std::nullopt, succ(right)}, Rule::Cut, {left, right}, {std::nullopt, a, 0});
  }
  auto g = replace_at(ant(right), at, ant(left));
  return make_node({g, succ(right)}, Rule::Cut, {left, right}, {at, a, 0});
}

/// Γ ⇒ A and A ⇒ B give Γ ⇒ B; identity steps are skipped.
inline Derivation chain(const Derivation& first, const Derivation& second) {
  if (second->rule == Rule::Id) return first;
  if (first->rule == Rule::Id) return second;
  return cut(first, second, {});
}

/// Γ[A_i] ⇒ C to Γ[A_1∧A_2] ⇒ C, where `whole` is the conjunction.
inline Derivation and_l(const Derivation& d, const LFormula& whole, int choice, const Path& at = {}) {
  auto g = replace_at(ant(d), at, leaf(whole));
  return make_node({g, succ(d)}, Rule::AndL, {d}, {at, std::nullopt, choice});
}

inline Derivation and_r(const Derivation& a, const Derivation& b) {
  return make_node({a->conclusion.antecedent, LFormula::conj(succ(a), succ(b))}, Rule::AndR, {a, b});
}

/// Γ[A] ⇒ C and Γ[B] ⇒ C to Γ[A∨B] ⇒ C.
inline Derivation or_l(const Derivation& a, const Derivation& b, const Path& at = {}) {
  auto fa = subtree_at(ant(a), at).formula();
  auto fb = subtree_at(ant(b), at).formula();
  auto g = replace_at(ant(a), at, leaf(LFormula::disj(fa, fb)));
  return make_node({g, succ(a)}, Rule::OrL, {a, b}, {at, std::nullopt, 0});
}

/// Γ ⇒ A to Γ ⇒ A∨other (choice 0) or Γ ⇒ other∨A (choice 1).
inline Derivation or_r(const Derivation& d, const LFormula& other, int choice) {
  auto s = choice == 0 ? LFormula::disj(succ(d), other) : LFormula::disj(other, succ(d));
  return make_node({d->conclusion.antecedent, s}, Rule::OrR, {d}, {std::nullopt, std::nullopt, choice});
}

/// Γ[A∘B] ⇒ C to Γ[A·B] ⇒ C, `at` pointing to the A∘B node.
inline Derivation prod_l(const Derivation& d, const Path& at = {}) {
  auto n = subtree_at(ant(d), at);
  auto g = replace_at(ant(d), at, leaf(LFormula::prod(n.left().formula(), n.right().formula())));
  return make_node({g, succ(d)}, Rule::ProdL, {d}, {at, std::nullopt, 0});
}

inline Derivation prod_r(const Derivation& a, const Derivation& b) {
  return make_node({StructTree::node(ant(a), ant(b)), LFormula::prod(succ(a), succ(b))}, Rule::ProdR, {a, b});
}

/// A ⇒ A' and B ⇒ B' give A·B ⇒ A'·B'.
inline Derivation mono(const Derivation& a, const Derivation& b) { return prod_l(prod_r(a, b)); }

/// A∘Γ ⇒ B to Γ ⇒ A\B; an antecedent that is just A gives ⇒ A\B.
inline Derivation under_r(const Derivation& d) {
  const auto& g = ant(d);
  const auto a = g.is_node() ? g.left().formula() : g.formula();
  std::optional<StructTree> rest = g.is_node() ? std::optional<StructTree>(g.right()) : std::nullopt;
  return make_node({rest, LFormula::under(a, succ(d))}, Rule::UnderR, {d});
}

/// Γ∘B ⇒ A to Γ ⇒ A/B; an antecedent that is just B gives ⇒ A/B.
inline Derivation over_r(const Derivation& d) {
  const auto& g = ant(d);
  const auto b = g.is_node() ? g.right().formula() : g.formula();
  std::optional<StructTree> rest = g.is_node() ? std::optional<StructTree>(g.left()) : std::nullopt;
  return make_node({rest, LFormula::over(succ(d), b)}, Rule::OverR, {d});
}

/// Δ ⇒ A and B ⇒ C give Δ∘(A\B) ⇒ C.
inline Derivation under_l(const Derivation& delta, const Derivation& rest) {
  auto g = StructTree::node(ant(delta), leaf(LFormula::under(succ(delta), lhs(rest))));
  return make_node({g, succ(rest)}, Rule::UnderL, {delta, rest}, {Path{}, std::nullopt, 0});
}

/// A ⇒ C and Δ ⇒ B give (A/B)∘Δ ⇒ C.
inline Derivation over_l(const Derivation& rest, const Derivation& delta) {
  auto g = StructTree::node(leaf(LFormula::over(lhs(rest), succ(delta))), ant(delta));
  return make_node({g, succ(rest)}, Rule::OverL, {rest, delta}, {Path{}, std::nullopt, 0});
}

// ---------------------------------------------------------------------------
// Small propositional lemmas over simple sequents.
// ---------------------------------------------------------------------------

/// A∧B ⇒ B∧A
inline Derivation and_swap(const LFormula& a, const LFormula& b) {
  auto ab = LFormula::conj(a, b);
  return and_r(and_l(id(b), ab, 1), and_l(id(a), ab, 0));
}

/// A∨B ⇒ B∨A
inline Derivation or_swap(const LFormula& a, const LFormula& b) {
  return or_l(or_r(id(a), b, 1), or_r(id(b), a, 0));
}

/// Γ ⇒ A∨¬A for any nonempty Γ, through ⊤.
inline Derivation excluded_middle(const StructTree& g, const LFormula& a) { return cut(top(g), neg2(a)); }

}  // namespace lambek::build
