// Backward rule applications: for a goal, every rule instance whose conclusion
// is the goal, with the premises it leaves to prove.
#pragma once

#include <unordered_set>
#include <vector>

#include "lambek/derivation.hpp"
#include "lambek/system.hpp"

namespace lambek {

struct RuleInstance {
  Rule rule;
  std::vector<Sequent> premises;
  Instantiation inst;
};

/// The node concluding `goal` by `ri` over derivations of its premises.
inline Derivation assemble(const Sequent& goal, const RuleInstance& ri, std::vector<Derivation> premises) {
  return make_node(goal, ri.rule, std::move(premises), ri.inst);
}

namespace detail {

inline Sequent plugged(const StructTree& g, const Path& at, const StructTree& with, const LFormula& c) {
  return {replace_at(g, at, with), c};
}

inline bool is_assumption(const std::unordered_set<Sequent, SequentHash>& phi, const Sequent& s) {
  if (phi.count(s)) return true;
  if (!s.antecedent || !s.antecedent->is_node()) return false;
  const auto& g = *s.antecedent;
  if (!g.left().is_leaf() || !g.right().is_leaf()) return false;
  return phi.count(Sequent::simple(LFormula::prod(g.left().formula(), g.right().formula()), s.succedent)) != 0;
}

}  // namespace detail

/// Instances in a fixed order: axioms and assumptions, invertible left rules,
/// right rules, the remaining left rules, structural rules, then cuts. Left
/// rules try holes outermost first, then left to right.
inline std::vector<RuleInstance> rule_instances(const SystemSpec& sys, const Sequent& goal,
                                                const std::unordered_set<Sequent, SequentHash>& phi,
                                                const std::vector<LFormula>& cut_candidates) {
  if (auto v = language_violation(sys, goal); !v.empty()) throw IllFormed(v);
  std::vector<RuleInstance> out;
  const auto& G = goal.antecedent;
  const LFormula& C = goal.succedent;
  auto axiom = [&](Rule r, Instantiation inst = {}) { out.push_back({r, {}, std::move(inst)}); };
  const std::vector<Path> paths = G ? all_paths(*G) : std::vector<Path>{};

  // Axioms
  const bool simple = G && G->is_leaf();
  const LFormula lhs = simple ? G->formula() : LFormula();
  if (simple && lhs == C) axiom(Rule::Id);
  if (simple && lhs.is(Conn::And) && lhs.right().is(Conn::Or)) {
    const auto a = lhs.left(), b = lhs.right().left(), c = lhs.right().right();
    if (C == LFormula::disj(LFormula::conj(a, b), LFormula::conj(a, c))) axiom(Rule::D);
  }
  if (sys.bounded) {
    if (C.is(Conn::Top)) axiom(Rule::Top);
    for (const auto& p : paths) {
      auto h = subtree_at(*G, p);
      if (h.is_leaf() && h.formula().is(Conn::Bottom)) axiom(Rule::Bot, {p, std::nullopt, 0});
    }
  }
  if (sys.negation) {
    if (simple && C.is(Conn::Bottom) && lhs.is(Conn::And) && lhs.right().is(Conn::Not) && lhs.right().child() == lhs.left())
      axiom(Rule::Neg1);
    if (simple && lhs.is(Conn::Top) && C.is(Conn::Or) && C.right().is(Conn::Not) && C.right().child() == C.left())
      axiom(Rule::Neg2);
  }
  if (sys.has_T() && simple && C.is(Conn::Dia) && C.child() == lhs) axiom(Rule::AxT);
  if (sys.has_4() && simple && lhs.is(Conn::Dia) && lhs.child() == C && C.is(Conn::Dia)) axiom(Rule::Ax4);
  if (sys.has_5() && simple && lhs.is(Conn::Dia) && C.is(Conn::Not) && C.child().is(Conn::Dia) &&
      C.child().child().is(Conn::Not) && C.child().child().child() == lhs)
    axiom(Rule::Ax5);
  if (sys.unit && !G && C.is(Conn::Unit)) axiom(Rule::OneR);
  if (detail::is_assumption(phi, goal)) axiom(Rule::Assumption);

  // Invertible left rules
  for (const auto& p : paths) {
    auto h = subtree_at(*G, p);
    if (!h.is_leaf()) continue;
    const auto f = h.formula();
    if (f.is(Conn::Prod))
      out.push_back({Rule::ProdL, {detail::plugged(*G, p, StructTree::node(StructTree::leaf(f.left()), StructTree::leaf(f.right())), C)}, {p, std::nullopt, 0}});
    else if (f.is(Conn::Or))
      out.push_back({Rule::OrL,
                     {detail::plugged(*G, p, StructTree::leaf(f.left()), C), detail::plugged(*G, p, StructTree::leaf(f.right()), C)},
                     {p, std::nullopt, 0}});
    else if (f.is(Conn::Dia) && sys.is_modal())
      out.push_back({Rule::DiaL, {detail::plugged(*G, p, StructTree::bracket(StructTree::leaf(f.child())), C)}, {p, std::nullopt, 0}});
  }

  // Right rules
  switch (C.conn()) {
    case Conn::Under: {
      auto a = StructTree::leaf(C.left());
      out.push_back({Rule::UnderR, {{G ? StructTree::node(a, *G) : a, C.right()}}, {}});
      break;
    }
    case Conn::Over: {
      auto b = StructTree::leaf(C.right());
      out.push_back({Rule::OverR, {{G ? StructTree::node(*G, b) : b, C.left()}}, {}});
      break;
    }
    case Conn::Prod:
      if (G && G->is_node()) out.push_back({Rule::ProdR, {{G->left(), C.left()}, {G->right(), C.right()}}, {}});
      break;
    case Conn::And: out.push_back({Rule::AndR, {{G, C.left()}, {G, C.right()}}, {}}); break;
    case Conn::Or:
      out.push_back({Rule::OrR, {{G, C.left()}}, {std::nullopt, std::nullopt, 0}});
      out.push_back({Rule::OrR, {{G, C.right()}}, {std::nullopt, std::nullopt, 1}});
      break;
    case Conn::Dia:
      if (sys.is_modal() && G && G->is_bracket()) out.push_back({Rule::DiaR, {{G->child(), C.child()}}, {}});
      break;
    case Conn::BoxDown:
      if (sys.is_modal() && G) out.push_back({Rule::BoxR, {{StructTree::bracket(*G), C.child()}}, {}});
      break;
    default: break;
  }

  // Remaining left rules
  for (const auto& p : paths) {
    auto h = subtree_at(*G, p);
    if (h.is_leaf() && h.formula().is(Conn::And)) {
      const auto f = h.formula();
      out.push_back({Rule::AndL, {detail::plugged(*G, p, StructTree::leaf(f.left()), C)}, {p, std::nullopt, 0}});
      out.push_back({Rule::AndL, {detail::plugged(*G, p, StructTree::leaf(f.right()), C)}, {p, std::nullopt, 1}});
    } else if (h.is_node()) {
      if (h.right().is_leaf() && h.right().formula().is(Conn::Under)) {
        const auto f = h.right().formula();
        out.push_back({Rule::UnderL, {{h.left(), f.left()}, detail::plugged(*G, p, StructTree::leaf(f.right()), C)}, {p, std::nullopt, 0}});
      }
      if (h.left().is_leaf() && h.left().formula().is(Conn::Over)) {
        const auto f = h.left().formula();
        out.push_back({Rule::OverL, {detail::plugged(*G, p, StructTree::leaf(f.left()), C), {h.right(), f.right()}}, {p, std::nullopt, 0}});
      }
    } else if (h.is_bracket() && sys.is_modal() && h.child().is_leaf() && h.child().formula().is(Conn::BoxDown)) {
      out.push_back({Rule::BoxL, {detail::plugged(*G, p, StructTree::leaf(h.child().formula().child()), C)}, {p, std::nullopt, 0}});
    }
  }

  // Structural rules
  for (const auto& p : paths) {
    auto h = subtree_at(*G, p);
    if (!h.is_node()) continue;
    if (sys.exchange) out.push_back({Rule::Exchange, {detail::plugged(*G, p, StructTree::node(h.right(), h.left()), C)}, {p, std::nullopt, 0}});
    if (sys.unit) {
      if (h.left().is_leaf() && h.left().formula().is(Conn::Unit))
        out.push_back({Rule::OneLl, {detail::plugged(*G, p, h.right(), C)}, {p, std::nullopt, 0}});
      if (h.right().is_leaf() && h.right().formula().is(Conn::Unit))
        out.push_back({Rule::OneLr, {detail::plugged(*G, p, h.left(), C)}, {p, std::nullopt, 0}});
    }
  }

  // Cuts over the candidates, every hole
  for (const auto& a : cut_candidates) {
    if (!G) {
      out.push_back({Rule::Cut, {Sequent::empty(a), Sequent::simple(a, C)}, {std::nullopt, a, 0}});
      continue;
    }
    for (const auto& p : paths) {
      auto h = subtree_at(*G, p);
      out.push_back({Rule::Cut, {{h, a}, detail::plugged(*G, p, StructTree::leaf(a), C)}, {p, a, 0}});
    }
  }
  return out;
}

}  // namespace lambek
