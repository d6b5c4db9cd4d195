// Derivation-level versions of the embeddings: a derivation of s is mapped node
// by node to a derivation of the image of s. Negation axioms become De Morgan
// lemmas under ‡; the constant axioms become absorption lemmas under §.
#pragma once

#include <optional>
#include <unordered_map>

#include "lambek/lemmas.hpp"
#include "lambek/transform.hpp"

namespace lambek {

/// p{A} ↦ ¬A, homomorphic elsewhere; a left inverse of ‡ on its image.
inline LFormula undo_ddagger(const LFormula& a) {
  if (!a.mentions(Conn::Fresh)) return a;
  switch (a.conn()) {
    case Conn::Fresh: return a.tag() == FreshTag::NegOf ? LFormula::neg(undo_ddagger(a.payload())) : a;
    case Conn::And: return LFormula::conj(undo_ddagger(a.left()), undo_ddagger(a.right()));
    case Conn::Or: return LFormula::disj(undo_ddagger(a.left()), undo_ddagger(a.right()));
    case Conn::Prod: return LFormula::prod(undo_ddagger(a.left()), undo_ddagger(a.right()));
    case Conn::Under: return LFormula::under(undo_ddagger(a.left()), undo_ddagger(a.right()));
    case Conn::Over: return LFormula::over(undo_ddagger(a.left()), undo_ddagger(a.right()));
    case Conn::Not: return LFormula::neg(undo_ddagger(a.child()));
    case Conn::Dia: return LFormula::dia(undo_ddagger(a.child()));
    case Conn::BoxDown: return LFormula::boxdown(undo_ddagger(a.child()));
    default: return a;
  }
}

/// p_⊥ ↦ ⊥, p_⊤ ↦ ⊤, homomorphic elsewhere.
inline LFormula undo_section(const LFormula& a) {
  if (!a.mentions(Conn::Fresh)) return a;
  switch (a.conn()) {
    case Conn::Fresh:
      if (a.tag() == FreshTag::BotMark) return LFormula::bottom();
      if (a.tag() == FreshTag::TopMark) return LFormula::top();
      return a;
    case Conn::And: return LFormula::conj(undo_section(a.left()), undo_section(a.right()));
    case Conn::Or: return LFormula::disj(undo_section(a.left()), undo_section(a.right()));
    case Conn::Prod: return LFormula::prod(undo_section(a.left()), undo_section(a.right()));
    case Conn::Under: return LFormula::under(undo_section(a.left()), undo_section(a.right()));
    case Conn::Over: return LFormula::over(undo_section(a.left()), undo_section(a.right()));
    case Conn::Dia: return LFormula::dia(undo_section(a.child()));
    case Conn::BoxDown: return LFormula::boxdown(undo_section(a.child()));
    default: return a;
  }
}

template <typename F>
StructTree map_tree(const StructTree& t, F&& f) {
  switch (t.kind()) {
    case TKind::Leaf: return StructTree::leaf(f(t.formula()));
    case TKind::Node: return StructTree::node(map_tree(t.left(), f), map_tree(t.right(), f));
    case TKind::Bracket: return StructTree::bracket(map_tree(t.child(), f));
  }
  return t;
}

template <typename F>
Sequent map_sequent(const Sequent& s, F&& f) {
  return {s.antecedent ? std::optional<StructTree>(map_tree(*s.antecedent, f)) : std::nullopt, f(s.succedent)};
}

template <typename F>
Instantiation map_inst(const Instantiation& i, F&& f) {
  return {i.path, i.formula ? std::optional<LFormula>(f(*i.formula)) : std::nullopt, i.choice};
}

/// Maps derivations of s (negation systems) to derivations of s‡ from Ψ.
class DDaggerProof {
 public:
  explicit DDaggerProof(const AssumptionSet& psi) : lemmas_(psi) {}

  std::optional<Derivation> operator()(const Derivation& d) {
    if (auto it = memo_.find(d.get()); it != memo_.end()) return it->second;
    auto out = translate(*d);
    memo_.emplace(d.get(), out);
    keep_.push_back(d);
    return out;
  }

 private:
  std::optional<Derivation> translate(const DerivationNode& n) {
    auto f = [this](const LFormula& a) { return dd_(a); };
    switch (n.rule) {
      case Rule::Neg1: return lemmas_.nc(f(n.conclusion.antecedent->formula().left()));
      case Rule::Neg2: return lemmas_.em(f(n.conclusion.succedent.left()));
      case Rule::Ax5: return std::nullopt;  // its conclusion mentions ¬ outside the lemma shapes
      default: break;
    }
    std::vector<Derivation> prem;
    for (const auto& p : n.premises) {
      auto t = (*this)(p);
      if (!t) return std::nullopt;
      prem.push_back(*t);
    }
    return make_node(map_sequent(n.conclusion, f), n.rule, std::move(prem), map_inst(n.inst, f));
  }

  DDagger dd_;
  DeMorganLemmas lemmas_;
  std::unordered_map<const DerivationNode*, std::optional<Derivation>> memo_;
  std::vector<Derivation> keep_;  // pins memo keys
};

/// The p{A} ↦ ¬A rewrite of a derivation: Ψ leaves become ¬1/¬2 instances.
class FreshToNegation {
 public:
  Derivation operator()(const Derivation& d) {
    if (auto it = memo_.find(d.get()); it != memo_.end()) return it->second;
    auto out = rewrite(*d);
    memo_.emplace(d.get(), out);
    keep_.push_back(d);
    return out;
  }

 private:
  Derivation rewrite(const DerivationNode& n) {
    auto f = [](const LFormula& a) { return undo_ddagger(a); };
    auto concl = map_sequent(n.conclusion, f);
    Rule rule = n.rule;
    if (rule == Rule::Assumption && concl.is_simple()) {
      const auto& l = concl.antecedent->formula();
      const auto& c = concl.succedent;
      if (c.is(Conn::Bottom) && l.is(Conn::And) && l.right().is(Conn::Not) && l.right().child() == l.left()) rule = Rule::Neg1;
      if (l.is(Conn::Top) && c.is(Conn::Or) && c.right().is(Conn::Not) && c.right().child() == c.left()) rule = Rule::Neg2;
    }
    std::vector<Derivation> prem;
    for (const auto& p : n.premises) prem.push_back((*this)(p));
    return make_node(std::move(concl), rule, std::move(prem), map_inst(n.inst, f));
  }

  std::unordered_map<const DerivationNode*, Derivation> memo_;
  std::vector<Derivation> keep_;
};

/// Maps derivations of s (bounded systems) to derivations of s§ from Φ§ ∪ Θ.
class SectionProof {
 public:
  explicit SectionProof(const AssumptionSet& phi) : absorb_(phi) {}

  std::optional<Derivation> operator()(const Derivation& d) {
    if (auto it = memo_.find(d.get()); it != memo_.end()) return it->second;
    auto out = translate(*d);
    memo_.emplace(d.get(), out);
    keep_.push_back(d);
    return out;
  }

 private:
  std::optional<Derivation> translate(const DerivationNode& n) {
    auto f = [](const LFormula& a) { return section(a); };
    const auto concl = section(n.conclusion);
    switch (n.rule) {
      case Rule::Top: return absorb_.structure_top(*concl.antecedent);
      case Rule::Bot: return absorb_.structure_bottom(*concl.antecedent, *n.inst.path, concl.succedent);
      case Rule::UnderR:
      case Rule::OverR:
        // with an empty context the premise has no p_⊤ to pair with
        if (!n.conclusion.antecedent) return std::nullopt;
        break;
      case Rule::Neg1: case Rule::Neg2: case Rule::OneR: case Rule::OneLl: case Rule::OneLr: case Rule::Ax5:
        return std::nullopt;
      default: break;
    }
    std::vector<Derivation> prem;
    for (const auto& p : n.premises) {
      auto t = (*this)(p);
      if (!t) return std::nullopt;
      prem.push_back(*t);
    }
    auto inst = map_inst(n.inst, f);
    if (n.rule == Rule::Cut && !n.conclusion.antecedent) inst.path = Path{};
    return make_node(concl, n.rule, std::move(prem), inst);
  }

  Absorption absorb_;
  std::unordered_map<const DerivationNode*, std::optional<Derivation>> memo_;
  std::vector<Derivation> keep_;
};

}  // namespace lambek
