// Translations between the languages and the model constructions that go with
// them: the modal-to-Lambek translation, the negation-elimination embedding
// with its De Morgan dual (.)~, the constant-elimination embedding, and the
// two-copy ternary models (plain, exchange, unital).
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lambek/checker.hpp"
#include "lambek/closure.hpp"
#include "lambek/formula.hpp"
#include "lambek/semantics.hpp"
#include "lambek/system.hpp"

namespace lambek {

class TranslationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TranslationContext {
  std::string m_letter = "m";
};

// ---------------------------------------------------------------------------
// Modal formulas into BFNL*
// ---------------------------------------------------------------------------

inline LFormula dagger(const ModalFormula& a, const TranslationContext& ctx = {}) {
  switch (a.kind()) {
    case MKind::Atom:
      if (a.name() == ctx.m_letter) throw TranslationError("atom '" + a.name() + "' collides with the reserved letter");
      return LFormula::atom(a.name());
    case MKind::Bottom: return LFormula::bottom();
    case MKind::And: return LFormula::conj(dagger(a.left(), ctx), dagger(a.right(), ctx));
    case MKind::Or: return LFormula::disj(dagger(a.left(), ctx), dagger(a.right(), ctx));
    case MKind::Implies: return LFormula::disj(LFormula::neg(dagger(a.left(), ctx)), dagger(a.right(), ctx));
    case MKind::Not: return LFormula::neg(dagger(a.child(), ctx));
    case MKind::Diamond: return LFormula::prod(LFormula::atom(ctx.m_letter), dagger(a.child(), ctx));
  }
  throw TranslationError("unknown modal connective");
}

namespace detail {

inline std::vector<std::string> copy_names(const KripkeModel& m) {
  std::vector<std::string> out;
  for (const auto& s : m.states) {
    out.push_back(s + "_1");
    out.push_back(s + "_2");
  }
  return out;
}

inline void copy_valuation(const KripkeModel& m, TernaryModel& j, const TranslationContext& ctx) {
  for (const auto& [p, ws] : m.val) {
    if (p == ctx.m_letter) throw ModelError("the source valuation mentions the reserved letter");
    auto& out = j.val[p];
    for (int w : ws) {
      out.push_back(2 * w);
      out.push_back(2 * w + 1);
    }
    std::sort(out.begin(), out.end());
  }
  auto& all = j.val[ctx.m_letter];
  for (int i = 0; i < j.size(); ++i) all.push_back(i);
}

}  // namespace detail

/// Index of copy k (1 or 2) of Kripke state w in the constructed model.
inline int copy_index(int w, int k) { return 2 * w + (k - 1); }

/// W' = {w₁, w₂}; R' = {(w₁, w₂, u₁) | Rwu}; V' copies V; V'(m) = W'.
inline TernaryModel build_ternary_model(const KripkeModel& m, const TranslationContext& ctx = {}) {
  m.validate();
  TernaryModel j;
  j.states = detail::copy_names(m);
  for (auto [w, u] : m.rel) j.rel3.push_back({copy_index(w, 1), copy_index(w, 2), copy_index(u, 1)});
  detail::copy_valuation(m, j, ctx);
  return j;
}

/// R' = {(v₁,u₁,u₂), (v₁,u₂,u₁), (v₂,u₁,u₂), (v₂,u₂,u₁) | Rvu}.
inline TernaryModel build_ternary_model_exchange(const KripkeModel& m, const TranslationContext& ctx = {}) {
  m.validate();
  TernaryModel j;
  j.states = detail::copy_names(m);
  for (auto [v, u] : m.rel)
    for (int k = 1; k <= 2; ++k) {
      j.rel3.push_back({copy_index(v, k), copy_index(u, 1), copy_index(u, 2)});
      j.rel3.push_back({copy_index(v, k), copy_index(u, 2), copy_index(u, 1)});
    }
  detail::copy_valuation(m, j, ctx);
  return j;
}

/// Adds a unit state e with R'(u,e,u) and R'(u,u,e) for every u (e included);
/// e ∈ V'(p) iff V(p) = W in the source model. The reserved letter holds at e.
inline TernaryModel extend_with_unit(const TernaryModel& j, const KripkeModel& source, const TranslationContext& ctx = {}) {
  if (j.unit) throw ModelError("model already has a unit");
  TernaryModel out = j;
  std::string name = "1";
  while (std::find(out.states.begin(), out.states.end(), name) != out.states.end()) name += "'";
  const int e = out.size();
  out.states.push_back(name);
  out.unit = e;
  for (int u = 0; u <= e; ++u) {
    out.rel3.push_back({u, e, u});
    if (u != e) out.rel3.push_back({u, u, e});  // (e,e,e) once
  }
  for (auto& [p, ws] : out.val) {
    bool everywhere;
    if (p == ctx.m_letter) {
      everywhere = true;
    } else {
      auto it = source.val.find(p);
      everywhere = it != source.val.end() && static_cast<int>(it->second.size()) == source.size();
    }
    if (everywhere) ws.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// (.)~, Ψ, exn, the negation-elimination embedding
// ---------------------------------------------------------------------------

/// De Morgan dual on the ¬-free language: ⊤~ = ⊥, ⊥~ = ⊤, (A∧B)~ = A~∨B~,
/// (A∨B)~ = A~∧B~, p{A}~ = A, and X~ = p{X} for every other formula X.
class Tilde {
 public:
  LFormula operator()(const LFormula& a) {
    if (a.is(Conn::Not)) throw TranslationError("(.)~ is defined on negation-free formulas");
    switch (a.conn()) {
      case Conn::Top: return LFormula::bottom();
      case Conn::Bottom: return LFormula::top();
      case Conn::Fresh:
        if (a.tag() == FreshTag::NegOf) return a.payload();
        return LFormula::fresh_neg(a);
      case Conn::And:
      case Conn::Or: break;
      default: return LFormula::fresh_neg(a);
    }
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    auto l = (*this)(a.left()), r = (*this)(a.right());
    auto out = a.is(Conn::And) ? LFormula::disj(l, r) : LFormula::conj(l, r);
    if (memo_.size() > kCap) memo_.clear();
    memo_.emplace(a, out);
    return out;
  }

 private:
  static constexpr std::size_t kCap = 2'000'000;
  std::unordered_map<LFormula, LFormula, FormulaHash> memo_;
};

inline LFormula tilde(const LFormula& a) {
  Tilde t;
  return t(a);
}

/// The base letters of (.)~: formulas X with X~ = p{X}.
inline bool tilde_base(const LFormula& a) {
  return !a.is(Conn::And) && !a.is(Conn::Or) && !a.is(Conn::Top) && !a.is(Conn::Bottom) && !a.is(Conn::Not) &&
         !a.is_fresh(FreshTag::NegOf);
}

/// Ψ[T] = {A∧p{A} ⇒ ⊥, ⊤ ⇒ A∨p{A} | A ∈ T, A ∉ {⊤, ⊥}}.
inline AssumptionSet psi_set(const std::vector<LFormula>& T) {
  AssumptionSet out;
  FormulaSet seen;
  for (const auto& a : T) {
    if (a.is(Conn::Top) || a.is(Conn::Bottom) || !seen.insert(a).second) continue;
    auto pa = LFormula::fresh_neg(a);
    out.push_back(Sequent::simple(LFormula::conj(a, pa), LFormula::bottom()));
    out.push_back(Sequent::simple(LFormula::top(), LFormula::disj(a, pa)));
  }
  return out;
}

/// Ψ[T] in the orientation printed by the paper's definition, A∨p{A} ⇒ ⊤.
inline AssumptionSet psi_set_as_printed(const std::vector<LFormula>& T) {
  AssumptionSet out;
  for (auto s : psi_set(T))
    if (s.succedent.is(Conn::Or)) out.push_back(Sequent::simple(s.succedent, LFormula::top()));
    else out.push_back(s);
  return out;
}

inline std::vector<LFormula> exn(const std::vector<LFormula>& T) {
  std::vector<LFormula> out;
  for (const auto& a : T)
    if (!a.mentions(Conn::Not)) out.push_back(a);
  return out;
}

/// ‡: homomorphic except (¬A)‡ = (A‡)~.
class DDagger {
 public:
  LFormula operator()(const LFormula& a) {
    if (!a.mentions(Conn::Not)) return a;
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    LFormula out;
    if (a.is(Conn::Not)) {
      out = tilde_((*this)(a.child()));
    } else if (a.is_binary()) {
      auto l = (*this)(a.left()), r = (*this)(a.right());
      switch (a.conn()) {
        case Conn::And: out = LFormula::conj(l, r); break;
        case Conn::Or: out = LFormula::disj(l, r); break;
        case Conn::Prod: out = LFormula::prod(l, r); break;
        case Conn::Under: out = LFormula::under(l, r); break;
        default: out = LFormula::over(l, r); break;
      }
    } else if (a.is(Conn::Dia)) {
      out = LFormula::dia((*this)(a.child()));
    } else if (a.is(Conn::BoxDown)) {
      out = LFormula::boxdown((*this)(a.child()));
    } else {
      out = a;
    }
    memo_.emplace(a, out);
    return out;
  }

  StructTree operator()(const StructTree& t) {
    switch (t.kind()) {
      case TKind::Leaf: return StructTree::leaf((*this)(t.formula()));
      case TKind::Node: return StructTree::node((*this)(t.left()), (*this)(t.right()));
      case TKind::Bracket: return StructTree::bracket((*this)(t.child()));
    }
    return t;
  }

  Sequent operator()(const Sequent& s) {
    return {s.antecedent ? std::optional<StructTree>((*this)(*s.antecedent)) : std::nullopt, (*this)(s.succedent)};
  }

 private:
  Tilde tilde_;
  std::unordered_map<LFormula, LFormula, FormulaHash> memo_;
};

inline LFormula ddagger(const LFormula& a) {
  DDagger d;
  return d(a);
}

/// T = subformulas of the problem plus ⊤ and ⊥.
inline std::vector<LFormula> problem_base(const Sequent& s, const AssumptionSet& phi) {
  std::vector<Sequent> all = phi;
  all.push_back(s);
  auto T = subformulas(all);
  for (auto c : {LFormula::top(), LFormula::bottom()})
    if (std::find(T.begin(), T.end(), c) == T.end()) T.push_back(c);
  return T;
}

struct EmbeddedProblem {
  Sequent goal;
  AssumptionSet assumptions;
};

/// (Γ‡ ⇒ A‡, Φ‡ ∪ Ψ). Ψ covers exn(T) and every base letter of (.)~ among the
/// subformulas of the ‡-image of T, so that each p{X} the image mentions is bound.
inline EmbeddedProblem ddagger_problem(const Sequent& s, const AssumptionSet& phi = {}) {
  DDagger dd;
  auto T = problem_base(s, phi);
  std::vector<LFormula> images;
  for (const auto& a : T) images.push_back(dd(a));
  std::vector<LFormula> base = exn(T);
  for (const auto& x : subformulas(images))
    if (tilde_base(x)) base.push_back(x);
  EmbeddedProblem out{dd(s), {}};
  for (const auto& a : phi) out.assumptions.push_back(dd(a));
  for (auto& a : psi_set(base))
    if (std::find(out.assumptions.begin(), out.assumptions.end(), a) == out.assumptions.end()) out.assumptions.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// ec, Θ, the constant-elimination embedding
// ---------------------------------------------------------------------------

/// ⊥ ↦ p_⊥, ⊤ ↦ p_⊤, homomorphic elsewhere.
inline LFormula section(const LFormula& a) {
  if (a.is(Conn::Not)) throw TranslationError("the constant-elimination embedding is defined on negation-free formulas");
  if (!a.mentions(Conn::Top) && !a.mentions(Conn::Bottom)) return a;
  switch (a.conn()) {
    case Conn::Top: return LFormula::p_top();
    case Conn::Bottom: return LFormula::p_bot();
    case Conn::And: return LFormula::conj(section(a.left()), section(a.right()));
    case Conn::Or: return LFormula::disj(section(a.left()), section(a.right()));
    case Conn::Prod: return LFormula::prod(section(a.left()), section(a.right()));
    case Conn::Under: return LFormula::under(section(a.left()), section(a.right()));
    case Conn::Over: return LFormula::over(section(a.left()), section(a.right()));
    case Conn::Dia: return LFormula::dia(section(a.child()));
    case Conn::BoxDown: return LFormula::boxdown(section(a.child()));
    default: return a;
  }
}

inline StructTree section(const StructTree& t) {
  switch (t.kind()) {
    case TKind::Leaf: return StructTree::leaf(section(t.formula()));
    case TKind::Node: return StructTree::node(section(t.left()), section(t.right()));
    case TKind::Bracket: return StructTree::bracket(section(t.child()));
  }
  return t;
}

/// An empty antecedent becomes p_⊤ (the image system has no ⊤ to absorb it).
inline Sequent section(const Sequent& s) {
  return {s.antecedent ? section(*s.antecedent) : StructTree::leaf(LFormula::p_top()), section(s.succedent)};
}

inline std::vector<LFormula> ec(const std::vector<LFormula>& T) {
  std::vector<LFormula> out;
  for (const auto& a : T) {
    auto b = section(a);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  }
  return out;
}

/// Θ[T]: p_⊥⇒A, A∘p_⊥⇒p_⊥, p_⊥∘A⇒p_⊥, A⇒p_⊤, A∘p_⊤⇒p_⊤, p_⊤∘A⇒p_⊤, with ∘ stored as ·.
inline AssumptionSet theta_set(const std::vector<LFormula>& T) {
  const auto pb = LFormula::p_bot(), pt = LFormula::p_top();
  AssumptionSet out;
  for (const auto& a : T) {
    out.push_back(Sequent::simple(pb, a));
    out.push_back(Sequent::simple(LFormula::prod(a, pb), pb));
    out.push_back(Sequent::simple(LFormula::prod(pb, a), pb));
    out.push_back(Sequent::simple(a, pt));
    out.push_back(Sequent::simple(LFormula::prod(a, pt), pt));
    out.push_back(Sequent::simple(LFormula::prod(pt, a), pt));
  }
  return out;
}

/// (s§, Φ§ ∪ Θ[ec(T)]) with T the subformulas of the problem plus ⊤, ⊥.
inline EmbeddedProblem section_embed(const Sequent& s, const AssumptionSet& phi = {}) {
  auto T = problem_base(s, phi);
  EmbeddedProblem out{section(s), {}};
  for (const auto& a : phi) out.assumptions.push_back(section(a));
  for (auto& a : theta_set(ec(T)))
    if (std::find(out.assumptions.begin(), out.assumptions.end(), a) == out.assumptions.end()) out.assumptions.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// The composed reduction
// ---------------------------------------------------------------------------

struct PipelineResult {
  SystemSpec system;
  Sequent goal;
  AssumptionSet assumptions;
  LFormula dagger_image;
  EmbeddedProblem ddagger_stage;
  std::vector<std::string> provenance{"dagger", "ddagger", "section"};

  std::size_t output_size() const {
    std::size_t n = 0;
    auto count = [&](const Sequent& s) {
      for (const auto& f : formulas_of(s)) n += static_cast<std::size_t>(f.size()) + 1;
    };
    count(goal);
    for (const auto& a : assumptions) count(a);
    return n;
  }
};

inline PipelineResult pipeline_k_to_dfnl(const ModalFormula& a, const TranslationContext& ctx = {}) {
  auto d = dagger(a, ctx);
  auto dd = ddagger_problem(Sequent::empty(d));
  auto sec = section_embed(dd.goal, dd.assumptions);
  return {presets::dfnl_star(), sec.goal, sec.assumptions, d, dd};
}

}  // namespace lambek
