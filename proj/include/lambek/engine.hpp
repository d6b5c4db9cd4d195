// Classical tableau for sequents built from letters, ⊤, ⊥, ¬, ∧, ∨ and ·, read
// over ternary frames (· is a binary diamond, ¬(X·Y) the matching box).
//
// A closed tableau for X is turned into a derivation of X ⇒ ⊥ that uses only
// the Boolean rules of the starred calculi plus ·L/·R, Cut and assumptions. An
// open tableau yields a finite model: each world is a saturated set of facts and
// each diamond X·Y gets one (w,u,v) triple whose children were built to respect
// every box at w.
#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lambek/build.hpp"
#include "lambek/checker.hpp"
#include "lambek/semantics.hpp"

namespace lambek {

inline constexpr std::uint32_t kClassicalMask =
    LFormula::bit(Conn::Atom) | LFormula::bit(Conn::Fresh) | LFormula::bit(Conn::Bottom) | LFormula::bit(Conn::Top) |
    LFormula::bit(Conn::And) | LFormula::bit(Conn::Or) | LFormula::bit(Conn::Not) | LFormula::bit(Conn::Prod);

inline bool in_classical_fragment(const LFormula& f) { return (f.mask() & ~kClassicalMask) == 0; }

inline bool in_classical_fragment(const Sequent& s) {
  if (!in_classical_fragment(s.succedent)) return false;
  if (!s.antecedent) return true;
  if (has_bracket(*s.antecedent)) return false;
  bool ok = true;
  for_each_leaf(*s.antecedent, [&](const LFormula& f) { ok = ok && in_classical_fragment(f); });
  return ok;
}

inline bool in_classical_fragment(const AssumptionSet& phi) {
  for (const auto& s : phi)
    if (!s.is_simple() || !in_classical_fragment(s)) return false;
  return true;
}

/// Sequents the tableau accepts when formulas outside the fragment are read as
/// opaque letters: its proofs stay valid, its models are re-verified.
inline bool in_tableau_skeleton(const Sequent& s) { return !s.antecedent || !has_bracket(*s.antecedent); }

inline bool in_tableau_skeleton(const AssumptionSet& phi) {
  for (const auto& s : phi)
    if (!s.is_simple()) return false;
  return true;
}

struct EngineLimits {
  int max_depth = 64;              // nesting of product witnesses
  std::size_t max_worlds = 400000;  // tableau nodes opened, all worlds together
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
};

enum class Verdict { Closed, Open, Unknown };

/// A saturated open world: the letters true there and one child pair per diamond.
struct OpenWorld {
  std::vector<LFormula> letters;
  std::vector<std::pair<std::shared_ptr<const OpenWorld>, std::shared_ptr<const OpenWorld>>> children;
};
using OpenWorldPtr = std::shared_ptr<const OpenWorld>;

/// Numbers the worlds reachable from `root` (shared worlds once) into a ternary model.
inline TernaryModel model_of(const OpenWorldPtr& root) {
  TernaryModel m;
  std::unordered_map<const OpenWorld*, int> ids;
  std::vector<const OpenWorld*> order;
  std::function<int(const OpenWorld*)> number = [&](const OpenWorld* w) {
    if (auto it = ids.find(w); it != ids.end()) return it->second;
    const int id = static_cast<int>(order.size());
    ids.emplace(w, id);
    order.push_back(w);
    for (const auto& [u, v] : w->children) {
      number(u.get());
      number(v.get());
    }
    return id;
  };
  number(root.get());
  m.states = state_names(static_cast<int>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto* w = order[i];
    for (const auto& p : w->letters) m.val[render(p)].push_back(static_cast<int>(i));
    for (const auto& [u, v] : w->children) m.rel3.push_back({static_cast<int>(i), ids.at(u.get()), ids.at(v.get())});
  }
  for (auto& [p, ws] : m.val) std::sort(ws.begin(), ws.end());
  std::sort(m.rel3.begin(), m.rel3.end());
  m.rel3.erase(std::unique(m.rel3.begin(), m.rel3.end()), m.rel3.end());
  return m;
}

class ClassicalEngine {
 public:
  struct Outcome {
    Verdict verdict = Verdict::Unknown;
    Derivation proof;   // X ⇒ ⊥ when closed
    OpenWorldPtr world;  // when open
  };

  struct SequentOutcome {
    Verdict verdict = Verdict::Unknown;
    Derivation proof;
    std::optional<TernaryModel> model;  // verified countermodel, state 0 falsifies
    std::string note;
  };

  explicit ClassicalEngine(AssumptionSet phi, EngineLimits lim = {}) : phi_(std::move(phi)), lim_(lim) {}

  std::size_t worlds_opened() const { return worlds_; }

  /// New limits for the next call; proofs and models found so far stay cached.
  void set_limits(EngineLimits lim) {
    lim_ = lim;
    worlds_ = 0;
    exhausted_ = false;
  }

  /// Γ ⇒ B through the refutation of φ(Γ) ∧ ¬B (⊤ ∧ ¬B for an empty Γ).
  SequentOutcome prove(const Sequent& s) {
    using namespace build;
    SequentOutcome out;
    if (!in_tableau_skeleton(s) || !in_tableau_skeleton(phi_)) {
      out.note = "bracketed antecedent or non-simple assumption";
      return out;
    }
    const LFormula b = s.succedent;
    const LFormula a = s.antecedent ? phi_of_tree(*s.antecedent) : LFormula::top();
    const LFormula target = LFormula::conj(a, LFormula::neg(b));
    auto r = refute(target, 0);
    out.verdict = r.verdict;
    if (r.verdict == Verdict::Unknown) {
      out.note = exhausted_ ? "engine limits reached" : "undetermined";
      return out;
    }
    if (r.verdict == Verdict::Open) {
      auto m = model_of(r.world);
      bool falsifies = false;
      try {
        falsifies = !sequent_true(m, 0, s) && satisfies_assumptions(m, phi_);
      } catch (const ModelError&) {
        // opaque ◇ / □↓ / 1 need structure the tableau model lacks
      }
      if (!falsifies) {
        out.verdict = Verdict::Unknown;
        out.note = "open tableau did not yield a countermodel";
        return out;
      }
      out.model = std::move(m);
      return out;
    }
    // A ⇒ A∧(B∨¬B) ⇒ (A∧B)∨(A∧¬B) ⇒ B
    auto em = and_r(id(a), cut(top(a), neg2(b)));
    auto cases = or_l(and_l(id(b), LFormula::conj(a, b), 1), chain(r.proof, bot(b)));
    auto ab = chain(chain(em, dist(a, b, LFormula::neg(b))), cases);
    if (!s.antecedent) {
      out.proof = cut(top(std::optional<StructTree>{}), ab);
    } else if (s.antecedent->is_leaf()) {
      out.proof = ab;
    } else {
      out.proof = cut(phi_intro(*s.antecedent), ab);
    }
    return out;
  }

  /// X ⇒ ⊥, or an open world satisfying X.
  Outcome refute(const LFormula& x, int depth) {
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    if (depth > lim_.max_depth || !tick()) return {};
    State st;
    st.ants.push_back(x);
    add_fact(st, x, build::id(x));
    auto r = expand(std::move(st), depth);
    if (r.verdict != Verdict::Unknown) memo_.emplace(x, r);
    return r;
  }

 private:
  struct Fact {
    LFormula f;
    Derivation d;       // ants[level] ⇒ f
    std::size_t level;
    bool done = false;
  };
  struct State {
    std::vector<LFormula> ants;  // ants[k+1] = ants[k] ∧ (branch formula)
    std::vector<Fact> facts;
    std::unordered_map<LFormula, std::size_t, FormulaHash> index;
    const LFormula& g() const { return ants.back(); }
  };
  using Cont = std::function<Outcome(State&, const Derivation&)>;

  struct ProdOutcome {
    Verdict verdict = Verdict::Unknown;
    Derivation proof;  // X·Y ⇒ E, E built from ⊥, ∨ and box bodies
    OpenWorldPtr u, v;
  };

  static Derivation phi_intro(const StructTree& g) {
    if (g.is_leaf()) return build::id(g.formula());
    return build::prod_r(phi_intro(g.left()), phi_intro(g.right()));
  }

  bool tick() {
    if (++worlds_ > lim_.max_worlds) return exhausted_ = true, false;
    if ((worlds_ & 63) == 0 && std::chrono::steady_clock::now() > lim_.deadline) return exhausted_ = true, false;
    return !exhausted_;
  }

  static void add_fact(State& st, const LFormula& f, Derivation d) {
    if (st.index.count(f)) return;
    st.index.emplace(f, st.facts.size());
    st.facts.push_back({f, std::move(d), st.ants.size() - 1});
  }

  static Derivation fact(State& st, std::size_t i) {
    auto& fa = st.facts[i];
    for (std::size_t k = fa.level + 1; k < st.ants.size(); ++k) fa.d = build::and_l(fa.d, st.ants[k], 0);
    fa.level = st.ants.size() - 1;
    return fa.d;
  }

  static bool has(const State& st, const LFormula& f) { return st.index.count(f) != 0; }

  /// G ⇒ f from the facts by ⊤, ∧R and ∨R.
  static std::optional<Derivation> entails(State& st, const LFormula& f) {
    using namespace build;
    if (auto it = st.index.find(f); it != st.index.end()) return fact(st, it->second);
    switch (f.conn()) {
      case Conn::Top: return top(st.g());
      case Conn::And: {
        auto l = entails(st, f.left());
        if (!l) return std::nullopt;
        auto r = entails(st, f.right());
        if (!r) return std::nullopt;
        return and_r(*l, *r);
      }
      case Conn::Or:
        if (auto l = entails(st, f.left())) return or_r(*l, f.right(), 0);
        if (auto r = entails(st, f.right())) return or_r(*r, f.left(), 1);
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  static std::optional<Derivation> contradiction(State& st) {
    using namespace build;
    for (std::size_t i = 0; i < st.facts.size(); ++i) {
      const LFormula f = st.facts[i].f;
      if (f.is(Conn::Bottom)) return fact(st, i);
      if (!f.is(Conn::Not)) continue;
      if (auto e = entails(st, f.child())) return cut(and_r(*e, fact(st, i)), neg1(f.child()));
    }
    return std::nullopt;
  }

  /// From G ⇒ X∨Y: explore G∧X and G∧Y with `cont`, then ∨L under the D axiom.
  Outcome branch(State& st, const Derivation& d_or, const Cont& cont) {
    using namespace build;
    const LFormula g = st.g(), x = succ(d_or).left(), y = succ(d_or).right();
    Derivation closed[2];
    bool unknown = false;
    for (int side = 0; side < 2; ++side) {
      if (!tick()) return {};
      const LFormula c = side == 0 ? x : y;
      State sub = st;
      const LFormula gc = LFormula::conj(g, c);
      sub.ants.push_back(gc);
      auto dc = and_l(id(c), gc, 1);
      add_fact(sub, c, dc);
      auto r = cont(sub, dc);
      if (r.verdict == Verdict::Open) return r;
      if (r.verdict == Verdict::Unknown) unknown = true;
      closed[side] = r.proof;
    }
    if (unknown) return {};
    auto d = chain(chain(and_r(id(g), d_or), dist(g, x, y)), or_l(closed[0], closed[1]));
    return {Verdict::Closed, d, nullptr};
  }

  Outcome split(State& st, const LFormula& y, int depth) {
    using namespace build;
    auto em = cut(top(st.g()), neg2(y));
    return branch(st, em, [this, depth](State& s, const Derivation&) { return expand(s, depth); });
  }

  Outcome expand(State st, int depth) {
    for (;;) {
      if (!tick()) return {};
      if (auto d = contradiction(st)) return {Verdict::Closed, *d, nullptr};
      bool progressed = false;
      for (std::size_t i = 0; i < st.facts.size() && !progressed; ++i) {
        if (st.facts[i].done) continue;
        const LFormula f = st.facts[i].f;
        switch (f.conn()) {
          case Conn::Atom: case Conn::Fresh: case Conn::Top: case Conn::Bottom: case Conn::Prod:
            st.facts[i].done = true;
            break;
          case Conn::And: {
            auto d = fact(st, i);
            st.facts[i].done = true;
            add_fact(st, f.left(), build::cut(d, build::and_l(build::id(f.left()), f, 0)));
            add_fact(st, f.right(), build::cut(d, build::and_l(build::id(f.right()), f, 1)));
            progressed = true;
            break;
          }
          case Conn::Or:
            if (entails(st, f.left()) || entails(st, f.right())) {
              st.facts[i].done = true;
              break;
            }
            return branch(st, fact(st, i), [this, depth](State& s, const Derivation&) { return expand(s, depth); });
          case Conn::Not: {
            const LFormula c = f.child();
            switch (c.conn()) {
              case Conn::Atom: case Conn::Fresh: case Conn::Bottom: case Conn::Top: case Conn::Prod:
                st.facts[i].done = true;
                break;
              case Conn::Not:
                if (entails(st, c.child())) {
                  st.facts[i].done = true;
                  break;
                }
                return split(st, c.child(), depth);
              case Conn::And: {
                const auto nl = LFormula::neg(c.left()), nr = LFormula::neg(c.right());
                if (has(st, nl) || has(st, nr)) {
                  st.facts[i].done = true;
                  break;
                }
                return split(st, entails(st, c.left()) ? c.right() : c.left(), depth);
              }
              case Conn::Or: {
                const auto nl = LFormula::neg(c.left()), nr = LFormula::neg(c.right());
                if (has(st, nl) && has(st, nr)) {
                  st.facts[i].done = true;
                  break;
                }
                return split(st, has(st, nl) ? c.right() : c.left(), depth);
              }
              default:  // outside the fragment: opaque
                st.facts[i].done = true;
                break;
            }
            break;
          }
          default:
            st.facts[i].done = true;
            break;
        }
      }
      if (progressed) continue;
      if (std::any_of(st.facts.begin(), st.facts.end(), [](const Fact& fa) { return !fa.done; })) continue;

      // Every Boolean fact is settled; now the assumptions, then the diamonds.
      bool assumption_step = false;
      for (const auto& a : phi_) {
        const LFormula& lhs = a.antecedent->formula();
        if (entails(st, a.succedent)) continue;
        if (auto e = entails(st, lhs)) {
          add_fact(st, a.succedent, build::cut(*e, build::assume(a)));
          assumption_step = true;
          break;
        }
        if (has(st, LFormula::neg(lhs))) continue;
        return split(st, lhs, depth);
      }
      if (assumption_step) continue;
      return modal_phase(st, depth);
    }
  }

  Outcome modal_phase(State& st, int depth) {
    std::vector<std::pair<LFormula, LFormula>> boxes;
    for (const auto& fa : st.facts)
      if (fa.f.is(Conn::Not) && fa.f.child().is(Conn::Prod)) boxes.emplace_back(fa.f.child().left(), fa.f.child().right());
    auto world = std::make_shared<OpenWorld>();
    bool unknown = false;
    for (std::size_t i = 0; i < st.facts.size(); ++i) {
      const LFormula f = st.facts[i].f;
      if (f.is_letter()) world->letters.push_back(f);
      if (!f.is(Conn::Prod)) continue;
      auto p = prod(f.left(), f.right(), boxes, 0, depth + 1);
      if (p.verdict == Verdict::Closed) return dismiss(st, build::cut(fact(st, i), p.proof));
      if (p.verdict == Verdict::Unknown) {
        unknown = true;
        continue;
      }
      world->children.emplace_back(p.u, p.v);
    }
    if (unknown) return {};
    return {Verdict::Open, nullptr, world};
  }

  /// G ⇒ ⊥ from G ⇒ E where every box body in E is refuted by a fact.
  Outcome dismiss(State& st, const Derivation& d) {
    using namespace build;
    const LFormula e = succ(d);
    if (e.is(Conn::Bottom)) return {Verdict::Closed, d, nullptr};
    if (e.is(Conn::Or))
      return branch(st, d, [this](State& s, const Derivation& side) { return dismiss(s, side); });
    auto it = st.index.find(LFormula::neg(e));
    if (it == st.index.end()) return {};
    return {Verdict::Closed, cut(and_r(d, fact(st, it->second)), neg1(e)), nullptr};
  }

  /// X·Y ⇒ E against the boxes from index k on, or a witness pair.
  ProdOutcome prod(const LFormula& x, const LFormula& y, const std::vector<std::pair<LFormula, LFormula>>& boxes,
                   std::size_t k, int depth) {
    using namespace build;
    const auto bot_f = LFormula::bottom();
    auto rx = refute(x, depth);
    if (rx.verdict == Verdict::Closed) {
      auto hole = bot(StructTree::node(leaf(bot_f), leaf(y)), {0}, bot_f);
      return {Verdict::Closed, prod_l(cut(rx.proof, hole, {0})), nullptr, nullptr};
    }
    auto ry = refute(y, depth);
    if (ry.verdict == Verdict::Closed) {
      auto hole = bot(StructTree::node(leaf(x), leaf(bot_f)), {1}, bot_f);
      return {Verdict::Closed, prod_l(cut(ry.proof, hole, {1})), nullptr, nullptr};
    }
    if (k == boxes.size()) {
      if (rx.verdict == Verdict::Unknown || ry.verdict == Verdict::Unknown) return {};
      return {Verdict::Open, nullptr, rx.world, ry.world};
    }
    const auto& [u, v] = boxes[k];
    const auto nu = LFormula::neg(u), nv = LFormula::neg(v);
    const auto xu = LFormula::conj(x, u), xnu = LFormula::conj(x, nu);
    const auto yv = LFormula::conj(y, v), ynv = LFormula::conj(y, nv);
    auto a = prod(xnu, y, boxes, k + 1, depth);
    if (a.verdict == Verdict::Open) return a;
    auto b2 = prod(xu, ynv, boxes, k + 1, depth);
    if (b2.verdict == Verdict::Open) return b2;
    if (a.verdict == Verdict::Unknown || b2.verdict == Verdict::Unknown) return {};

    const auto uv = LFormula::prod(u, v);
    const auto ea = succ(a.proof), eb2 = succ(b2.proof);
    auto b1 = mono(and_l(id(u), xu, 1), and_l(id(v), yv, 1));
    auto split_y = chain(and_r(id(y), cut(top(y), neg2(v))), dist(y, v, nv));
    auto b = chain(chain(mono(id(xu), split_y), dist_right(xu, yv, ynv)),
                   or_l(or_r(b1, eb2, 0), or_r(b2.proof, uv, 1)));
    const auto eb = succ(b);
    auto split_x = chain(and_r(id(x), cut(top(x), neg2(u))), dist(x, u, nu));
    auto d = chain(chain(mono(split_x, id(y)), dist_left(xu, xnu, y)),
                   or_l(or_r(b, ea, 0), or_r(a.proof, eb, 1)));
    return {Verdict::Closed, d, nullptr, nullptr};
  }

  /// (A∨B)·C ⇒ (A·C)∨(B·C)
  static Derivation dist_left(const LFormula& a, const LFormula& b, const LFormula& c) {
    using namespace build;
    auto l = or_r(prod_r(id(a), id(c)), LFormula::prod(b, c), 0);
    auto r = or_r(prod_r(id(b), id(c)), LFormula::prod(a, c), 1);
    return prod_l(or_l(l, r, {0}));
  }

  /// C·(A∨B) ⇒ (C·A)∨(C·B)
  static Derivation dist_right(const LFormula& c, const LFormula& a, const LFormula& b) {
    using namespace build;
    auto l = or_r(prod_r(id(c), id(a)), LFormula::prod(c, b), 0);
    auto r = or_r(prod_r(id(c), id(b)), LFormula::prod(c, a), 1);
    return prod_l(or_l(l, r, {1}));
  }

  AssumptionSet phi_;
  EngineLimits lim_;
  std::size_t worlds_ = 0;
  bool exhausted_ = false;
  std::unordered_map<LFormula, Outcome, FormulaHash> memo_;
};

}  // namespace lambek
