// Decision procedure for K: a labelled-free tableau over sets of modal formulas.
// Booleans are saturated first, disjunctive formulas branch, and each surviving
// ◇A opens one successor holding A and the bodies of every ¬◇B at the world.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lambek/semantics.hpp"

namespace lambek {

struct KVerdict {
  bool valid = false;
  std::optional<KripkeModel> countermodel;  // falsifies the input at `root` when invalid
  int root = 0;
  std::size_t tableau_nodes = 0;  // worlds explored; the trace size of a closed tableau
};

namespace detail {

struct KWorld {
  std::vector<std::string> atoms;
  std::vector<std::shared_ptr<const KWorld>> successors;
};

class KTableau {
 public:
  std::size_t nodes = 0;

  /// A tree satisfying every formula of `s`, or null when the set is unsatisfiable.
  std::shared_ptr<const KWorld> satisfy(std::vector<ModalFormula> s) {
    ++nodes;
    std::unordered_set<ModalFormula, FormulaHash> have(s.begin(), s.end());
    auto add = [&](const ModalFormula& f) {
      if (have.insert(f).second) s.push_back(f);
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto f = s[i];
      switch (f.kind()) {
        case MKind::Bottom: return nullptr;
        case MKind::And: add(f.left()); add(f.right()); break;
        case MKind::Not: {
          const auto g = f.child();
          if (have.count(g)) return nullptr;
          switch (g.kind()) {
            case MKind::Not: add(g.child()); break;
            case MKind::Or: add(ModalFormula::neg(g.left())); add(ModalFormula::neg(g.right())); break;
            case MKind::Implies: add(g.left()); add(ModalFormula::neg(g.right())); break;
            default: break;
          }
          break;
        }
        default:
          if (have.count(ModalFormula::neg(f))) return nullptr;
          break;
      }
    }
    // Branch on the first unresolved disjunctive formula.
    for (const auto& f : s) {
      std::optional<std::pair<ModalFormula, ModalFormula>> alt;
      if (f.kind() == MKind::Or) alt.emplace(f.left(), f.right());
      else if (f.kind() == MKind::Implies) alt.emplace(ModalFormula::neg(f.left()), f.right());
      else if (f.kind() == MKind::Not && f.child().kind() == MKind::And)
        alt.emplace(ModalFormula::neg(f.child().left()), ModalFormula::neg(f.child().right()));
      if (!alt || have.count(alt->first) || have.count(alt->second)) continue;
      for (const auto& side : {alt->first, alt->second}) {
        auto t = s;
        t.push_back(side);
        if (auto w = satisfy(std::move(t))) return w;
      }
      return nullptr;
    }
    auto world = std::make_shared<KWorld>();
    std::vector<ModalFormula> boxes;
    for (const auto& f : s) {
      if (f.kind() == MKind::Atom) world->atoms.push_back(f.name());
      if (f.kind() == MKind::Not && f.child().kind() == MKind::Diamond) boxes.push_back(ModalFormula::neg(f.child().child()));
    }
    for (const auto& f : s) {
      if (f.kind() != MKind::Diamond) continue;
      std::vector<ModalFormula> next{f.child()};
      next.insert(next.end(), boxes.begin(), boxes.end());
      auto w = satisfy(std::move(next));
      if (!w) return nullptr;
      world->successors.push_back(std::move(w));
    }
    return world;
  }
};

inline KripkeModel kripke_of(const std::shared_ptr<const KWorld>& root) {
  KripkeModel m;
  std::vector<const KWorld*> order;
  std::unordered_map<const KWorld*, int> ids;
  std::function<void(const KWorld*)> walk = [&](const KWorld* w) {
    if (ids.count(w)) return;
    ids.emplace(w, static_cast<int>(order.size()));
    order.push_back(w);
    for (const auto& s : w->successors) walk(s.get());
  };
  walk(root.get());
  m.states = state_names(static_cast<int>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& a : order[i]->atoms) m.val[a].push_back(static_cast<int>(i));
    for (const auto& s : order[i]->successors) m.rel.emplace_back(static_cast<int>(i), ids.at(s.get()));
  }
  return m;
}

}  // namespace detail

/// Valid iff ¬a has no model; otherwise a tree countermodel, re-checked here.
inline KVerdict k_decide(const ModalFormula& a) {
  detail::KTableau t;
  auto w = t.satisfy({ModalFormula::neg(a)});
  KVerdict v;
  v.tableau_nodes = t.nodes;
  if (!w) {
    v.valid = true;
    return v;
  }
  auto m = detail::kripke_of(w);
  if (eval_modal(m, 0, a)) throw std::logic_error("K tableau produced a model that does not falsify the formula");
  v.countermodel = std::move(m);
  return v;
}

}  // namespace lambek
