// Independent derivation checker: every node must instantiate a rule schema of
// the system, or be a member of the assumption set.
#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lambek/derivation.hpp"
#include "lambek/system.hpp"

namespace lambek {

using AssumptionSet = std::vector<Sequent>;

struct CheckResult {
  bool ok = true;
  std::string diagnostic;  // trail from the root to the first failing node
  explicit operator bool() const { return ok; }
};

class Checker {
 public:
  Checker(SystemSpec sys, const AssumptionSet& phi)
      : sys_(std::move(sys)), phi_(phi.begin(), phi.end()), id_(next_id()) {}

  CheckResult check(const Derivation& d) {
    CheckResult r;
    if (!d) return {false, "empty derivation"};
    r.ok = visit(d, r.diagnostic);
    return r;
  }

  /// Local validity of one node against its premises' conclusions.
  std::string node_error(const DerivationNode& n) const {
    if (auto v = language_violation(sys_, n.conclusion); !v.empty()) return v;
    const char* e = schema_error(n);
    return e ? e : "";
  }

 private:
  bool visit(const Derivation& d, std::string& trail) {
    if (d->verified_by.load(std::memory_order_relaxed) == id_) return true;
    bool ok = true;
    if (auto e = node_error(*d); !e.empty()) {
      trail = render(d->conclusion) + " [" + rule_name(d->rule) + "]: " + e;
      ok = false;
    } else {
      for (const auto& p : d->premises) {
        if (!p) {
          trail = render(d->conclusion) + " [" + rule_name(d->rule) + "]: missing premise";
          ok = false;
          break;
        }
        if (!visit(p, trail)) {
          trail = render(d->conclusion) + " [" + rule_name(d->rule) + "]\n  <- " + trail;
          ok = false;
          break;
        }
      }
    }
    if (ok) d->verified_by.store(id_, std::memory_order_relaxed);
    return ok;
  }

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }

  // Instantiation fields the rule does not read must be unset.
  static const char* stray_instantiation(const DerivationNode& n) {
    bool path = false, formula = false, choice = false;
    switch (n.rule) {
      case Rule::Cut: path = formula = true; break;
      case Rule::AndL: path = choice = true; break;
      case Rule::OrR: choice = true; break;
      case Rule::Bot:
      case Rule::UnderL:
      case Rule::OverL:
      case Rule::ProdL:
      case Rule::OrL:
      case Rule::Exchange:
      case Rule::DiaL:
      case Rule::BoxL:
      case Rule::OneLl:
      case Rule::OneLr: path = true; break;
      default: break;
    }
    if (!path && n.inst.path) return "rule takes no hole";
    if (!formula && n.inst.formula) return "rule takes no cut formula";
    if (!choice && n.inst.choice != 0) return "rule takes no choice";
    return nullptr;
  }

  // nullptr when the node instantiates its rule.
  const char* schema_error(const DerivationNode& n) const {
    const auto& G = n.conclusion.antecedent;
    const LFormula& C = n.conclusion.succedent;
    const auto& P = n.premises;
    auto arity = [&](std::size_t k) -> const char* { return P.size() == k ? nullptr : "wrong number of premises"; };
    auto leaf_is = [](const std::optional<StructTree>& t, const LFormula& f) { return t && t->is_leaf() && t->formula() == f; };
    auto prem_is = [&](std::size_t i, const std::optional<StructTree>& ant, const LFormula& succ) {
      return P[i] && P[i]->conclusion.antecedent.has_value() == ant.has_value() &&
             (!ant || *P[i]->conclusion.antecedent == *ant) && P[i]->conclusion.succedent == succ;
    };
    // Subtree at the instantiated hole; null when the path is missing or invalid.
    auto hole = [&]() -> std::optional<StructTree> {
      if (!G || !n.inst.path) return std::nullopt;
      try {
        return subtree_at(*G, *n.inst.path);
      } catch (const std::out_of_range&) {
        return std::nullopt;
      }
    };
    auto plug = [&](const StructTree& with) { return std::optional<StructTree>(replace_at(*G, *n.inst.path, with)); };
    // Premise i is Γ[f] ⇒ succ, with Γ[·] the conclusion's context at the hole.
    auto prem_plugged = [&](std::size_t i, const LFormula& f, const LFormula& succ) {
      if (n.inst.path->empty()) return P[i] && leaf_is(P[i]->conclusion.antecedent, f) && P[i]->conclusion.succedent == succ;
      return prem_is(i, plug(StructTree::leaf(f)), succ);
    };
    const char* const bad_hole = "hole does not match the principal structure";
    const char* const bad_prem = "premise does not match the schema";
    if (auto e = stray_instantiation(n)) return e;

    switch (n.rule) {
      case Rule::Id:
        if (auto e = arity(0)) return e;
        return leaf_is(G, C) ? nullptr : "antecedent differs from succedent";
      case Rule::D: {
        if (auto e = arity(0)) return e;
        if (!G || !G->is_leaf()) return "antecedent is not a formula";
        const auto& f = G->formula();
        if (!f.is(Conn::And) || !f.right().is(Conn::Or)) return "antecedent is not A/\\(B\\/C)";
        auto a = f.left(), b = f.right().left(), c = f.right().right();
        const bool shape = C.is(Conn::Or) && C.left().is(Conn::And) && C.right().is(Conn::And) && C.left().left() == a &&
                           C.left().right() == b && C.right().left() == a && C.right().right() == c;
        return shape ? nullptr : "succedent is not (A/\\B)\\/(A/\\C)";
      }
      case Rule::Bot: {
        if (auto e = arity(0)) return e;
        if (!sys_.bounded) return "rule not in system";
        auto h = hole();
        return h && h->is_leaf() && h->formula().is(Conn::Bottom) ? nullptr : bad_hole;
      }
      case Rule::Top:
        if (auto e = arity(0)) return e;
        if (!sys_.bounded) return "rule not in system";
        return C.is(Conn::Top) ? nullptr : "succedent is not top";
      case Rule::Neg1: {
        if (auto e = arity(0)) return e;
        if (!sys_.negation) return "rule not in system";
        if (!G || !G->is_leaf()) return "antecedent is not a formula";
        const auto& f = G->formula();
        if (!f.is(Conn::And) || !f.right().is(Conn::Not) || f.right().child() != f.left()) return "antecedent is not A/\\~A";
        return C.is(Conn::Bottom) ? nullptr : "succedent is not bot";
      }
      case Rule::Neg2:
        if (auto e = arity(0)) return e;
        if (!sys_.negation) return "rule not in system";
        if (!leaf_is(G, LFormula::top())) return "antecedent is not top";
        return C.is(Conn::Or) && C.right().is(Conn::Not) && C.right().child() == C.left() ? nullptr : "succedent is not A\\/~A";
      case Rule::UnderL: {
        if (auto e = arity(2)) return e;
        auto h = hole();
        if (!h || !h->is_node() || !h->right().is_leaf() || !h->right().formula().is(Conn::Under)) return bad_hole;
        auto f = h->right().formula();
        if (!prem_is(0, h->left(), f.left()) || !prem_plugged(1, f.right(), C)) return bad_prem;
        return nullptr;
      }
      case Rule::UnderR: {
        if (auto e = arity(1)) return e;
        if (!C.is(Conn::Under)) return "succedent is not A\\B";
        std::optional<StructTree> ant = G ? StructTree::node(StructTree::leaf(C.left()), *G) : StructTree::leaf(C.left());
        return prem_is(0, ant, C.right()) ? nullptr : bad_prem;
      }
      case Rule::OverL: {
        if (auto e = arity(2)) return e;
        auto h = hole();
        if (!h || !h->is_node() || !h->left().is_leaf() || !h->left().formula().is(Conn::Over)) return bad_hole;
        auto f = h->left().formula();
        if (!prem_plugged(0, f.left(), C) || !prem_is(1, h->right(), f.right())) return bad_prem;
        return nullptr;
      }
      case Rule::OverR: {
        if (auto e = arity(1)) return e;
        if (!C.is(Conn::Over)) return "succedent is not A/B";
        std::optional<StructTree> ant = G ? StructTree::node(*G, StructTree::leaf(C.right())) : StructTree::leaf(C.right());
        return prem_is(0, ant, C.left()) ? nullptr : bad_prem;
      }
      case Rule::ProdL: {
        if (auto e = arity(1)) return e;
        auto h = hole();
        if (!h || !h->is_leaf() || !h->formula().is(Conn::Prod)) return bad_hole;
        auto f = h->formula();
        return prem_is(0, plug(StructTree::node(StructTree::leaf(f.left()), StructTree::leaf(f.right()))), C) ? nullptr : bad_prem;
      }
      case Rule::ProdR:
        if (auto e = arity(2)) return e;
        if (!C.is(Conn::Prod) || !G || !G->is_node()) return "conclusion is not G o D => A*B";
        return prem_is(0, G->left(), C.left()) && prem_is(1, G->right(), C.right()) ? nullptr : bad_prem;
      case Rule::Cut: {
        if (auto e = arity(2)) return e;
        if (!n.inst.formula) return "cut formula missing";
        const LFormula& A = *n.inst.formula;
        if (!G) return prem_is(0, std::nullopt, A) && P[1] && leaf_is(P[1]->conclusion.antecedent, A) && P[1]->conclusion.succedent == C ? nullptr : bad_prem;
        auto h = hole();
        if (!h) return bad_hole;
        return prem_is(0, *h, A) && prem_plugged(1, A, C) ? nullptr : bad_prem;
      }
      case Rule::AndL: {
        if (auto e = arity(1)) return e;
        auto h = hole();
        if (!h || !h->is_leaf() || !h->formula().is(Conn::And) || (n.inst.choice != 0 && n.inst.choice != 1)) return bad_hole;
        auto f = h->formula();
        return prem_plugged(0, n.inst.choice == 0 ? f.left() : f.right(), C) ? nullptr : bad_prem;
      }
      case Rule::AndR:
        if (auto e = arity(2)) return e;
        if (!C.is(Conn::And)) return "succedent is not A/\\B";
        return prem_is(0, G, C.left()) && prem_is(1, G, C.right()) ? nullptr : bad_prem;
      case Rule::OrL: {
        if (auto e = arity(2)) return e;
        auto h = hole();
        if (!h || !h->is_leaf() || !h->formula().is(Conn::Or)) return bad_hole;
        auto f = h->formula();
        return prem_plugged(0, f.left(), C) && prem_plugged(1, f.right(), C) ? nullptr : bad_prem;
      }
      case Rule::OrR:
        if (auto e = arity(1)) return e;
        if (!C.is(Conn::Or) || (n.inst.choice != 0 && n.inst.choice != 1)) return "succedent is not A\\/B";
        return prem_is(0, G, n.inst.choice == 0 ? C.left() : C.right()) ? nullptr : bad_prem;
      case Rule::Exchange: {
        if (auto e = arity(1)) return e;
        if (!sys_.exchange) return "rule not in system";
        auto h = hole();
        if (!h || !h->is_node()) return bad_hole;
        return prem_is(0, plug(StructTree::node(h->right(), h->left())), C) ? nullptr : bad_prem;
      }
      case Rule::DiaL: {
        if (auto e = arity(1)) return e;
        if (!sys_.is_modal()) return "rule not in system";
        auto h = hole();
        if (!h || !h->is_leaf() || !h->formula().is(Conn::Dia)) return bad_hole;
        return prem_is(0, plug(StructTree::bracket(StructTree::leaf(h->formula().child()))), C) ? nullptr : bad_prem;
      }
      case Rule::DiaR:
        if (auto e = arity(1)) return e;
        if (!sys_.is_modal()) return "rule not in system";
        if (!C.is(Conn::Dia) || !G || !G->is_bracket()) return "conclusion is not <G> => <>A";
        return prem_is(0, G->child(), C.child()) ? nullptr : bad_prem;
      case Rule::BoxL: {
        if (auto e = arity(1)) return e;
        if (!sys_.is_modal()) return "rule not in system";
        auto h = hole();
        if (!h || !h->is_bracket() || !h->child().is_leaf() || !h->child().formula().is(Conn::BoxDown)) return bad_hole;
        return prem_plugged(0, h->child().formula().child(), C) ? nullptr : bad_prem;
      }
      case Rule::BoxR:
        if (auto e = arity(1)) return e;
        if (!sys_.is_modal()) return "rule not in system";
        if (!C.is(Conn::BoxDown) || !G) return "conclusion is not G => [v]A";
        return prem_is(0, StructTree::bracket(*G), C.child()) ? nullptr : bad_prem;
      case Rule::AxT:
        if (auto e = arity(0)) return e;
        if (!sys_.has_T()) return "rule not in system";
        return C.is(Conn::Dia) && leaf_is(G, C.child()) ? nullptr : "not an instance of A => <>A";
      case Rule::Ax4:
        if (auto e = arity(0)) return e;
        if (!sys_.has_4()) return "rule not in system";
        return C.is(Conn::Dia) && G && G->is_leaf() && G->formula().is(Conn::Dia) && G->formula().child() == C ? nullptr : "not an instance of <><>A => <>A";
      case Rule::Ax5: {
        if (auto e = arity(0)) return e;
        if (!sys_.has_5()) return "rule not in system";
        if (!G || !G->is_leaf() || !G->formula().is(Conn::Dia)) return "not an instance of <>A => ~<>~<>A";
        const auto& d = G->formula();
        const bool shape = C.is(Conn::Not) && C.child().is(Conn::Dia) && C.child().child().is(Conn::Not) && C.child().child().child() == d;
        return shape ? nullptr : "not an instance of <>A => ~<>~<>A";
      }
      case Rule::OneR:
        if (auto e = arity(0)) return e;
        if (!sys_.unit) return "rule not in system";
        return !G && C.is(Conn::Unit) ? nullptr : "not an instance of => one";
      case Rule::OneLl:
      case Rule::OneLr: {
        if (auto e = arity(1)) return e;
        if (!sys_.unit) return "rule not in system";
        auto h = hole();
        if (!h || !h->is_node()) return bad_hole;
        auto one = n.rule == Rule::OneLl ? h->left() : h->right();
        auto rest = n.rule == Rule::OneLl ? h->right() : h->left();
        if (!one.is_leaf() || !one.formula().is(Conn::Unit)) return bad_hole;
        return prem_is(0, plug(rest), C) ? nullptr : bad_prem;
      }
      case Rule::Assumption: {
        if (auto e = arity(0)) return e;
        if (phi_.count(n.conclusion)) return nullptr;
        if (G && G->is_node() && G->left().is_leaf() && G->right().is_leaf()) {
          Sequent s = Sequent::simple(LFormula::prod(G->left().formula(), G->right().formula()), C);
          if (phi_.count(s)) return nullptr;
        }
        return "not a member of the assumption set";
      }
    }
    return "unknown rule";
  }

  SystemSpec sys_;
  std::unordered_set<Sequent, SequentHash> phi_;
  std::uint64_t id_;
};

inline CheckResult check_derivation(const SystemSpec& sys, const AssumptionSet& phi, const Derivation& d) {
  Checker c(sys, phi);
  return c.check(d);
}

}  // namespace lambek
