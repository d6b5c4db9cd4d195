// Rule-labelled derivation trees.
#pragma once

#include <atomic>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "lambek/formula.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

enum class Rule : std::uint8_t {
  Id, D, Bot, Top, Neg1, Neg2,
  UnderL, UnderR, OverL, OverR, ProdL, ProdR, Cut,
  AndL, AndR, OrL, OrR,
  Exchange, DiaL, DiaR, BoxL, BoxR, AxT, Ax4, Ax5,
  OneR, OneLl, OneLr,
  Assumption,
};

inline constexpr Rule kAllRules[] = {
    Rule::Id, Rule::D, Rule::Bot, Rule::Top, Rule::Neg1, Rule::Neg2,
    Rule::UnderL, Rule::UnderR, Rule::OverL, Rule::OverR, Rule::ProdL, Rule::ProdR, Rule::Cut,
    Rule::AndL, Rule::AndR, Rule::OrL, Rule::OrR,
    Rule::Exchange, Rule::DiaL, Rule::DiaR, Rule::BoxL, Rule::BoxR, Rule::AxT, Rule::Ax4, Rule::Ax5,
    Rule::OneR, Rule::OneLl, Rule::OneLr, Rule::Assumption,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Id: return "Id";
    case Rule::D: return "D";
    case Rule::Bot: return "bot";
    case Rule::Top: return "top";
    case Rule::Neg1: return "neg1";
    case Rule::Neg2: return "neg2";
    case Rule::UnderL: return "\\L";
    case Rule::UnderR: return "\\R";
    case Rule::OverL: return "/L";
    case Rule::OverR: return "/R";
    case Rule::ProdL: return "*L";
    case Rule::ProdR: return "*R";
    case Rule::Cut: return "Cut";
    case Rule::AndL: return "/\\L";
    case Rule::AndR: return "/\\R";
    case Rule::OrL: return "\\/L";
    case Rule::OrR: return "\\/R";
    case Rule::Exchange: return "E";
    case Rule::DiaL: return "<>L";
    case Rule::DiaR: return "<>R";
    case Rule::BoxL: return "[v]L";
    case Rule::BoxR: return "[v]R";
    case Rule::AxT: return "T";
    case Rule::Ax4: return "4";
    case Rule::Ax5: return "5";
    case Rule::OneR: return "1R";
    case Rule::OneLl: return "1Ll";
    case Rule::OneLr: return "1Lr";
    case Rule::Assumption: return "Assumption";
  }
  return "?";
}

inline Rule rule_from_name(const std::string& s) {
  for (Rule r : kAllRules)
    if (s == rule_name(r)) return r;
  throw std::invalid_argument("unknown rule '" + s + "'");
}

/// What a checker needs beyond the conclusions: the hole position in the
/// conclusion's antecedent, the cut formula, and which side of a ∧L / ∨R.
struct Instantiation {
  std::optional<Path> path;
  std::optional<LFormula> formula;
  int choice = 0;
};

struct DerivationNode;
using Derivation = std::shared_ptr<const DerivationNode>;

struct DerivationNode {
  Sequent conclusion;
  Rule rule;
  std::vector<Derivation> premises;
  Instantiation inst;
  // Id of the last checker that accepted this subtree; 0 if none.
  mutable std::atomic<std::uint64_t> verified_by{0};

  DerivationNode(Sequent c, Rule r, std::vector<Derivation> p, Instantiation i)
      : conclusion(std::move(c)), rule(r), premises(std::move(p)), inst(std::move(i)) {}
};

inline Derivation make_node(Sequent concl, Rule r, std::vector<Derivation> prem = {}, Instantiation inst = {}) {
  return std::make_shared<const DerivationNode>(std::move(concl), r, std::move(prem), std::move(inst));
}

/// Distinct nodes (the tree may share subderivations).
inline std::size_t derivation_size(const Derivation& d) {
  std::unordered_set<const DerivationNode*> seen;
  std::vector<const DerivationNode*> stack{d.get()};
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return seen.size();
}

inline int derivation_height(const Derivation& d) {
  int h = 0;
  for (const auto& p : d->premises) h = std::max(h, derivation_height(p));
  return h + 1;
}

/// Every formula occurring in a conclusion of the tree.
inline std::vector<LFormula> derivation_formulas(const Derivation& d) {
  std::unordered_set<const DerivationNode*> seen;
  std::vector<LFormula> out;
  FormulaSet have;
  std::vector<const DerivationNode*> stack{d.get()};
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& f : formulas_of(n->conclusion))
      if (have.insert(f).second) out.push_back(f);
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return out;
}

/// Gentzen-style indented text, conclusion first.
inline std::string render_derivation(const Derivation& d, int indent = 0) {
  std::string out(static_cast<std::size_t>(indent) * 2, ' ');
  out += render(d->conclusion);
  out += "   [";
  out += rule_name(d->rule);
  out += "]\n";
  for (const auto& p : d->premises) out += render_derivation(p, indent + 1);
  return out;
}

}  // namespace lambek
