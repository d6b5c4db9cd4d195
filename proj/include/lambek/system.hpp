// Sequent systems: feature flags and the named presets.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lambek/formula.hpp"

namespace lambek {

enum class ModalAxioms { None, K, T, K4, S4, S5 };

inline const char* modal_name(ModalAxioms m) {
  switch (m) {
    case ModalAxioms::None: return "none";
    case ModalAxioms::K: return "k";
    case ModalAxioms::T: return "t";
    case ModalAxioms::K4: return "k4";
    case ModalAxioms::S4: return "s4";
    case ModalAxioms::S5: return "s5";
  }
  return "none";
}

struct SystemSpec {
  std::string name;
  bool negation = false;
  bool bounded = false;
  bool exchange = false;
  bool unit = false;
  bool allow_empty_antecedent = false;
  ModalAxioms modal = ModalAxioms::None;

  bool is_modal() const { return modal != ModalAxioms::None; }
  bool has_T() const { return modal == ModalAxioms::T || modal == ModalAxioms::S4 || modal == ModalAxioms::S5; }
  bool has_4() const { return modal == ModalAxioms::K4 || modal == ModalAxioms::S4 || modal == ModalAxioms::S5; }
  bool has_5() const { return modal == ModalAxioms::S5; }

  void validate() const {
    if (negation && !bounded) throw std::invalid_argument("system '" + name + "': negation requires the bounds");
  }

  bool allows(Conn c) const {
    switch (c) {
      case Conn::Not: return negation;
      case Conn::Top:
      case Conn::Bottom: return bounded;
      case Conn::Unit: return unit;
      case Conn::Dia:
      case Conn::BoxDown: return is_modal();
      default: return true;
    }
  }
};

class IllFormed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reason the sequent is outside the system's language, or empty when it is inside.
inline std::string language_violation(const SystemSpec& sys, const Sequent& s) {
  if (!s.antecedent && !sys.allow_empty_antecedent) return "empty antecedent in a system without empty antecedents";
  if (s.antecedent && has_bracket(*s.antecedent) && !sys.is_modal()) return "structural brackets in a non-modal system";
  std::uint32_t forbidden = 0;
  for (Conn c : {Conn::Not, Conn::Top, Conn::Bottom, Conn::Unit, Conn::Dia, Conn::BoxDown})
    if (!sys.allows(c)) forbidden |= LFormula::bit(c);
  auto bad = [&](const LFormula& f) { return (f.mask() & forbidden) != 0; };
  if (bad(s.succedent)) return "connective not in the language of " + sys.name;
  bool found = false;
  if (s.antecedent) for_each_leaf(*s.antecedent, [&](const LFormula& f) { found = found || bad(f); });
  return found ? "connective not in the language of " + sys.name : "";
}

namespace presets {

inline SystemSpec bfnl_star() { return {"bfnl-star", true, true, false, false, true, ModalAxioms::None}; }
inline SystemSpec bfnl_e_star() { return {"bfnl-e-star", true, true, true, false, true, ModalAxioms::None}; }
inline SystemSpec bfnl_star_modal(ModalAxioms i) {
  return {std::string("bfnl-star-") + modal_name(i), true, true, false, false, true, i};
}
inline SystemSpec bfnl_e_star_modal(ModalAxioms i) {
  return {std::string("bfnl-ei-star-") + modal_name(i), true, true, true, false, true, i};
}
inline SystemSpec bfnl1_modal(ModalAxioms i) {
  return {std::string("bfnl1-") + modal_name(i), true, true, false, true, true, i};
}
inline SystemSpec bfnl1_e_modal(ModalAxioms i) {
  return {std::string("bfnl1-e-") + modal_name(i), true, true, true, true, true, i};
}
inline SystemSpec bdfnl_star() { return {"bdfnl-star", false, true, false, false, true, ModalAxioms::None}; }
inline SystemSpec dfnl_star() { return {"dfnl-star", false, false, false, false, true, ModalAxioms::None}; }
inline SystemSpec dfnl() { return {"dfnl", false, false, false, false, false, ModalAxioms::None}; }

inline std::vector<ModalAxioms> modal_variants() {
  return {ModalAxioms::K, ModalAxioms::T, ModalAxioms::K4, ModalAxioms::S4, ModalAxioms::S5};
}

inline std::vector<SystemSpec> all() {
  std::vector<SystemSpec> out{bfnl_star(), bfnl_e_star()};
  for (auto i : modal_variants()) {
    out.push_back(bfnl_star_modal(i));
    out.push_back(bfnl_e_star_modal(i));
    out.push_back(bfnl1_modal(i));
    out.push_back(bfnl1_e_modal(i));
  }
  out.push_back(bdfnl_star());
  out.push_back(dfnl_star());
  out.push_back(dfnl());
  return out;
}

inline SystemSpec by_name(const std::string& name) {
  for (auto& s : all())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown system '" + name + "'");
}

}  // namespace presets

}  // namespace lambek
