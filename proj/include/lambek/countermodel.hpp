// Semantic refutation: tableau models for the Boolean product fragment, then
// exhaustive small models, then seeded sampling. Every model returned has been
// re-evaluated; finding none says nothing about validity.
#pragma once

#include <optional>
#include <string>

#include "lambek/engine.hpp"
#include "lambek/semantics.hpp"

namespace lambek {

struct CountermodelBounds {
  bool use_tableau = true;
  int exhaustive_states = 2;        // 0 disables; ternary ≤ 2, Kripke ≤ 3
  std::size_t exhaustive_cap = 1u << 20;  // models tried per exhaustive pass
  std::size_t samples = 2000;
  SampleBounds sampling{};
};

template <typename Model>
struct Countermodel {
  Model model;
  int state = 0;
};

namespace detail {

inline bool mentions_modal(const std::vector<LFormula>& fs) {
  for (const auto& f : fs)
    if (f.mentions(Conn::Dia) || f.mentions(Conn::BoxDown)) return true;
  return false;
}

/// First state where the goal fails while phi holds everywhere.
inline std::optional<int> falsified_at(const TernaryModel& m, const Sequent& goal, const AssumptionSet& phi) {
  if (!satisfies_assumptions(m, phi)) return std::nullopt;
  auto ext = sequent_extension(m, goal);
  for (std::size_t i = 0; i < ext.size(); ++i)
    if (!ext[i]) return static_cast<int>(i);
  return std::nullopt;
}

inline std::size_t pow2_capped(int bits) { return bits >= 62 ? SIZE_MAX : std::size_t{1} << bits; }

}  // namespace detail

inline std::optional<Countermodel<TernaryModel>> find_countermodel(const Sequent& goal, const AssumptionSet& phi,
                                                                   const CountermodelBounds& b = {}) {
  if (goal.antecedent && has_bracket(*goal.antecedent)) return std::nullopt;
  std::vector<Sequent> all = phi;
  all.push_back(goal);
  std::vector<LFormula> fs;
  for (const auto& s : all)
    for (const auto& f : formulas_of(s)) fs.push_back(f);
  for (const auto& f : fs)
    if (f.mentions(Conn::Unit)) return std::nullopt;  // unital models come from the unit construction only
  const bool modal = detail::mentions_modal(fs);
  const auto letters = letters_of(all);

  if (b.use_tableau && in_classical_fragment(goal) && in_classical_fragment(phi)) {
    EngineLimits lim;
    lim.max_worlds = 20000;
    ClassicalEngine e(phi, lim);
    auto r = e.prove(goal);
    if (r.model)
      if (auto u = detail::falsified_at(*r.model, goal, phi)) return Countermodel<TernaryModel>{*r.model, *u};
  }

  auto with_binary = [&](TernaryModel m, int variant) {
    if (!modal) return m;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j)
        if ((variant == 1 && i == j) || variant == 2) rel.emplace_back(i, j);
    m.rel2 = std::move(rel);
    return m;
  };

  std::optional<Countermodel<TernaryModel>> found;
  for (int n = 1; n <= std::min(b.exhaustive_states, kExhaustiveTernaryCap) && !found; ++n) {
    const int bits = n * n * n + n * static_cast<int>(letters.size());
    if (detail::pow2_capped(bits) > b.exhaustive_cap) break;
    for_each_ternary(n, letters, [&](const TernaryModel& m0) {
      if (m0.size() != n) return true;
      for (int variant = 0; variant < (modal ? 3 : 1); ++variant) {
        auto m = with_binary(m0, variant);
        if (auto u = detail::falsified_at(m, goal, phi)) {
          found = Countermodel<TernaryModel>{std::move(m), *u};
          return false;
        }
      }
      return true;
    });
  }
  if (found) return found;

  SampleBounds sb = b.sampling;
  if (sb.atoms.empty()) sb.atoms = letters;
  sb.with_binary = sb.with_binary || modal;
  ModelSampler sampler(sb);
  for (std::size_t i = 0; i < b.samples; ++i) {
    auto m = sampler.next_ternary();
    if (auto u = detail::falsified_at(m, goal, phi)) return Countermodel<TernaryModel>{std::move(m), *u};
  }
  return std::nullopt;
}

inline std::optional<Countermodel<KripkeModel>> find_countermodel(const ModalFormula& a, const CountermodelBounds& b = {}) {
  const auto atoms = atoms_of(a);
  auto falsified = [&](const KripkeModel& m) -> std::optional<int> {
    auto ext = extension(m, a);
    for (std::size_t i = 0; i < ext.size(); ++i)
      if (!ext[i]) return static_cast<int>(i);
    return std::nullopt;
  };
  std::optional<Countermodel<KripkeModel>> found;
  for (int n = 1; n <= std::min(b.exhaustive_states + 1, kExhaustiveKripkeCap) && !found; ++n) {
    const int bits = n * n + n * static_cast<int>(atoms.size());
    if (detail::pow2_capped(bits) > b.exhaustive_cap) break;
    for_each_kripke(n, atoms, [&](const KripkeModel& m) {
      if (m.size() != n) return true;
      if (auto u = falsified(m)) {
        found = Countermodel<KripkeModel>{m, *u};
        return false;
      }
      return true;
    });
  }
  if (found) return found;
  SampleBounds sb = b.sampling;
  if (sb.atoms.empty()) sb.atoms = atoms;
  ModelSampler sampler(sb);
  for (std::size_t i = 0; i < b.samples; ++i) {
    auto m = sampler.next_kripke();
    if (auto u = falsified(m)) return Countermodel<KripkeModel>{std::move(m), *u};
  }
  return std::nullopt;
}

}  // namespace lambek
