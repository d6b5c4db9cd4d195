// Finite Kripke models and ternary relational models; truth evaluation,
// sequent truth, exhaustive enumeration and seeded sampling.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lambek/formula.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using StateSet = std::vector<char>;  // characteristic vector over state indices

// ---------------------------------------------------------------------------
// Kripke models
// ---------------------------------------------------------------------------

struct KripkeModel {
  std::vector<std::string> states;
  std::vector<std::pair<int, int>> rel;
  std::map<std::string, std::vector<int>> val;

  int size() const { return static_cast<int>(states.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (states[static_cast<std::size_t>(i)] == name) return i;
    throw ModelError("unknown state '" + name + "'");
  }

  void validate() const {
    if (states.empty()) throw ModelError("a model needs at least one state");
    std::set<std::string> names(states.begin(), states.end());
    if (names.size() != states.size()) throw ModelError("duplicate state names");
    auto in_range = [&](int s) { return s >= 0 && s < size(); };
    for (auto [a, b] : rel)
      if (!in_range(a) || !in_range(b)) throw ModelError("relation mentions an unknown state");
    for (const auto& [p, ws] : val)
      for (int w : ws)
        if (!in_range(w)) throw ModelError("valuation of '" + p + "' mentions an unknown state");
  }

  bool holds(const std::string& atom, int w) const {
    auto it = val.find(atom);
    if (it == val.end()) return false;
    for (int x : it->second)
      if (x == w) return true;
    return false;
  }
};

inline StateSet extension(const KripkeModel& m, const ModalFormula& a) {
  const auto n = static_cast<std::size_t>(m.size());
  StateSet out(n, 0);
  switch (a.kind()) {
    case MKind::Atom: {
      auto it = m.val.find(a.name());
      if (it != m.val.end())
        for (int w : it->second) out[static_cast<std::size_t>(w)] = 1;
      return out;
    }
    case MKind::Bottom: return out;
    case MKind::Not: {
      StateSet c = extension(m, a.child());
      for (std::size_t i = 0; i < n; ++i) out[i] = !c[i];
      return out;
    }
    case MKind::Diamond: {
      StateSet c = extension(m, a.child());
      for (auto [w, u] : m.rel)
        if (c[static_cast<std::size_t>(u)]) out[static_cast<std::size_t>(w)] = 1;
      return out;
    }
    default: break;
  }
  StateSet l = extension(m, a.left()), r = extension(m, a.right());
  for (std::size_t i = 0; i < n; ++i) {
    switch (a.kind()) {
      case MKind::And: out[i] = l[i] && r[i]; break;
      case MKind::Or: out[i] = l[i] || r[i]; break;
      default: out[i] = !l[i] || r[i]; break;
    }
  }
  return out;
}

inline bool eval_modal(const KripkeModel& m, int w, const ModalFormula& a) {
  if (w < 0 || w >= m.size()) throw ModelError("unknown state index " + std::to_string(w));
  return extension(m, a)[static_cast<std::size_t>(w)] != 0;
}

inline bool eval_modal(const KripkeModel& m, const std::string& w, const ModalFormula& a) {
  return eval_modal(m, m.index_of(w), a);
}

// ---------------------------------------------------------------------------
// Ternary relational models
// ---------------------------------------------------------------------------

struct TernaryModel {
  std::vector<std::string> states;
  std::vector<std::array<int, 3>> rel3;
  std::map<std::string, std::vector<int>> val;  // keyed by rendered letter
  std::optional<int> unit;
  /// Binary relation interpreting ◇ and □↓; absent on models that never need it.
  std::optional<std::vector<std::pair<int, int>>> rel2;

  int size() const { return static_cast<int>(states.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (states[static_cast<std::size_t>(i)] == name) return i;
    throw ModelError("unknown state '" + name + "'");
  }

  bool has_triple(int a, int b, int c) const {
    for (const auto& t : rel3)
      if (t[0] == a && t[1] == b && t[2] == c) return true;
    return false;
  }

  void validate() const {
    if (states.empty()) throw ModelError("a model needs at least one state");
    std::set<std::string> names(states.begin(), states.end());
    if (names.size() != states.size()) throw ModelError("duplicate state names");
    auto in_range = [&](int s) { return s >= 0 && s < size(); };
    for (const auto& t : rel3)
      for (int s : t)
        if (!in_range(s)) throw ModelError("relation mentions an unknown state");
    for (const auto& [p, ws] : val)
      for (int w : ws)
        if (!in_range(w)) throw ModelError("valuation of '" + p + "' mentions an unknown state");
    if (rel2)
      for (auto [a, b] : *rel2)
        if (!in_range(a) || !in_range(b)) throw ModelError("binary relation mentions an unknown state");
    if (unit) {
      if (!in_range(*unit)) throw ModelError("unit is not a state");
      for (int u = 0; u < size(); ++u)
        if (!has_triple(u, *unit, u) || !has_triple(u, u, *unit))
          throw ModelError("unit conditions fail at state '" + states[static_cast<std::size_t>(u)] + "'");
    }
  }

  /// R(u,v,w) implies R(u,w,v).
  bool is_exchange_closed() const {
    for (const auto& t : rel3)
      if (!has_triple(t[0], t[2], t[1])) return false;
    return true;
  }
};

namespace detail {

struct TernaryEvaluator {
  const TernaryModel& m;
  std::unordered_map<const LFormula::Node*, StateSet> memo;

  StateSet eval(const LFormula& a) {
    auto it = memo.find(a.get());
    if (it != memo.end()) return it->second;
    StateSet out = compute(a);
    memo.emplace(a.get(), out);
    return out;
  }

  StateSet compute(const LFormula& a) {
    const auto n = static_cast<std::size_t>(m.size());
    StateSet out(n, 0);
    auto idx = [](int s) { return static_cast<std::size_t>(s); };
    switch (a.conn()) {
      case Conn::Atom:
      case Conn::Fresh: {
        auto it = m.val.find(render(a));
        if (it != m.val.end())
          for (int w : it->second) out[idx(w)] = 1;
        return out;
      }
      case Conn::Bottom: return out;
      case Conn::Top: return StateSet(n, 1);
      case Conn::Unit:
        if (!m.unit) throw ModelError("the constant 'one' needs a model with a unit");
        out[idx(*m.unit)] = 1;
        return out;
      case Conn::Not: {
        StateSet c = eval(a.child());
        for (std::size_t i = 0; i < n; ++i) out[i] = !c[i];
        return out;
      }
      case Conn::And:
      case Conn::Or: {
        StateSet l = eval(a.left()), r = eval(a.right());
        for (std::size_t i = 0; i < n; ++i) out[i] = a.is(Conn::And) ? (l[i] && r[i]) : (l[i] || r[i]);
        return out;
      }
      case Conn::Prod: {
        // u ⊨ A·B iff ∃ R(u,v,w) with v ⊨ A, w ⊨ B
        StateSet l = eval(a.left()), r = eval(a.right());
        for (const auto& t : m.rel3)
          if (l[idx(t[1])] && r[idx(t[2])]) out[idx(t[0])] = 1;
        return out;
      }
      case Conn::Over: {
        // u ⊨ A/B iff ∀ R(w,u,v): v ⊨ B implies w ⊨ A
        StateSet num = eval(a.left()), den = eval(a.right());
        out.assign(n, 1);
        for (const auto& t : m.rel3)
          if (den[idx(t[2])] && !num[idx(t[0])]) out[idx(t[1])] = 0;
        return out;
      }
      case Conn::Under: {
        // u ⊨ A\B iff ∀ R(v,w,u): w ⊨ A implies v ⊨ B
        StateSet den = eval(a.left()), num = eval(a.right());
        out.assign(n, 1);
        for (const auto& t : m.rel3)
          if (den[idx(t[1])] && !num[idx(t[0])]) out[idx(t[2])] = 0;
        return out;
      }
      case Conn::Dia:
      case Conn::BoxDown: {
        if (!m.rel2) throw ModelError("modal operators need a model with a binary relation");
        StateSet c = eval(a.child());
        if (a.is(Conn::Dia)) {
          for (auto [u, v] : *m.rel2)
            if (c[idx(v)]) out[idx(u)] = 1;
        } else {
          out.assign(n, 1);
          for (auto [v, u] : *m.rel2)
            if (!c[idx(v)]) out[idx(u)] = 0;
        }
        return out;
      }
    }
    return out;
  }
};

}  // namespace detail

inline StateSet extension(const TernaryModel& j, const LFormula& a) {
  detail::TernaryEvaluator ev{j, {}};
  return ev.eval(a);
}

inline bool eval_lambek(const TernaryModel& j, int u, const LFormula& a) {
  if (u < 0 || u >= j.size()) throw ModelError("unknown state index " + std::to_string(u));
  return extension(j, a)[static_cast<std::size_t>(u)] != 0;
}

inline bool eval_lambek(const TernaryModel& j, const std::string& u, const LFormula& a) {
  return eval_lambek(j, j.index_of(u), a);
}

/// An empty antecedent reads as "the succedent holds here".
inline StateSet sequent_extension(const TernaryModel& j, const Sequent& s) {
  detail::TernaryEvaluator ev{j, {}};
  StateSet succ = ev.eval(s.succedent);
  if (!s.antecedent) return succ;
  if (has_bracket(*s.antecedent)) throw UnsupportedStructure("sequent truth is defined for bracket-free antecedents");
  StateSet ant = ev.eval(phi_of_tree(*s.antecedent));
  for (std::size_t i = 0; i < succ.size(); ++i) succ[i] = !ant[i] || succ[i];
  return succ;
}

inline bool sequent_true(const TernaryModel& j, int u, const Sequent& s) {
  if (u < 0 || u >= j.size()) throw ModelError("unknown state index " + std::to_string(u));
  return sequent_extension(j, s)[static_cast<std::size_t>(u)] != 0;
}

inline bool sequent_true_everywhere(const TernaryModel& j, const Sequent& s) {
  for (char c : sequent_extension(j, s))
    if (!c) return false;
  return true;
}

inline bool satisfies_assumptions(const TernaryModel& j, const std::vector<Sequent>& phi) {
  for (const auto& s : phi)
    if (!sequent_true_everywhere(j, s)) return false;
  return true;
}

/// Rendered names of every letter (atoms and fresh letters) in the formulas.
inline std::vector<std::string> letters_of(const std::vector<LFormula>& fs) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& f : subformulas(fs))
    if (f.is_letter() && seen.insert(render(f)).second) out.push_back(render(f));
  return out;
}

inline std::vector<std::string> letters_of(const std::vector<Sequent>& seqs) {
  std::vector<LFormula> fs;
  for (const auto& s : seqs) {
    auto more = formulas_of(s);
    fs.insert(fs.end(), more.begin(), more.end());
  }
  return letters_of(fs);
}

inline std::vector<std::string> atoms_of(const ModalFormula& a) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  std::function<void(const ModalFormula&)> go = [&](const ModalFormula& f) {
    if (f.kind() == MKind::Atom) {
      if (seen.insert(f.name()).second) out.push_back(f.name());
    } else if (f.kind() == MKind::Not || f.kind() == MKind::Diamond) {
      go(f.child());
    } else if (f.kind() != MKind::Bottom) {
      go(f.left());
      go(f.right());
    }
  };
  go(a);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration and sampling
// ---------------------------------------------------------------------------

inline std::vector<std::string> state_names(int n, const char* prefix = "w") {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline constexpr int kExhaustiveKripkeCap = 3;
inline constexpr int kExhaustiveTernaryCap = 2;

/// Every Kripke model with 1..max_states states over `atoms` (max_states ≤ 3).
inline void for_each_kripke(int max_states, const std::vector<std::string>& atoms,
                            const std::function<bool(const KripkeModel&)>& visit) {
  if (max_states > kExhaustiveKripkeCap) throw std::invalid_argument("exhaustive Kripke enumeration is capped at 3 states");
  for (int n = 1; n <= max_states; ++n) {
    const int pairs = n * n;
    const int bits = n * static_cast<int>(atoms.size());
    for (std::uint64_t r = 0; r < (1ULL << pairs); ++r) {
      for (std::uint64_t v = 0; v < (1ULL << bits); ++v) {
        KripkeModel m;
        m.states = state_names(n);
        for (int k = 0; k < pairs; ++k)
          if (r >> k & 1) m.rel.emplace_back(k / n, k % n);
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          auto& ws = m.val[atoms[a]];
          for (int w = 0; w < n; ++w)
            if (v >> (static_cast<int>(a) * n + w) & 1) ws.push_back(w);
        }
        if (!visit(m)) return;
      }
    }
  }
}

/// Every ternary model with 1..max_states states over `letters` (max_states ≤ 2).
inline void for_each_ternary(int max_states, const std::vector<std::string>& letters,
                             const std::function<bool(const TernaryModel&)>& visit) {
  if (max_states > kExhaustiveTernaryCap) throw std::invalid_argument("exhaustive ternary enumeration is capped at 2 states");
  for (int n = 1; n <= max_states; ++n) {
    const int triples = n * n * n;
    const int bits = n * static_cast<int>(letters.size());
    if (bits > 20) throw std::invalid_argument("too many letters for exhaustive enumeration");
    for (std::uint64_t r = 0; r < (1ULL << triples); ++r) {
      for (std::uint64_t v = 0; v < (1ULL << bits); ++v) {
        TernaryModel m;
        m.states = state_names(n);
        for (int k = 0; k < triples; ++k)
          if (r >> k & 1) m.rel3.push_back({k / (n * n), (k / n) % n, k % n});
        for (std::size_t a = 0; a < letters.size(); ++a) {
          auto& ws = m.val[letters[a]];
          for (int w = 0; w < n; ++w)
            if (v >> (static_cast<int>(a) * n + w) & 1) ws.push_back(w);
        }
        if (!visit(m)) return;
      }
    }
  }
}

struct SampleBounds {
  int max_states = 4;
  int state_cap = 16;
  std::vector<std::string> atoms;
  std::uint64_t seed = 1;
  double density = 0.35;
  bool with_binary = false;  // also draw a binary relation for ◇/□↓
};

/// Deterministic stream of random models for a seed.
class ModelSampler {
 public:
  explicit ModelSampler(SampleBounds b) : b_(std::move(b)), rng_(b_.seed) {
    if (b_.max_states < 1 || b_.max_states > b_.state_cap)
      throw std::invalid_argument("sample bounds: max_states must lie in [1, state_cap]");
  }

  KripkeModel next_kripke() {
    const int n = states();
    KripkeModel m;
    m.states = state_names(n);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if (coin(b_.density)) m.rel.emplace_back(a, c);
    for (const auto& p : b_.atoms) {
      auto& ws = m.val[p];
      for (int w = 0; w < n; ++w)
        if (coin(0.5)) ws.push_back(w);
    }
    return m;
  }

  TernaryModel next_ternary() {
    const int n = states();
    TernaryModel m;
    m.states = state_names(n);
    const double d = b_.density / n;  // keep the expected fan-out per state moderate
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e)
          if (coin(d)) m.rel3.push_back({a, c, e});
    for (const auto& p : b_.atoms) {
      auto& ws = m.val[p];
      for (int w = 0; w < n; ++w)
        if (coin(0.5)) ws.push_back(w);
    }
    if (b_.with_binary) {
      m.rel2.emplace();
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          if (coin(b_.density)) m.rel2->emplace_back(a, c);
    }
    return m;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int states() { return std::uniform_int_distribution<int>(1, b_.max_states)(rng_); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

  SampleBounds b_;
  std::mt19937_64 rng_;
};

}  // namespace lambek
