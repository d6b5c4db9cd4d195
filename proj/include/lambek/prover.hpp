// Budgeted proof search. A Prover is a session over one system and one
// assumption set; it keeps its checker, lemma caches and tableau memo between
// calls. Every Proved result carries a derivation that passed the checker;
// Refuted carries a model that was re-evaluated against the goal.
#pragma once

#include <chrono>
#include <climits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lambek/checker.hpp"
#include "lambek/closure.hpp"
#include "lambek/engine.hpp"
#include "lambek/lemmas.hpp"
#include "lambek/proof_transform.hpp"
#include "lambek/rules.hpp"
#include "lambek/semantics.hpp"
#include "lambek/system.hpp"

namespace lambek {

class BudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SearchBudget {
  int max_depth = 12;              // rule applications on a branch; product nesting in the tableau
  std::size_t max_goals = 200000;  // goals expanded (tableau nodes for the Boolean product fragment)
  int cut_size = 1;                // closure members up to this many connectives are cut candidates
  std::chrono::milliseconds time_cap{10000};

  void validate() const {
    if (max_depth <= 0) throw BudgetError("depth must be positive");
    if (max_goals == 0) throw BudgetError("goals must be positive");
    if (cut_size < 0) throw BudgetError("cutsize must be non-negative");
    if (time_cap.count() <= 0) throw BudgetError("ms must be positive");
  }
};

/// "depth:N,goals:N,cutsize:N,ms:N"; omitted keys keep their defaults.
inline SearchBudget parse_budget(std::string_view text, SearchBudget b = {}) {
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw BudgetError("budget item without ':' in '" + std::string(item) + "'");
    const std::string key(item.substr(0, colon)), value(item.substr(colon + 1));
    long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw BudgetError("budget value '" + value + "' is not an integer");
    }
    if (key == "depth") b.max_depth = static_cast<int>(v);
    else if (key == "goals") b.max_goals = v < 0 ? 0 : static_cast<std::size_t>(v);
    else if (key == "cutsize") b.cut_size = static_cast<int>(v);
    else if (key == "ms") b.time_cap = std::chrono::milliseconds(v);
    else throw BudgetError("unknown budget key '" + key + "'");
  }
  b.validate();
  return b;
}

enum class Status { Proved, Refuted, Unknown };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Proved: return "Proved";
    case Status::Refuted: return "Refuted";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

struct ProofResult {
  Status status = Status::Unknown;
  Derivation proof;
  std::optional<TernaryModel> model;
  int state = 0;
  std::string report;  // how the verdict was reached, or why there is none

  bool proved() const { return status == Status::Proved; }
  bool refuted() const { return status == Status::Refuted; }
};

/// The model with the system's frame conditions imposed, if it still falsifies
/// `goal` at state 0 and satisfies `phi`. Unit systems get none.
inline std::optional<TernaryModel> adapt_countermodel(const SystemSpec& sys, TernaryModel m, const Sequent& goal,
                                                      const AssumptionSet& phi) {
  if (sys.unit) return std::nullopt;
  if (sys.exchange && !m.is_exchange_closed()) {
    const auto n = m.rel3.size();
    for (std::size_t i = 0; i < n; ++i) m.rel3.push_back({m.rel3[i][0], m.rel3[i][2], m.rel3[i][1]});
    std::sort(m.rel3.begin(), m.rel3.end());
    m.rel3.erase(std::unique(m.rel3.begin(), m.rel3.end()), m.rel3.end());
  }
  if (sys.is_modal()) {
    std::vector<std::pair<int, int>> id;
    for (int i = 0; i < m.size(); ++i) id.emplace_back(i, i);
    m.rel2 = std::move(id);
  }
  try {
    m.validate();
    if (sequent_true(m, 0, goal) || !satisfies_assumptions(m, phi)) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return m;
}

namespace detail {

inline bool neg_axiom_shape(const Sequent& s) {
  if (!s.is_simple()) return false;
  const auto& l = s.antecedent->formula();
  const auto& c = s.succedent;
  if (c.is(Conn::Bottom) && l.is(Conn::And) && l.right().is(Conn::Not) && l.right().child() == l.left()) return true;
  return l.is(Conn::Top) && c.is(Conn::Or) && c.right().is(Conn::Not) && c.right().child() == c.left();
}

/// Instances of the ⊤/⊥ axioms that Θ stands in for.
inline bool constant_axiom_shape(const Sequent& s) {
  if (!s.is_simple()) return false;
  const auto& l = s.antecedent->formula();
  const auto& c = s.succedent;
  if (l.is(Conn::Bottom) || c.is(Conn::Top)) return true;
  return l.is(Conn::Prod) && c.is(Conn::Bottom) && (l.left().is(Conn::Bottom) || l.right().is(Conn::Bottom));
}

/// Gives every fresh letter of the problem its intended extension: p{A} the
/// complement of A, p_⊥ nothing, p_⊤ everything.
inline void interpret_fresh(TernaryModel& m, const Sequent& goal, const AssumptionSet& phi) {
  std::vector<Sequent> all = phi;
  all.push_back(goal);
  std::vector<LFormula> letters;
  FormulaSet seen;
  for (const auto& s : all)
    for (const auto& f : subformulas(formulas_of(s)))
      if (f.is(Conn::Fresh) && seen.insert(f).second) letters.push_back(f);
  for (const auto& p : letters) {
    const auto key = render(p);
    StateSet ext(static_cast<std::size_t>(m.size()), 0);
    if (p.tag() == FreshTag::TopMark) ext.assign(ext.size(), 1);
    else if (p.tag() == FreshTag::NegOf) ext = extension(m, undo_section(undo_ddagger(p)));
    auto& out = m.val[key];
    out.clear();
    for (std::size_t i = 0; i < ext.size(); ++i)
      if (ext[i]) out.push_back(static_cast<int>(i));
  }
}

}  // namespace detail

class Prover {
 public:
  Prover(SystemSpec sys, AssumptionSet phi = {}, SearchBudget budget = {})
      : sys_(std::move(sys)), phi_(std::move(phi)), budget_(budget), checker_(sys_, phi_) {
    sys_.validate();
    budget_.validate();
    for (const auto& a : phi_) {
      if (!a.is_simple()) throw IllFormed("assumptions must have a single formula on the left: " + render(a));
      if (auto v = language_violation(sys_, a); !v.empty()) throw IllFormed("assumption " + render(a) + ": " + v);
    }
    phi_set_.insert(phi_.begin(), phi_.end());
  }

  const SystemSpec& system() const { return sys_; }
  const AssumptionSet& assumptions() const { return phi_; }
  const SearchBudget& budget() const { return budget_; }
  void set_budget(SearchBudget b) {
    b.validate();
    budget_ = b;
  }

  /// The session checker; it remembers subtrees it has accepted.
  CheckResult check(const Derivation& d) { return checker_.check(d); }

  ProofResult derive(const Sequent& goal) {
    if (auto v = language_violation(sys_, goal); !v.empty()) throw IllFormed(v);
    deadline_ = std::chrono::steady_clock::now() + budget_.time_cap;
    ProofResult r = attempt(goal);
    if (r.status == Status::Proved) {
      auto c = checker_.check(r.proof);
      if (!c.ok || r.proof->conclusion != goal) {
        r = {};
        r.report = "derivation rejected by the checker: " + c.diagnostic;
      }
    }
    return r;
  }

 private:
  ProofResult attempt(const Sequent& goal) {
    std::string notes;
    auto first = rule_instances(sys_, goal, phi_set_, {});
    if (!first.empty() && first.front().premises.empty()) return proved(assemble(goal, first.front(), {}), "axiom");
    if (sys_.negation && in_tableau_skeleton(goal) && in_tableau_skeleton(phi_)) {
      auto r = via_engine(goal);
      if (r.status != Status::Unknown) return r;
      notes += r.report;
    }
    if (sys_.bounded && !sys_.negation) {
      if (auto d = de_morgan(goal)) return proved(*d, "De Morgan lemma");
      auto r = via_ddagger(goal);
      if (r.status != Status::Unknown) return r;
      if (!r.report.empty()) notes += (notes.empty() ? "" : "; ") + r.report;
    }
    if (!sys_.bounded) {
      if (auto d = absorption(goal)) return proved(*d, "absorption lemma");
      auto r = via_section(goal);
      if (r.status != Status::Unknown) return r;
      if (!r.report.empty()) notes += (notes.empty() ? "" : "; ") + r.report;
    }
    auto r = search(goal);
    if (r.status == Status::Unknown && !notes.empty()) r.report = notes + "; " + r.report;
    return r;
  }

  static ProofResult proved(Derivation d, std::string how) { return {Status::Proved, std::move(d), std::nullopt, 0, std::move(how)}; }

  EngineLimits engine_limits() const {
    return {budget_.max_depth, budget_.max_goals, deadline_};
  }

  ClassicalEngine& engine() {
    if (!engine_) engine_ = std::make_unique<ClassicalEngine>(phi_);
    engine_->set_limits(engine_limits());
    return *engine_;
  }

  ProofResult via_engine(const Sequent& goal) {
    auto out = engine().prove(goal);
    if (out.verdict == Verdict::Closed) return proved(out.proof, "tableau");
    if (out.verdict == Verdict::Open && out.model) {
      if (auto m = adapt_countermodel(sys_, *out.model, goal, phi_))
        return {Status::Refuted, nullptr, std::move(*m), 0, "tableau countermodel"};
      return {Status::Unknown, nullptr, std::nullopt, 0, "tableau model violates the frame conditions"};
    }
    return {Status::Unknown, nullptr, std::nullopt, 0, "tableau: " + out.note};
  }

  // -- negation-free bounded systems ----------------------------------------

  DeMorganLemmas& lemmas() {
    if (!lemmas_) lemmas_ = std::make_unique<DeMorganLemmas>(phi_);
    return *lemmas_;
  }

  std::optional<Derivation> de_morgan(const Sequent& goal) {
    if (!goal.is_simple()) return std::nullopt;
    const auto& l = goal.antecedent->formula();
    const auto& c = goal.succedent;
    try {
      if (c.is(Conn::Bottom) && l.is(Conn::And) && lemmas().dual(l.left()) == l.right()) return lemmas().nc(l.left());
      if (l.is(Conn::Top) && c.is(Conn::Or) && lemmas().dual(c.left()) == c.right()) return lemmas().em(c.left());
    } catch (const TranslationError&) {
    }
    return std::nullopt;
  }

  /// Read p{A} as ¬A, solve in the negation system, and map the proof back by ‡.
  ProofResult via_ddagger(const Sequent& goal) {
    auto f = [](const LFormula& a) { return undo_ddagger(a); };
    const auto pre = map_sequent(goal, f);
    DDagger dd;
    if (dd(pre) != goal) return {Status::Unknown, nullptr, std::nullopt, 0, "fresh letters outside the image of the embedding"};
    if (!ddagger_sub_) {
      AssumptionSet sub_phi;
      for (const auto& a : phi_) {
        auto b = map_sequent(a, f);
        if (!detail::neg_axiom_shape(b)) sub_phi.push_back(b);
      }
      SystemSpec s = sys_;
      s.negation = true;
      s.name = sys_.name + "+neg";
      ddagger_sub_ = std::make_unique<Prover>(s, sub_phi, budget_);
    }
    ddagger_sub_->set_budget(remaining_budget());
    auto r = ddagger_sub_->derive(pre);
    if (r.status == Status::Proved) {
      if (!ddagger_proof_) ddagger_proof_ = std::make_unique<DDaggerProof>(phi_);
      auto t = (*ddagger_proof_)(r.proof);
      if (t && (*t)->conclusion == goal && checker_.check(*t)) return proved(*t, "embedding of a negation-system proof");
      return {Status::Unknown, nullptr, std::nullopt, 0, "negation-system proof found but the assumptions do not cover its image"};
    }
    if (r.status == Status::Refuted) {
      auto m = *r.model;
      detail::interpret_fresh(m, goal, phi_);
      if (auto a = adapt_countermodel(sys_, m, goal, phi_)) return {Status::Refuted, nullptr, std::move(*a), 0, "countermodel of the negation-system problem"};
    }
    return {Status::Unknown, nullptr, std::nullopt, 0, r.report};
  }

  // -- unbounded systems -----------------------------------------------------

  Absorption& absorb() {
    if (!absorb_) absorb_ = std::make_unique<Absorption>(phi_);
    return *absorb_;
  }

  std::optional<Derivation> absorption(const Sequent& goal) {
    if (!goal.antecedent) return std::nullopt;
    if (goal.succedent.is_fresh(FreshTag::TopMark))
      if (auto d = absorb().structure_top(*goal.antecedent)) return d;
    for (const auto& p : all_paths(*goal.antecedent)) {
      auto h = subtree_at(*goal.antecedent, p);
      if (h.is_leaf() && h.formula().is_fresh(FreshTag::BotMark))
        if (auto d = absorb().structure_bottom(*goal.antecedent, p, goal.succedent)) return d;
    }
    return std::nullopt;
  }

  /// Read p_⊥, p_⊤ as ⊥, ⊤, solve in the bounded system, and map the proof back by §.
  ProofResult via_section(const Sequent& goal) {
    auto f = [](const LFormula& a) { return undo_section(a); };
    const auto pre = map_sequent(goal, f);
    if (section(pre) != goal) return {Status::Unknown, nullptr, std::nullopt, 0, "goal outside the image of the embedding"};
    if (!section_sub_) {
      AssumptionSet sub_phi;
      for (const auto& a : phi_) {
        auto b = map_sequent(a, f);
        if (!detail::constant_axiom_shape(b) && std::find(sub_phi.begin(), sub_phi.end(), b) == sub_phi.end()) sub_phi.push_back(b);
      }
      SystemSpec s = sys_;
      s.bounded = true;
      s.allow_empty_antecedent = true;
      s.name = sys_.name + "+bounds";
      section_sub_ = std::make_unique<Prover>(s, sub_phi, budget_);
    }
    section_sub_->set_budget(remaining_budget());
    auto r = section_sub_->derive(pre);
    if (r.status == Status::Proved) {
      if (!section_proof_) section_proof_ = std::make_unique<SectionProof>(phi_);
      auto t = (*section_proof_)(r.proof);
      if (t && (*t)->conclusion == goal && checker_.check(*t)) return proved(*t, "embedding of a bounded-system proof");
      return {Status::Unknown, nullptr, std::nullopt, 0, "bounded-system proof found but its image is not derivable from the assumptions"};
    }
    if (r.status == Status::Refuted) {
      auto m = *r.model;
      detail::interpret_fresh(m, goal, phi_);
      if (auto a = adapt_countermodel(sys_, m, goal, phi_)) return {Status::Refuted, nullptr, std::move(*a), 0, "countermodel of the bounded-system problem"};
    }
    return {Status::Unknown, nullptr, std::nullopt, 0, r.report};
  }

  SearchBudget remaining_budget() const {
    SearchBudget b = budget_;
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ - std::chrono::steady_clock::now());
    b.time_cap = std::max(left, std::chrono::milliseconds(1));
    return b;
  }

  // -- generic backward search ----------------------------------------------

  std::vector<LFormula> cut_candidates(const Sequent& goal) const {
    std::vector<Sequent> all = phi_;
    all.push_back(goal);
    std::vector<LFormula> roots;
    for (const auto& s : all)
      for (const auto& f : formulas_of(s)) roots.push_back(f);
    auto spec = ClosureSpec::over(roots, sys_.negation ? ClosureMode::AndOrNot : ClosureMode::AndOr, budget_.cut_size,
                                  sys_.bounded);
    std::vector<LFormula> out = spec.base;
    FormulaSet seen(out.begin(), out.end());
    for (const auto& f : enumerate_closure(spec))
      if (seen.insert(f).second) out.push_back(f);
    return out;
  }

  struct SearchState {
    std::vector<LFormula> candidates;
    std::unordered_map<Sequent, Derivation, SequentHash> proved;
    std::unordered_map<Sequent, int, SequentHash> failed;  // deepest remaining depth that failed
    std::unordered_set<Sequent, SequentHash> branch;
    std::size_t goals = 0;
    bool aborted = false;
  };

  ProofResult search(const Sequent& goal) {
    SearchState st;
    st.candidates = cut_candidates(goal);
    for (int d = 1; d <= budget_.max_depth && !st.aborted; ++d) {
      if (auto p = solve(st, goal, d)) return proved(*p, "backward search");
      st.branch.clear();
    }
    std::string why = st.aborted ? "budget exhausted after " + std::to_string(st.goals) + " goals"
                                 : "no derivation within depth " + std::to_string(budget_.max_depth);
    return {Status::Unknown, nullptr, std::nullopt, 0, why};
  }

  /// Whether the tableau can settle a subgoal: a proof, or a countermodel that
  /// meets the frame conditions (so the subgoal is underivable).
  std::optional<std::optional<Derivation>> settle(const Sequent& goal) {
    if (!sys_.negation || !in_tableau_skeleton(goal) || !in_tableau_skeleton(phi_)) return std::nullopt;
    auto out = engine().prove(goal);
    if (out.verdict == Verdict::Closed) return std::optional<Derivation>(out.proof);
    if (out.verdict == Verdict::Open && out.model && adapt_countermodel(sys_, *out.model, goal, phi_))
      return std::optional<Derivation>();
    return std::nullopt;
  }

  std::optional<Derivation> solve(SearchState& st, const Sequent& goal, int depth) {
    if (auto it = st.proved.find(goal); it != st.proved.end()) return it->second;
    if (auto it = st.failed.find(goal); it != st.failed.end() && it->second >= depth) return std::nullopt;
    if (depth <= 0 || st.branch.count(goal)) return std::nullopt;
    if (++st.goals > budget_.max_goals || ((st.goals & 31) == 0 && std::chrono::steady_clock::now() > deadline_)) {
      st.aborted = true;
      return std::nullopt;
    }
    std::vector<RuleInstance> instances;
    try {
      instances = rule_instances(sys_, goal, phi_set_, st.candidates);
    } catch (const IllFormed&) {
      return std::nullopt;
    }
    if (!instances.empty() && instances.front().premises.empty()) {
      auto d = assemble(goal, instances.front(), {});
      st.proved.emplace(goal, d);
      return d;
    }
    if (auto s = settle(goal)) {
      if (*s) st.proved.emplace(goal, **s);
      else st.failed[goal] = INT_MAX;
      return *s;
    }
    st.branch.insert(goal);
    for (const auto& ri : instances) {
      std::vector<Derivation> prem;
      for (const auto& p : ri.premises) {
        if (language_violation(sys_, p).size()) break;
        auto d = solve(st, p, depth - 1);
        if (!d) break;
        prem.push_back(*d);
      }
      if (st.aborted) break;
      if (prem.size() == ri.premises.size()) {
        auto d = assemble(goal, ri, std::move(prem));
        st.branch.erase(goal);
        st.proved.emplace(goal, d);
        return d;
      }
    }
    st.branch.erase(goal);
    if (!st.aborted) {
      auto& f = st.failed[goal];
      f = std::max(f, depth);
    }
    return std::nullopt;
  }

  SystemSpec sys_;
  AssumptionSet phi_;
  std::unordered_set<Sequent, SequentHash> phi_set_;
  SearchBudget budget_;
  Checker checker_;
  std::chrono::steady_clock::time_point deadline_{};
  std::unique_ptr<ClassicalEngine> engine_;
  std::unique_ptr<DeMorganLemmas> lemmas_;
  std::unique_ptr<Absorption> absorb_;
  std::unique_ptr<Prover> ddagger_sub_, section_sub_;
  std::unique_ptr<DDaggerProof> ddagger_proof_;
  std::unique_ptr<SectionProof> section_proof_;
};

/// One-shot search; repeated queries over the same assumptions should share a Prover.
inline ProofResult derive(const SystemSpec& sys, const AssumptionSet& phi, const Sequent& goal, const SearchBudget& budget = {}) {
  Prover p(sys, phi, budget);
  return p.derive(goal);
}

}  // namespace lambek
