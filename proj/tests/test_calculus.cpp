#include <gtest/gtest.h>

#include <random>

#include "lambek/build.hpp"
#include "lambek/checker.hpp"
#include "lambek/closure.hpp"
#include "lambek/prover.hpp"
#include "lambek/rules.hpp"
#include "lambek/transform.hpp"
#include "support/gen.hpp"

using namespace lambek;

namespace {

std::unordered_set<Sequent, SequentHash> no_phi;

bool has_axiom(const std::vector<RuleInstance>& v, Rule r) {
  for (const auto& ri : v)
    if (ri.rule == r && ri.premises.empty()) return true;
  return false;
}

SearchBudget quick() {
  SearchBudget b;
  b.max_depth = 8;
  b.max_goals = 20000;
  b.time_cap = std::chrono::milliseconds(3000);
  return b;
}

// Sampled semantic validity over models satisfying phi.
bool valid_on_samples(const Sequent& s, const AssumptionSet& phi, std::uint64_t seed, int n = 200) {
  std::vector<Sequent> all = phi;
  all.push_back(s);
  ModelSampler sm({4, 16, letters_of(all), seed, 0.35, false});
  for (int i = 0; i < n; ++i) {
    auto j = sm.next_ternary();
    if (satisfies_assumptions(j, phi) && !sequent_true_everywhere(j, s)) return false;
  }
  return true;
}

}  // namespace

TEST(Systems, PresetsAndInvariants) {
  for (const auto& s : presets::all()) {
    EXPECT_NO_THROW(s.validate());
    EXPECT_EQ(presets::by_name(s.name).name, s.name);
    if (s.negation) EXPECT_TRUE(s.bounded);
  }
  EXPECT_EQ(presets::all().size(), 25u);
  EXPECT_THROW(presets::by_name("bfnl"), std::invalid_argument);
  EXPECT_FALSE(presets::dfnl().allow_empty_antecedent);
  SystemSpec bad{"x", true, false, false, false, true, ModalAxioms::None};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Rules, AxiomMatches) {
  auto v = rule_instances(presets::bfnl_star(), parse_sequent("p * q => p * q"), no_phi, {});
  EXPECT_EQ(v.front().rule, Rule::Id);
  EXPECT_TRUE(v.front().premises.empty());
  auto b = rule_instances(presets::bfnl_star(), parse_sequent("(p o bot) o q => r"), no_phi, {});
  EXPECT_TRUE(has_axiom(b, Rule::Bot));
  auto t = rule_instances(presets::bfnl_star_modal(ModalAxioms::T), parse_sequent("p => <>p"), no_phi, {});
  EXPECT_TRUE(has_axiom(t, Rule::AxT));
  auto k = rule_instances(presets::bfnl_star_modal(ModalAxioms::K), parse_sequent("p => <>p"), no_phi, {});
  EXPECT_FALSE(has_axiom(k, Rule::AxT));
  auto d = rule_instances(presets::bdfnl_star(), parse_sequent("p /\\ (q \\/ r) => p /\\ q \\/ p /\\ r"), no_phi, {});
  EXPECT_TRUE(has_axiom(d, Rule::D));
}

TEST(Rules, LeftRulesTryEveryHole) {
  auto v = rule_instances(presets::bfnl_star(), parse_sequent("(p * q) o (r * s) => t"), no_phi, {});
  int prod_l = 0;
  for (const auto& ri : v) prod_l += ri.rule == Rule::ProdL;
  EXPECT_EQ(prod_l, 2);
  auto e = rule_instances(presets::bfnl_e_star(), parse_sequent("(p o q) o r => t"), no_phi, {});
  int ex = 0;
  for (const auto& ri : e) ex += ri.rule == Rule::Exchange;
  EXPECT_EQ(ex, 2);
}

TEST(Rules, CutsRangeOverCandidates) {
  auto a = parse_lambek("a"), b = parse_lambek("b");
  auto v = rule_instances(presets::bfnl_star(), parse_sequent("p o q => r"), no_phi, {a, b});
  int cuts = 0;
  for (const auto& ri : v) cuts += ri.rule == Rule::Cut;
  EXPECT_EQ(cuts, 2 * 3);  // every candidate at every hole
}

TEST(Rules, IllFormedGoals) {
  EXPECT_THROW(rule_instances(presets::dfnl_star(), parse_sequent("p => top"), no_phi, {}), IllFormed);
  EXPECT_THROW(rule_instances(presets::bdfnl_star(), parse_sequent("~p => p"), no_phi, {}), IllFormed);
  EXPECT_THROW(rule_instances(presets::dfnl(), parse_sequent("=> p"), no_phi, {}), IllFormed);
  EXPECT_THROW(rule_instances(presets::bfnl_star(), parse_sequent("<p> => p"), no_phi, {}), IllFormed);
  EXPECT_THROW(rule_instances(presets::bfnl_star(), parse_sequent("one => p"), no_phi, {}), IllFormed);
}

TEST(Checker, Examples) {
  auto id = build::id(parse_lambek("p"));
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, id).ok);
  auto as_top = make_node(id->conclusion, Rule::Top);
  auto r = check_derivation(presets::bfnl_star(), {}, as_top);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.diagnostic.empty());
  auto swapped = make_node(parse_sequent("p o q => p * q"), Rule::Exchange,
                           {build::prod_r(build::id(parse_lambek("q")), build::id(parse_lambek("p")))}, {Path{}, std::nullopt, 0});
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, swapped).ok);
  auto fixed = make_node(parse_sequent("p o q => q * p"), Rule::Exchange,
                         {build::prod_r(build::id(parse_lambek("q")), build::id(parse_lambek("p")))}, {Path{}, std::nullopt, 0});
  EXPECT_TRUE(check_derivation(presets::bfnl_e_star(), {}, fixed).ok);
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, fixed).ok);
}

TEST(Checker, AssumptionsMustBeListed) {
  auto a = build::assume(parse_sequent("p => q"));
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, a).ok);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {parse_sequent("p => q")}, a).ok);
  auto two = make_node(parse_sequent("p o q => r"), Rule::Assumption);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {parse_sequent("p * q => r")}, two).ok);
}

TEST(Checker, RejectsArityAndContextErrors) {
  auto p = parse_lambek("p"), q = parse_lambek("q");
  auto bad_arity = make_node(parse_sequent("p => p \\/ q"), Rule::OrR, {}, {std::nullopt, std::nullopt, 0});
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, bad_arity).ok);
  auto wrong_side = make_node(parse_sequent("p => p \\/ q"), Rule::OrR, {build::id(p)}, {std::nullopt, std::nullopt, 1});
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, wrong_side).ok);
  auto good = build::or_r(build::id(p), q, 0);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, good).ok);
  // cut formula must match the left premise's succedent
  auto cut = make_node(parse_sequent("p => p \\/ q"), Rule::Cut, {build::id(p), good}, {Path{}, q, 0});
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, cut).ok);
}

TEST(Checker, RejectsUnusedInstantiation) {
  const auto sys = presets::bfnl_star();
  auto p = parse_lambek("p"), q = parse_lambek("q");
  EXPECT_TRUE(check_derivation(sys, {}, build::id(p)).ok);
  EXPECT_FALSE(check_derivation(sys, {}, make_node(parse_sequent("p => p"), Rule::Id, {}, {Path{}, std::nullopt, 0})).ok);
  EXPECT_FALSE(check_derivation(sys, {}, make_node(parse_sequent("p => p"), Rule::Id, {}, {std::nullopt, q, 0})).ok);
  EXPECT_FALSE(check_derivation(sys, {}, make_node(parse_sequent("p => p"), Rule::Id, {}, {std::nullopt, std::nullopt, 1})).ok);
  auto both = build::and_r(build::id(p), build::id(p));
  auto stray = make_node(both->conclusion, Rule::AndR, both->premises, {std::nullopt, std::nullopt, 1});
  EXPECT_FALSE(check_derivation(sys, {}, stray).ok);
}

TEST(Checker, SharedSubtreesAcrossCheckers) {
  auto d = build::or_r(build::id(parse_lambek("p")), parse_lambek("q"), 0);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, d).ok);
  // a system without negation still accepts this; one lacking nothing rejects nothing
  EXPECT_TRUE(check_derivation(presets::dfnl(), {}, d).ok);
  auto top = build::top(parse_lambek("p"));
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, top).ok);
  EXPECT_FALSE(check_derivation(presets::dfnl_star(), {}, top).ok);
}

TEST(Budget, ParseAndValidate) {
  auto b = parse_budget("depth:7,goals:100,cutsize:2,ms:50");
  EXPECT_EQ(b.max_depth, 7);
  EXPECT_EQ(b.max_goals, 100u);
  EXPECT_EQ(b.cut_size, 2);
  EXPECT_EQ(b.time_cap, std::chrono::milliseconds(50));
  EXPECT_THROW(parse_budget("depth:0"), std::invalid_argument);
  EXPECT_THROW(parse_budget("speed:3"), std::invalid_argument);
  EXPECT_THROW(parse_budget("depth:x"), std::invalid_argument);
}

TEST(Prover, Examples) {
  auto s = presets::bfnl_star();
  auto id = derive(s, {}, parse_sequent("p => p"));
  ASSERT_TRUE(id.proved());
  EXPECT_EQ(id.proof->rule, Rule::Id);
  auto em = derive(s, {}, parse_sequent("=> ~p \\/ p"));
  ASSERT_TRUE(em.proved());
  EXPECT_TRUE(check_derivation(s, {}, em.proof).ok);
  auto at = derive(s, {}, parse_sequent("=> p"));
  ASSERT_TRUE(at.refuted());
  EXPECT_EQ(at.model->size(), 1);
  EXPECT_FALSE(eval_lambek(*at.model, at.state, parse_lambek("p")));
  auto psi = psi_set({parse_lambek("p"), LFormula::top(), LFormula::bottom()});
  auto nc = derive(presets::bdfnl_star(), psi, Sequent::simple(LFormula::conj(parse_lambek("p"), LFormula::fresh_neg(parse_lambek("p"))), LFormula::bottom()));
  ASSERT_TRUE(nc.proved());
  EXPECT_EQ(nc.proof->rule, Rule::Assumption);
}

TEST(Prover, ResidualRules) {
  auto s = presets::bfnl_star();
  for (const char* g : {"p o (p \\ q) => q", "(q / p) o p => q", "p => (q / p) \\ q", "p => q / (p \\ q)"}) {
    auto r = derive(s, {}, parse_sequent(g), quick());
    EXPECT_TRUE(r.proved()) << g << ": " << r.report;
  }
  EXPECT_TRUE(derive(presets::dfnl(), {}, parse_sequent("p o (p \\ q) => q"), quick()).proved());
}

TEST(Prover, RefutationsCarryCountermodels) {
  auto s = presets::bfnl_star();
  for (const char* g : {"p * q => q * p", "p => p * p", "m * (m * p) => m * p", "p \\/ q => p"}) {
    auto r = derive(s, {}, parse_sequent(g), quick());
    ASSERT_TRUE(r.refuted()) << g << ": " << r.report;
    EXPECT_FALSE(sequent_true(*r.model, r.state, parse_sequent(g)));
  }
}

TEST(Prover, AssumptionsAreUsed) {
  auto s = presets::bfnl_star();
  AssumptionSet phi{parse_sequent("p => q"), parse_sequent("q => r")};
  auto r = derive(s, phi, parse_sequent("p => r"), quick());
  ASSERT_TRUE(r.proved()) << r.report;
  EXPECT_TRUE(check_derivation(s, phi, r.proof).ok);
  EXPECT_FALSE(check_derivation(s, {}, r.proof).ok);
  EXPECT_TRUE(derive(s, {}, parse_sequent("p => r"), quick()).refuted());
}

TEST(Prover, RejectsBadInput) {
  EXPECT_THROW(derive(presets::dfnl(), {}, parse_sequent("=> p")), IllFormed);
  EXPECT_THROW(Prover(presets::bfnl_star(), {parse_sequent("p o q => r")}), IllFormed);
  SearchBudget b;
  b.max_goals = 0;
  EXPECT_THROW(Prover(presets::bfnl_star(), {}, b), std::invalid_argument);
}

TEST(Prover, ModalSystems) {
  auto k = presets::bfnl_star_modal(ModalAxioms::K);
  EXPECT_TRUE(derive(k, {}, parse_sequent("<p> => <>p"), quick()).proved());
  EXPECT_TRUE(derive(k, {}, parse_sequent("<>[v]p => p"), quick()).proved());
  EXPECT_TRUE(derive(k, {}, parse_sequent("p => [v]<>p"), quick()).proved());
  EXPECT_FALSE(derive(k, {}, parse_sequent("p => <>p"), quick()).proved());
  EXPECT_TRUE(derive(presets::bfnl_star_modal(ModalAxioms::T), {}, parse_sequent("p => <>p"), quick()).proved());
  EXPECT_TRUE(derive(presets::bfnl_star_modal(ModalAxioms::K4), {}, parse_sequent("<><>p => <>p"), quick()).proved());
  EXPECT_TRUE(derive(presets::bfnl_star_modal(ModalAxioms::S5), {}, parse_sequent("<>p => ~<>~<>p"), quick()).proved());
}

TEST(Prover, UnitSystem) {
  auto u = presets::bfnl1_modal(ModalAxioms::K);
  EXPECT_TRUE(derive(u, {}, parse_sequent("p * one => p"), quick()).proved());
  EXPECT_TRUE(derive(u, {}, parse_sequent("one o p => p"), quick()).proved());
  EXPECT_TRUE(derive(u, {}, parse_sequent("p o one => p * one"), quick()).proved());
  EXPECT_TRUE(derive(u, {}, parse_sequent("=> one"), quick()).proved());
}

TEST(Prover, ExchangeAdmitsCommutation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    auto a = testgen::random_lambek(rng, 1, {"p", "q"}, testgen::Fragment::BooleanProduct);
    auto b = testgen::random_lambek(rng, 1, {"p", "q"}, testgen::Fragment::BooleanProduct);
    auto g = Sequent::simple(LFormula::prod(a, b), LFormula::prod(b, a));
    auto r = derive(presets::bfnl_e_star(), {}, g);
    EXPECT_TRUE(r.proved()) << render(g) << ": " << r.report;
  }
}

TEST(Prover, SoundOnBooleanProductFragment) {
  std::mt19937_64 rng(13);
  int proved = 0;
  Prover pr(presets::bfnl_star(), {}, quick());
  for (int i = 0; i < 40; ++i) {
    auto a = testgen::random_lambek(rng, 1 + static_cast<int>(rng() % 3), {"p", "q"}, testgen::Fragment::BooleanProduct);
    auto b = testgen::random_lambek(rng, 1 + static_cast<int>(rng() % 3), {"p", "q"}, testgen::Fragment::BooleanProduct);
    auto g = Sequent::simple(a, b);
    auto r = pr.derive(g);
    if (r.proved()) {
      ++proved;
      EXPECT_TRUE(valid_on_samples(g, {}, 100 + i)) << render(g);
    }
    if (r.refuted()) EXPECT_FALSE(sequent_true(*r.model, r.state, g));
  }
  EXPECT_GT(proved, 3);
}

TEST(Prover, SubformulaDiscipline) {
  std::mt19937_64 rng(31);
  Prover pr(presets::bfnl_star(), {}, quick());
  for (int i = 0; i < 30; ++i) {
    auto a = testgen::random_lambek(rng, 2, {"p", "q"}, testgen::Fragment::BooleanProduct);
    auto b = testgen::random_lambek(rng, 2, {"p", "q"}, testgen::Fragment::BooleanProduct);
    auto g = Sequent::simple(a, b);
    auto r = pr.derive(g);
    if (!r.proved()) continue;
    auto spec = ClosureSpec::over({a, b}, ClosureMode::AndOrNot, 1 << 20, true);
    for (const auto& f : derivation_formulas(r.proof)) EXPECT_TRUE(closure_contains(spec, f)) << render(g) << " uses " << render(f);
  }
}

TEST(Prover, MonotoneInAssumptionsAndBudget) {
  auto s = presets::bfnl_star();
  const auto g = parse_sequent("p /\\ q => q \\/ r");
  ASSERT_TRUE(derive(s, {}, g, quick()).proved());
  EXPECT_TRUE(derive(s, {parse_sequent("r => p")}, g, quick()).proved());
  auto big = quick();
  big.max_depth = 16;
  big.max_goals = 100000;
  EXPECT_TRUE(derive(s, {}, g, big).proved());
  EXPECT_TRUE(derive(s, {}, parse_sequent("p o (p \\ q) => q"), big).proved());
}

TEST(Prover, DistributiveFamilies) {
  auto psi = ddagger_problem(parse_sequent("p => p \\/ q"));
  auto r = derive(presets::bdfnl_star(), psi.assumptions, psi.goal);
  ASSERT_TRUE(r.proved()) << r.report;
  EXPECT_TRUE(check_derivation(presets::bdfnl_star(), psi.assumptions, r.proof).ok);
  auto sec = section_embed(parse_sequent("p /\\ bot => q"));
  auto r2 = derive(presets::dfnl_star(), sec.assumptions, sec.goal);
  ASSERT_TRUE(r2.proved()) << r2.report;
  EXPECT_TRUE(derive(presets::dfnl(), {}, parse_sequent("p /\\ (q \\/ r) => p /\\ q \\/ p /\\ r")).proved());
  EXPECT_TRUE(derive(presets::dfnl(), {}, parse_sequent("p /\\ q \\/ p /\\ r => p /\\ (q \\/ r)"), quick()).proved());
}
