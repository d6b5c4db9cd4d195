#include <gtest/gtest.h>

#include <random>

#include "lambek/checker.hpp"
#include "lambek/engine.hpp"
#include "support/gen.hpp"

using namespace lambek;

namespace {

// Exhaustive over ≤2-state ternary models (1 letter) or sampled otherwise.
bool valid_small(const Sequent& s, const AssumptionSet& phi) {
  std::vector<Sequent> all = phi;
  all.push_back(s);
  auto letters = letters_of(all);
  bool ok = true;
  if (letters.size() <= 1) {
    for_each_ternary(2, letters, [&](const TernaryModel& m) {
      if (satisfies_assumptions(m, phi) && !sequent_true_everywhere(m, s)) ok = false;
      return ok;
    });
  }
  ModelSampler sm({4, 16, letters, 61, 0.4, false});
  for (int i = 0; ok && i < 300; ++i) {
    auto m = sm.next_ternary();
    if (satisfies_assumptions(m, phi) && !sequent_true_everywhere(m, s)) ok = false;
  }
  return ok;
}

}  // namespace

TEST(Engine, Fragment) {
  EXPECT_TRUE(in_classical_fragment(parse_sequent("p * ~q => top \\/ bot")));
  EXPECT_FALSE(in_classical_fragment(parse_sequent("p \\ q => p")));
  EXPECT_TRUE(in_tableau_skeleton(parse_sequent("p \\ q o r => p")));
  EXPECT_FALSE(in_tableau_skeleton(parse_sequent("<p> => p")));
  EXPECT_FALSE(in_tableau_skeleton(AssumptionSet{parse_sequent("p o q => r")}));
}

TEST(Engine, Examples) {
  ClassicalEngine e({});
  auto em = e.prove(parse_sequent("=> ~p \\/ p"));
  ASSERT_EQ(em.verdict, Verdict::Closed);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, em.proof).ok);
  auto at = e.prove(parse_sequent("p * q => q * p"));
  ASSERT_EQ(at.verdict, Verdict::Open);
  EXPECT_FALSE(sequent_true(*at.model, 0, parse_sequent("p * q => q * p")));
  auto dm = e.prove(parse_sequent("m * (p \\/ q) => m * p \\/ m * q"));
  ASSERT_EQ(dm.verdict, Verdict::Closed);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, dm.proof).ok);
}

TEST(Engine, AssumptionsFeedTheTableau) {
  AssumptionSet phi{parse_sequent("p => q"), parse_sequent("q * q => r")};
  ClassicalEngine e(phi);
  auto r = e.prove(parse_sequent("p * p => r"));
  ASSERT_EQ(r.verdict, Verdict::Closed);
  EXPECT_TRUE(check_derivation(presets::bfnl_star(), phi, r.proof).ok);
  EXPECT_FALSE(check_derivation(presets::bfnl_star(), {}, r.proof).ok);
}

TEST(Engine, SoundAndRefutingOnSamples) {
  std::mt19937_64 rng(67);
  ClassicalEngine e({});
  int closed = 0, open = 0;
  for (int i = 0; i < 150; ++i) {
    auto a = testgen::random_lambek(rng, static_cast<int>(rng() % 5), {"p"}, testgen::Fragment::BooleanProduct);
    auto b = testgen::random_lambek(rng, static_cast<int>(rng() % 5), {"p"}, testgen::Fragment::BooleanProduct);
    auto g = Sequent::simple(a, b);
    auto r = e.prove(g);
    if (r.verdict == Verdict::Closed) {
      ++closed;
      EXPECT_TRUE(check_derivation(presets::bfnl_star(), {}, r.proof).ok) << render(g);
      EXPECT_TRUE(valid_small(g, {})) << render(g);
    } else if (r.verdict == Verdict::Open) {
      ++open;
      EXPECT_FALSE(sequent_true(*r.model, 0, g)) << render(g);
    }
  }
  EXPECT_GT(closed, 10);
  EXPECT_GT(open, 10);
}

TEST(Engine, LimitsGiveUnknown) {
  EngineLimits lim;
  lim.max_worlds = 1;
  ClassicalEngine e({}, lim);
  auto r = e.prove(parse_sequent("m * (m * (p \\/ q)) => m * (m * p) \\/ m * (m * q)"));
  EXPECT_EQ(r.verdict, Verdict::Unknown);
  e.set_limits({});
  EXPECT_EQ(e.prove(parse_sequent("m * (m * (p \\/ q)) => m * (m * p) \\/ m * (m * q)")).verdict, Verdict::Closed);
}
