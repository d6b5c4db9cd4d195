#include <gtest/gtest.h>

#include "lambek/checker.hpp"
#include "lambek/facts.hpp"
#include "lambek/prover.hpp"

using namespace lambek;

TEST(Facts, CorpusShape) {
  auto c = facts_corpus();
  std::size_t eq = 0, cond = 0;
  for (const auto& f : c) (f.kind == FactKind::Equivalence ? eq : cond)++;
  EXPECT_EQ(eq, 2u * (2 + 6 * 4));
  EXPECT_EQ(cond, 14u);
}

TEST(Facts, EquivalencesProved) {
  const auto sys = presets::bfnl_star();
  Prover pr(sys);
  for (const auto& f : facts_corpus()) {
    if (f.kind != FactKind::Equivalence) continue;
    auto r = pr.derive(f.conclusion);
    ASSERT_TRUE(r.proved()) << f.label << ": " << render(f.conclusion) << " " << r.report;
    EXPECT_EQ(r.proof->conclusion, f.conclusion);
    EXPECT_TRUE(check_derivation(sys, {}, r.proof).ok) << render(f.conclusion);
  }
}

TEST(Facts, ConditionalsFromPremises) {
  const auto sys = presets::bfnl_star();
  Prover pr(sys);
  for (const auto& f : facts_corpus()) {
    if (f.kind == FactKind::Equivalence) continue;
    std::vector<Derivation> prem;
    for (const auto& p : f.premises) {
      auto r = pr.derive(p);
      ASSERT_TRUE(r.proved()) << f.label << ": premise " << render(p);
      prem.push_back(r.proof);
    }
    auto d = derive_from_premises(f, prem);
    EXPECT_EQ(d->conclusion, f.conclusion) << f.label;
    auto ck = check_derivation(sys, {}, d);
    EXPECT_TRUE(ck.ok) << f.label << ": " << ck.diagnostic;
  }
}

TEST(Facts, ReplaceAll) {
  auto c = parse_lambek("~(p /\\ q) \\/ p");
  EXPECT_EQ(replace_all(c, parse_lambek("p"), parse_lambek("r")), parse_lambek("~(r /\\ q) \\/ r"));
  EXPECT_EQ(replace_all(c, parse_lambek("s"), parse_lambek("r")), c);
}

TEST(Facts, ConstructionsOnHypotheses) {
  // assumption leaves stand in for premises the prover would not need
  const auto sys = presets::bfnl_star();
  AssumptionSet phi{parse_sequent("a => b")};
  auto ab = build::assume(phi[0]);
  EXPECT_TRUE(check_derivation(sys, phi, facts::contrapose(ab)).ok);
  EXPECT_EQ(facts::contrapose(ab)->conclusion, parse_sequent("~b => ~a"));
  EXPECT_TRUE(check_derivation(sys, phi, facts::internalize(ab)).ok);
  EXPECT_EQ(facts::internalize(ab)->conclusion, parse_sequent("=> ~a \\/ b"));
  AssumptionSet both{parse_sequent("a => b"), parse_sequent("b => a")};
  auto r = facts::replace(parse_lambek("(a \\ c) / ~(a * c)"), build::assume(both[0]), build::assume(both[1]));
  EXPECT_EQ(r->conclusion, parse_sequent("(a \\ c) / ~(a * c) => (b \\ c) / ~(b * c)"));
  EXPECT_TRUE(check_derivation(sys, both, r).ok);
}
