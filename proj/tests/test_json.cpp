#include <gtest/gtest.h>

#include <random>

#include "lambek/checker.hpp"
#include "lambek/json_io.hpp"
#include "lambek/prover.hpp"
#include "lambek/transform.hpp"
#include "support/gen.hpp"

using namespace lambek;

TEST(Json, FormulaRoundTrip) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 200; ++i) {
    auto m = testgen::random_modal(rng, static_cast<int>(rng() % 8), {"p", "q"});
    EXPECT_EQ(modal_from_json(to_json(m)), m);
    auto l = testgen::random_lambek(rng, static_cast<int>(rng() % 8), {"p", "q"}, testgen::Fragment::Full);
    EXPECT_EQ(lambek_from_json(to_json(l)), l);
    auto t = ddagger(LFormula::neg(l));  // fresh letters
    EXPECT_EQ(lambek_from_json(to_json(t)), t);
  }
  auto f = parse_lambek("<>[v]p{q * p_top} * one");
  EXPECT_EQ(lambek_from_json(to_json(f)), f);
}

TEST(Json, FormulaShape) {
  auto j = to_json(parse_lambek("~p \\/ q"));
  EXPECT_EQ(j["k"], "or");
  EXPECT_EQ(j["l"]["k"], "not");
  EXPECT_EQ(j["l"]["a"]["name"], "p");
  EXPECT_EQ(modal_from_json(Json::parse(R"({"k":"box","a":{"k":"atom","name":"p"}})")), parse_modal("[]p"));
  EXPECT_THROW(lambek_from_json(Json::parse(R"({"k":"nope"})")), JsonError);
  EXPECT_THROW(lambek_from_json(Json::parse(R"({"k":"and","l":{"k":"top"}})")), JsonError);
}

TEST(Json, KripkeModels) {
  auto j = Json::parse(R"({"states":["w","u"],"rel":[["w","u"]],"val":{"p":["u"]}})");
  EXPECT_FALSE(is_ternary_json(j));
  auto m = kripke_from_json(j);
  EXPECT_TRUE(eval_modal(m, "w", parse_modal("<>p")));
  EXPECT_EQ(kripke_from_json(to_json(m)).rel, m.rel);
  EXPECT_THROW(kripke_from_json(Json::parse(R"({"states":["w"],"rel":[["w","x"]],"val":{}})")), std::exception);
  EXPECT_THROW(kripke_from_json(Json::parse(R"({"states":[],"rel":[],"val":{}})")), std::exception);
}

TEST(Json, TernaryModels) {
  auto j = Json::parse(R"({"states":["a","b"],"rel":[["a","b","b"]],"val":{"p":["b"]},"unit":"b"})");
  EXPECT_TRUE(is_ternary_json(j));
  EXPECT_THROW(ternary_from_json(j), std::exception);  // unit triples missing
  KripkeModel k;
  k.states = {"w"};
  k.rel = {{0, 0}};
  k.val["p"] = {0};
  auto u = extend_with_unit(build_ternary_model(k), k);
  auto back = ternary_from_json(to_json(u));
  EXPECT_EQ(back.states, u.states);
  EXPECT_EQ(back.unit, u.unit);
  EXPECT_EQ(extension(back, parse_lambek("p * one")), extension(u, parse_lambek("p * one")));
}

TEST(Json, DerivationRoundTripChecks) {
  const auto sys = presets::bfnl_star();
  Prover pr(sys);
  for (const char* g : {"=> ~p \\/ p", "p /\\ q => q \\/ r", "p o (p \\ q) => q", "m * (p \\/ q) => m * p \\/ m * q"}) {
    auto r = pr.derive(parse_sequent(g));
    ASSERT_TRUE(r.proved()) << g;
    auto text = to_json(r.proof).dump();
    auto d = derivation_from_json(Json::parse(text));
    EXPECT_EQ(d->conclusion, r.proof->conclusion);
    EXPECT_TRUE(check_derivation(sys, {}, d).ok) << g;
  }
}

TEST(Json, BundleRoundTrip) {
  auto p = ddagger_problem(parse_sequent("=> ~(m * ~p) \\/ q"));
  ProblemBundle b{"bdfnl-star", p.goal, p.assumptions, {"dagger", "ddagger"}};
  auto c = bundle_from_json(Json::parse(to_json(b).dump()));
  EXPECT_EQ(c.system, b.system);
  EXPECT_EQ(c.goal, b.goal);
  EXPECT_EQ(c.assumptions, b.assumptions);
  EXPECT_EQ(c.provenance, b.provenance);
}
