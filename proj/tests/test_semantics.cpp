#include <gtest/gtest.h>

#include <random>

#include "lambek/countermodel.hpp"
#include "lambek/semantics.hpp"
#include "lambek/syntax.hpp"
#include "support/gen.hpp"

using namespace lambek;

namespace {

// Direct clause-by-clause evaluation, no memo, no extension vectors.
bool holds(const KripkeModel& m, int w, const ModalFormula& a) {
  switch (a.kind()) {
    case MKind::Atom: {
      auto it = m.val.find(a.name());
      return it != m.val.end() && std::find(it->second.begin(), it->second.end(), w) != it->second.end();
    }
    case MKind::Bottom: return false;
    case MKind::And: return holds(m, w, a.left()) && holds(m, w, a.right());
    case MKind::Or: return holds(m, w, a.left()) || holds(m, w, a.right());
    case MKind::Implies: return !holds(m, w, a.left()) || holds(m, w, a.right());
    case MKind::Not: return !holds(m, w, a.child());
    case MKind::Diamond:
      for (auto [x, y] : m.rel)
        if (x == w && holds(m, y, a.child())) return true;
      return false;
  }
  return false;
}

bool holds(const TernaryModel& j, int u, const LFormula& a) {
  switch (a.conn()) {
    case Conn::Atom:
    case Conn::Fresh: {
      auto it = j.val.find(render(a));
      return it != j.val.end() && std::find(it->second.begin(), it->second.end(), u) != it->second.end();
    }
    case Conn::Bottom: return false;
    case Conn::Top: return true;
    case Conn::Unit: return j.unit && *j.unit == u;
    case Conn::And: return holds(j, u, a.left()) && holds(j, u, a.right());
    case Conn::Or: return holds(j, u, a.left()) || holds(j, u, a.right());
    case Conn::Not: return !holds(j, u, a.child());
    case Conn::Prod:
      for (const auto& t : j.rel3)
        if (t[0] == u && holds(j, t[1], a.left()) && holds(j, t[2], a.right())) return true;
      return false;
    case Conn::Under:  // A\B: (v,w,u), w ⊨ A ⇒ v ⊨ B
      for (const auto& t : j.rel3)
        if (t[2] == u && holds(j, t[1], a.left()) && !holds(j, t[0], a.right())) return false;
      return true;
    case Conn::Over:  // A/B: (w,u,v), v ⊨ B ⇒ w ⊨ A
      for (const auto& t : j.rel3)
        if (t[1] == u && holds(j, t[2], a.right()) && !holds(j, t[0], a.left())) return false;
      return true;
    case Conn::Dia:
      for (auto [x, y] : *j.rel2)
        if (x == u && holds(j, y, a.child())) return true;
      return false;
    case Conn::BoxDown:
      for (auto [x, y] : *j.rel2)
        if (y == u && !holds(j, x, a.child())) return false;
      return true;
  }
  return false;
}

TernaryModel abc_model() {
  TernaryModel j;
  j.states = {"a", "b", "c"};
  j.rel3 = {{0, 1, 2}};
  j.val = {{"p", {1}}, {"q", {2}}};
  return j;
}

}  // namespace

TEST(EvalModal, Examples) {
  KripkeModel one;
  one.states = {"w"};
  EXPECT_FALSE(eval_modal(one, 0, parse_modal("<>p")));
  EXPECT_FALSE(eval_modal(one, 0, parse_modal("<>(p \\/ ~p)")));
  KripkeModel two;
  two.states = {"w", "u"};
  two.rel = {{0, 1}};
  two.val = {{"p", {1}}};
  EXPECT_TRUE(eval_modal(two, "w", parse_modal("<>p")));
  EXPECT_FALSE(eval_modal(two, "u", parse_modal("<>p")));
  EXPECT_FALSE(eval_modal(two, 0, ModalFormula::bottom()));
  EXPECT_TRUE(eval_modal(two, 0, parse_modal("[]p")));
  EXPECT_TRUE(eval_modal(two, 1, parse_modal("[]bot")));
}

TEST(EvalModal, UnknownState) {
  KripkeModel one;
  one.states = {"w"};
  EXPECT_THROW(eval_modal(one, 3, parse_modal("p")), ModelError);
  EXPECT_THROW(eval_modal(one, "nope", parse_modal("p")), ModelError);
}

TEST(EvalModal, AgreesWithDirectClauses) {
  std::mt19937_64 rng(7);
  ModelSampler s({4, 16, {"p", "q"}, 11, 0.4, false});
  for (int i = 0; i < 400; ++i) {
    auto m = s.next_kripke();
    auto a = testgen::random_modal(rng, static_cast<int>(rng() % 8), {"p", "q"});
    for (int w = 0; w < m.size(); ++w) ASSERT_EQ(eval_modal(m, w, a), holds(m, w, a)) << render(a);
  }
}

TEST(EvalLambek, Examples) {
  auto j = abc_model();
  EXPECT_TRUE(eval_lambek(j, "a", parse_lambek("p * q")));
  EXPECT_FALSE(eval_lambek(j, "b", parse_lambek("p * q")));
  TernaryModel single;
  single.states = {"a"};
  EXPECT_TRUE(eval_lambek(single, 0, parse_lambek("p \\ q")));
  EXPECT_TRUE(eval_lambek(single, 0, parse_lambek("q / p")));
  EXPECT_THROW(eval_lambek(single, 1, parse_lambek("p")), ModelError);
}

TEST(EvalLambek, UnitNeedsUnitState) {
  TernaryModel single;
  single.states = {"a"};
  EXPECT_ANY_THROW(eval_lambek(single, 0, LFormula::unit()));
}

TEST(EvalLambek, AgreesWithDirectClauses) {
  std::mt19937_64 rng(3);
  ModelSampler s({3, 16, {"p", "q"}, 5, 0.5, true});
  for (int i = 0; i < 400; ++i) {
    auto j = s.next_ternary();
    auto a = testgen::random_lambek(rng, static_cast<int>(rng() % 7), {"p", "q"}, testgen::Fragment::Full);
    if (rng() % 3 == 0) a = LFormula::dia(a);
    if (rng() % 5 == 0) a = LFormula::boxdown(a);
    for (int u = 0; u < j.size(); ++u) ASSERT_EQ(eval_lambek(j, u, a), holds(j, u, a)) << render(a);
  }
}

TEST(EvalLambek, SemanticLaws) {
  std::mt19937_64 rng(9);
  ModelSampler s({4, 16, {"p", "q", "r"}, 17, 0.4, false});
  for (int i = 0; i < 200; ++i) {
    auto j = s.next_ternary();
    const std::vector<std::string> L{"p", "q", "r"};
    auto a = testgen::random_lambek(rng, 2, L, testgen::Fragment::Full);
    auto b = testgen::random_lambek(rng, 2, L, testgen::Fragment::Full);
    auto c = testgen::random_lambek(rng, 1, L, testgen::Fragment::Full);
    auto lhs = LFormula::conj(a, LFormula::disj(b, c));
    auto rhs = LFormula::disj(LFormula::conj(a, b), LFormula::conj(a, c));
    auto ab = LFormula::under(a, b);
    for (int u = 0; u < j.size(); ++u) {
      EXPECT_NE(eval_lambek(j, u, a), eval_lambek(j, u, LFormula::neg(a)));
      EXPECT_EQ(eval_lambek(j, u, lhs), eval_lambek(j, u, rhs));
      if (!eval_lambek(j, u, ab)) continue;
      for (const auto& t : j.rel3)
        if (t[2] == u && eval_lambek(j, t[1], a)) EXPECT_TRUE(eval_lambek(j, t[0], b));
    }
  }
}

TEST(SequentTruth, Examples) {
  auto j = abc_model();
  for (int u = 0; u < j.size(); ++u) {
    EXPECT_TRUE(sequent_true(j, u, parse_sequent("p => p")));
    EXPECT_TRUE(sequent_true(j, u, parse_sequent("=> top")));
  }
  TernaryModel one;
  one.states = {"a"};
  one.val = {{"p", {0}}};
  EXPECT_FALSE(sequent_true(one, 0, parse_sequent("=> p /\\ ~p")));
  EXPECT_TRUE(sequent_true(j, 0, parse_sequent("p o q => p * q")));
  EXPECT_FALSE(sequent_true(j, 0, parse_sequent("=> p * p")));
  EXPECT_ANY_THROW(sequent_true(j, 0, parse_sequent("<p> => p")));
}

TEST(SequentTruth, Assumptions) {
  auto j = abc_model();
  EXPECT_TRUE(satisfies_assumptions(j, {}));
  EXPECT_TRUE(satisfies_assumptions(j, {parse_sequent("p => top")}));
  EXPECT_FALSE(satisfies_assumptions(j, {parse_sequent("top => bot")}));
  EXPECT_FALSE(satisfies_assumptions(j, {parse_sequent("p => q")}));
}

TEST(Models, ValidationRejectsBadModels) {
  KripkeModel k;
  EXPECT_THROW(k.validate(), ModelError);
  k.states = {"w", "w"};
  EXPECT_THROW(k.validate(), ModelError);
  k.states = {"w"};
  k.rel = {{0, 1}};
  EXPECT_THROW(k.validate(), ModelError);
  TernaryModel j = abc_model();
  j.unit = 0;
  EXPECT_THROW(j.validate(), ModelError);
  j.val["p"].push_back(7);
  j.unit.reset();
  EXPECT_THROW(j.validate(), ModelError);
}

TEST(Models, ExhaustiveCounts) {
  int n = 0;
  for_each_kripke(1, {"p"}, [&](const KripkeModel&) { return ++n, true; });
  EXPECT_EQ(n, 4);
  n = 0;
  for_each_ternary(2, {}, [&](const TernaryModel& m) { return n += m.size() == 2, true; });
  EXPECT_EQ(n, 256);
  n = 0;
  for_each_kripke(3, {"p"}, [&](const KripkeModel& m) { return n += m.size() == 3, true; });
  EXPECT_EQ(n, 512 * 8);
  EXPECT_THROW(for_each_kripke(4, {}, [](const KripkeModel&) { return true; }), std::invalid_argument);
  EXPECT_THROW(for_each_ternary(3, {}, [](const TernaryModel&) { return true; }), std::invalid_argument);
}

TEST(Models, SamplerIsDeterministic) {
  ModelSampler a({4, 16, {"p"}, 42, 0.35, true}), b({4, 16, {"p"}, 42, 0.35, true});
  for (int i = 0; i < 50; ++i) {
    auto x = a.next_ternary(), y = b.next_ternary();
    EXPECT_EQ(x.states, y.states);
    EXPECT_EQ(x.rel3, y.rel3);
    EXPECT_EQ(x.val, y.val);
    EXPECT_EQ(x.rel2, y.rel2);
  }
  EXPECT_THROW(ModelSampler({20, 16, {}, 1, 0.3, false}), std::invalid_argument);
}

TEST(Countermodel, Examples) {
  auto r = find_countermodel(parse_sequent("=> p"), {});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->model.size(), 1);
  EXPECT_FALSE(eval_lambek(r->model, r->state, parse_lambek("p")));
  EXPECT_FALSE(find_countermodel(parse_sequent("=> p \\/ ~p"), {}));
  EXPECT_FALSE(find_countermodel(parse_sequent("p => q"), {parse_sequent("p => q")}));
}

TEST(Countermodel, ReturnedModelsFalsify) {
  std::mt19937_64 rng(21);
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    auto a = testgen::random_lambek(rng, 3, {"p", "q"}, testgen::Fragment::Full);
    auto b = testgen::random_lambek(rng, 2, {"p", "q"}, testgen::Fragment::Full);
    Sequent s = Sequent::simple(a, b);
    CountermodelBounds cb;
    cb.samples = 200;
    if (auto r = find_countermodel(s, {}, cb)) {
      ++found;
      EXPECT_FALSE(sequent_true(r->model, r->state, s)) << render(s);
    }
  }
  EXPECT_GT(found, 10);
}

TEST(Countermodel, ModalVersion) {
  auto r = find_countermodel(parse_modal("[]p -> p"));
  ASSERT_TRUE(r);
  EXPECT_FALSE(eval_modal(r->model, r->state, parse_modal("[]p -> p")));
  EXPECT_FALSE(find_countermodel(parse_modal("[](p -> q) -> ([]p -> []q)")));
}
