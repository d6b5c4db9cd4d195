#include <gtest/gtest.h>

#include <random>

#include "lambek/kprover.hpp"
#include "lambek/syntax.hpp"
#include "support/gen.hpp"

using namespace lambek;

namespace {

std::vector<KripkeModel> models_upto(int n, const std::vector<std::string>& atoms) {
  std::vector<KripkeModel> out;
  for_each_kripke(n, atoms, [&](const KripkeModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

bool falsified_somewhere(const std::vector<KripkeModel>& ms, const ModalFormula& a) {
  for (const auto& m : ms)
    for (int w = 0; w < m.size(); ++w)
      if (!eval_modal(m, w, a)) return true;
  return false;
}

}  // namespace

TEST(KDecide, Examples) {
  auto k = k_decide(parse_modal("[](p -> q) -> ([]p -> []q)"));
  EXPECT_TRUE(k.valid);
  EXPECT_FALSE(k.countermodel);
  auto d = k_decide(parse_modal("<>p"));
  ASSERT_FALSE(d.valid);
  EXPECT_EQ(d.countermodel->size(), 1);
  EXPECT_FALSE(eval_modal(*d.countermodel, d.root, parse_modal("<>p")));
  auto t = k_decide(parse_modal("[]p -> p"));
  ASSERT_FALSE(t.valid);
  EXPECT_EQ(t.countermodel->size(), 1);
  auto four = k_decide(parse_modal("[]p -> [][]p"));
  ASSERT_FALSE(four.valid);
  EXPECT_FALSE(eval_modal(*four.countermodel, four.root, parse_modal("[]p -> [][]p")));
  EXPECT_TRUE(k_decide(parse_modal("<>(p \\/ q) -> (<>p \\/ <>q)")).valid);
  EXPECT_TRUE(k_decide(parse_modal("~<>bot")).valid);
  EXPECT_FALSE(k_decide(parse_modal("p")).valid);
  EXPECT_TRUE(k_decide(parse_modal("p \\/ ~p")).valid);
}

TEST(KDecide, ExhaustiveAgreementSmallFormulas) {
  const std::vector<std::string> atoms{"p", "q"};
  auto ms = models_upto(2, atoms);
  std::size_t valid = 0;
  for (const auto& a : testgen::all_modal(6, atoms)) {
    auto v = k_decide(a);
    if (v.valid) {
      ++valid;
      EXPECT_FALSE(falsified_somewhere(ms, a)) << render(a);
    } else {
      ASSERT_TRUE(v.countermodel) << render(a);
      EXPECT_FALSE(eval_modal(*v.countermodel, v.root, a)) << render(a);
    }
  }
  EXPECT_GT(valid, 0u);
}

TEST(KDecide, ThreeStateAgreementSampled) {
  const std::vector<std::string> atoms{"p"};
  auto ms = models_upto(3, atoms);
  std::mt19937_64 rng(47);
  for (int i = 0; i < 150; ++i) {
    auto a = testgen::random_modal(rng, 1 + static_cast<int>(rng() % 6), atoms);
    auto v = k_decide(a);
    if (v.valid) EXPECT_FALSE(falsified_somewhere(ms, a)) << render(a);
    else EXPECT_FALSE(eval_modal(*v.countermodel, v.root, a)) << render(a);
  }
}

TEST(KDecide, ClosedUnderNecAndModusPonens) {
  std::mt19937_64 rng(53);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto a = testgen::random_modal(rng, 1 + static_cast<int>(rng() % 5), {"p", "q"});
    auto b = testgen::random_modal(rng, 1 + static_cast<int>(rng() % 5), {"p", "q"});
    if (!k_decide(a).valid) continue;
    EXPECT_TRUE(k_decide(ModalFormula::box(a)).valid) << render(a);
    if (k_decide(ModalFormula::implies(a, b)).valid) {
      ++checked;
      EXPECT_TRUE(k_decide(b).valid) << render(a) << " / " << render(b);
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(KDecide, CountermodelDepthBoundedByModalDepth) {
  auto f = parse_modal("[][]p -> <>q");
  auto v = k_decide(f);
  ASSERT_FALSE(v.valid);
  EXPECT_LE(v.countermodel->size(), 4);
}
