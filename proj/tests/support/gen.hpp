// Random and exhaustive formula generators shared by the test binaries.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "lambek/formula.hpp"
#include "lambek/semantics.hpp"

namespace testgen {

using lambek::LFormula;
using lambek::ModalFormula;

/// Modal formula with exactly `conn` connectives over `atoms` (⊥ counts as a leaf).
inline ModalFormula random_modal(std::mt19937_64& rng, int conn, const std::vector<std::string>& atoms) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (conn == 0) {
    const int k = pick(static_cast<int>(atoms.size()) + 1);
    return k == static_cast<int>(atoms.size()) ? ModalFormula::bottom() : ModalFormula::atom(atoms[k]);
  }
  switch (pick(7)) {
    case 0: return ModalFormula::neg(random_modal(rng, conn - 1, atoms));
    case 1: return ModalFormula::diamond(random_modal(rng, conn - 1, atoms));
    case 2: return ModalFormula::box(random_modal(rng, conn - 1, atoms));
    default: {
      const int l = pick(conn);
      auto a = random_modal(rng, l, atoms), b = random_modal(rng, conn - 1 - l, atoms);
      switch (pick(3)) {
        case 0: return ModalFormula::conj(a, b);
        case 1: return ModalFormula::disj(a, b);
        default: return ModalFormula::implies(a, b);
      }
    }
  }
}

/// Every modal formula of node count ≤ `size` over `atoms` using ⊥, ¬, ∧, ∨, ⊃, ◇.
inline std::vector<ModalFormula> all_modal(int size, const std::vector<std::string>& atoms) {
  std::vector<std::vector<ModalFormula>> by(static_cast<std::size_t>(size) + 1);
  by[1].push_back(ModalFormula::bottom());
  for (const auto& a : atoms) by[1].push_back(ModalFormula::atom(a));
  for (int n = 2; n <= size; ++n) {
    for (const auto& c : by[n - 1]) {
      by[n].push_back(ModalFormula::neg(c));
      by[n].push_back(ModalFormula::diamond(c));
    }
    for (int l = 1; l + 1 < n; ++l)
      for (const auto& a : by[l])
        for (const auto& b : by[n - 1 - l]) {
          by[n].push_back(ModalFormula::conj(a, b));
          by[n].push_back(ModalFormula::disj(a, b));
          by[n].push_back(ModalFormula::implies(a, b));
        }
  }
  std::vector<ModalFormula> out;
  for (auto& v : by) out.insert(out.end(), v.begin(), v.end());
  return out;
}

enum class Fragment { Boolean, BooleanProduct, Full, NegFreeProduct };

/// Lambek formula with exactly `conn` connectives.
inline LFormula random_lambek(std::mt19937_64& rng, int conn, const std::vector<std::string>& letters, Fragment fr,
                              bool constants = true) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (conn == 0) {
    const int extra = constants ? 2 : 0;
    const int k = pick(static_cast<int>(letters.size()) + extra);
    if (k < static_cast<int>(letters.size())) return LFormula::atom(letters[k]);
    return k == static_cast<int>(letters.size()) ? LFormula::top() : LFormula::bottom();
  }
  std::vector<int> ops{0, 1};  // ∧ ∨
  if (fr != Fragment::NegFreeProduct) ops.push_back(2);  // ¬
  if (fr != Fragment::Boolean) ops.push_back(3);  // ·
  if (fr == Fragment::Full) {
    ops.push_back(4);  // backslash
    ops.push_back(5);  // slash
  }
  const int op = ops[pick(static_cast<int>(ops.size()))];
  if (op == 2) return LFormula::neg(random_lambek(rng, conn - 1, letters, fr, constants));
  const int l = pick(conn);
  auto a = random_lambek(rng, l, letters, fr, constants), b = random_lambek(rng, conn - 1 - l, letters, fr, constants);
  switch (op) {
    case 0: return LFormula::conj(a, b);
    case 1: return LFormula::disj(a, b);
    case 3: return LFormula::prod(a, b);
    case 4: return LFormula::under(a, b);
    default: return LFormula::over(a, b);
  }
}

}  // namespace testgen
