// Closures c(T) (under ∧, ∨) and c'(T) (under ∧, ∨, ¬) of a finite base.
//
// The closures are infinite; they are exposed as a membership predicate and as
// a bounded, deterministic enumerator.
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "lambek/formula.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

enum class ClosureMode { AndOr, AndOrNot };

struct ClosureSpec {
  std::vector<LFormula> base;
  ClosureMode mode = ClosureMode::AndOr;
  int size_bound = 0;

  /// Subformula-closed base over `roots`, optionally with ⊤ and ⊥ added.
  static ClosureSpec over(const std::vector<LFormula>& roots, ClosureMode mode, int bound, bool with_constants) {
    ClosureSpec s;
    std::vector<LFormula> r = roots;
    if (with_constants) {
      r.push_back(LFormula::top());
      r.push_back(LFormula::bottom());
    }
    s.base = subformulas(r);
    s.mode = mode;
    s.size_bound = bound;
    return s;
  }
};

namespace detail {

inline int closure_rank(Conn c) {
  switch (c) {
    case Conn::And: return 0;
    case Conn::Or: return 1;
    case Conn::Not: return 2;
    default: return 3;
  }
}

inline bool closure_generated(const LFormula& f, ClosureMode mode) {
  return f.is(Conn::And) || f.is(Conn::Or) || (mode == ClosureMode::AndOrNot && f.is(Conn::Not));
}

}  // namespace detail

/// Enumeration order: size, then ∧ before ∨ before ¬ (then other connectives by
/// rendered text), then left operand, then right operand. Leaves by rendered text.
inline bool closure_order_less(const LFormula& x, const LFormula& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  const int rx = detail::closure_rank(x.conn()), ry = detail::closure_rank(y.conn());
  if (x.size() == 0 || rx == 3 || ry == 3 || rx != ry) {
    if (rx != ry) return rx < ry;
    return render(x) < render(y);
  }
  if (x.is(Conn::Not)) return closure_order_less(x.child(), y.child());
  if (x.left() != y.left()) return closure_order_less(x.left(), y.left());
  return closure_order_less(x.right(), y.right());
}

inline bool closure_contains(const ClosureSpec& spec, const LFormula& f) {
  if (std::find(spec.base.begin(), spec.base.end(), f) != spec.base.end()) return true;
  if (f.is(Conn::And) || f.is(Conn::Or))
    return closure_contains(spec, f.left()) && closure_contains(spec, f.right());
  if (f.is(Conn::Not) && spec.mode == ClosureMode::AndOrNot) return closure_contains(spec, f.child());
  return false;
}

/// Streams every closure member of size ≤ size_bound in enumeration order.
/// Only levels below the bound are kept in memory.
inline void for_each_closure_member(const ClosureSpec& spec, const std::function<void(const LFormula&)>& visit) {
  if (spec.size_bound < 0) return;
  std::vector<LFormula> base;
  for (const auto& b : spec.base)
    if (std::find(base.begin(), base.end(), b) == base.end()) base.push_back(b);

  // Base members the generator will not reach on its own, bucketed by size.
  std::vector<std::vector<LFormula>> extras(static_cast<std::size_t>(spec.size_bound) + 1);
  for (const auto& b : base)
    if (!detail::closure_generated(b, spec.mode) && b.size() <= spec.size_bound)
      extras[static_cast<std::size_t>(b.size())].push_back(b);
  for (auto& e : extras) std::sort(e.begin(), e.end(), closure_order_less);

  std::vector<std::vector<LFormula>> levels;
  for (int n = 0; n <= spec.size_bound; ++n) {
    const bool keep = n < spec.size_bound;
    std::vector<LFormula> level;
    auto emit = [&](const LFormula& f) {
      visit(f);
      if (keep) level.push_back(f);
    };
    if (n > 0) {
      for (Conn c : {Conn::And, Conn::Or}) {
        for (int k = 0; k < n; ++k) {
          for (const auto& l : levels[static_cast<std::size_t>(k)])
            for (const auto& r : levels[static_cast<std::size_t>(n - 1 - k)])
              emit(c == Conn::And ? LFormula::conj(l, r) : LFormula::disj(l, r));
        }
      }
      if (spec.mode == ClosureMode::AndOrNot)
        for (const auto& ch : levels[static_cast<std::size_t>(n - 1)]) emit(LFormula::neg(ch));
    }
    for (const auto& e : extras[static_cast<std::size_t>(n)]) emit(e);
    levels.push_back(std::move(level));
  }
}

inline std::vector<LFormula> enumerate_closure(const ClosureSpec& spec) {
  std::vector<LFormula> out;
  for_each_closure_member(spec, [&](const LFormula& f) { out.push_back(f); });
  return out;
}

}  // namespace lambek
