// Formula, tree and sequent ASTs for the modal language and the Lambek family.
//
// All nodes are immutable and shared; handles are cheap to copy. Equality is
// structural with a cached hash as the fast reject path.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lambek {

namespace detail {
inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Modal language: p | bot | A /\ B | A \/ B | A -> B | ~A | <>A
// ---------------------------------------------------------------------------

enum class MKind : std::uint8_t { Atom, Bottom, And, Or, Implies, Not, Diamond };

class ModalFormula {
 public:
  struct Node {
    MKind kind;
    std::string name;
    std::shared_ptr<const Node> l, r;
    std::size_t hash = 0;
    int size = 0;
    int modal_depth = 0;
  };

  ModalFormula() = default;

  static ModalFormula atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = MKind::Atom;
    n->name = std::move(name);
    n->hash = detail::hash_mix(std::hash<std::string>{}(n->name), 11);
    return ModalFormula(std::move(n));
  }
  static ModalFormula bottom() {
    static const ModalFormula b = [] {
      auto n = std::make_shared<Node>();
      n->kind = MKind::Bottom;
      n->hash = 0x51ed;
      return ModalFormula(std::move(n));
    }();
    return b;
  }
  static ModalFormula conj(const ModalFormula& a, const ModalFormula& b) { return binary(MKind::And, a, b); }
  static ModalFormula disj(const ModalFormula& a, const ModalFormula& b) { return binary(MKind::Or, a, b); }
  static ModalFormula implies(const ModalFormula& a, const ModalFormula& b) {
    return binary(MKind::Implies, a, b);
  }
  static ModalFormula neg(const ModalFormula& a) { return unary(MKind::Not, a); }
  static ModalFormula diamond(const ModalFormula& a) { return unary(MKind::Diamond, a); }
  /// Sugar: []A is ~<>~A.
  static ModalFormula box(const ModalFormula& a) { return neg(diamond(neg(a))); }

  MKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  ModalFormula left() const { return ModalFormula(node_->l); }
  ModalFormula right() const { return ModalFormula(node_->r); }
  ModalFormula child() const { return ModalFormula(node_->l); }
  std::size_t hash() const { return node_->hash; }
  int size() const { return node_->size; }
  int modal_depth() const { return node_->modal_depth; }
  explicit operator bool() const { return static_cast<bool>(node_); }
  const Node* get() const { return node_.get(); }

  friend bool operator==(const ModalFormula& x, const ModalFormula& y) { return equal(x.node_.get(), y.node_.get()); }
  friend bool operator!=(const ModalFormula& x, const ModalFormula& y) { return !(x == y); }

 private:
  explicit ModalFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static ModalFormula binary(MKind k, const ModalFormula& a, const ModalFormula& b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->l = a.node_;
    n->r = b.node_;
    n->size = 1 + a.size() + b.size();
    n->modal_depth = std::max(a.modal_depth(), b.modal_depth());
    n->hash = detail::hash_mix(detail::hash_mix(static_cast<std::size_t>(k) * 7919, a.hash()), b.hash());
    return ModalFormula(std::move(n));
  }
  static ModalFormula unary(MKind k, const ModalFormula& a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->l = a.node_;
    n->size = 1 + a.size();
    n->modal_depth = a.modal_depth() + (k == MKind::Diamond ? 1 : 0);
    n->hash = detail::hash_mix(static_cast<std::size_t>(k) * 104729, a.hash());
    return ModalFormula(std::move(n));
  }
  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
    if (x->kind == MKind::Atom) return x->name == y->name;
    return equal(x->l.get(), y->l.get()) && equal(x->r.get(), y->r.get());
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Lambek-family language.
// ---------------------------------------------------------------------------

enum class Conn : std::uint8_t { Atom, Fresh, Bottom, Top, Unit, And, Or, Not, Prod, Under, Over, Dia, BoxDown };

/// Fresh letters: p{A} stands in for the complement of A, p_bot / p_top for the constants.
enum class FreshTag : std::uint8_t { NegOf, BotMark, TopMark };

class LFormula {
 public:
  struct Node {
    Conn conn;
    FreshTag tag = FreshTag::NegOf;
    std::string name;
    std::shared_ptr<const Node> a, b;
    std::size_t hash = 0;
    int size = 0;
    std::uint32_t mask = 0;  // connectives occurring in the formula, one bit per Conn
  };

  LFormula() = default;

  static LFormula atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->conn = Conn::Atom;
    n->mask = bit(Conn::Atom);
    n->name = std::move(name);
    n->hash = detail::hash_mix(std::hash<std::string>{}(n->name), 3);
    return LFormula(std::move(n));
  }
  /// The letter p_A.
  static LFormula fresh_neg(const LFormula& of) {
    auto n = std::make_shared<Node>();
    n->conn = Conn::Fresh;
    n->tag = FreshTag::NegOf;
    n->mask = bit(Conn::Fresh);
    n->a = of.node_;
    n->hash = detail::hash_mix(0xf7e5, of.hash());
    return LFormula(std::move(n));
  }
  static LFormula p_bot() { return constant(Conn::Fresh, FreshTag::BotMark, 0xb07); }
  static LFormula p_top() { return constant(Conn::Fresh, FreshTag::TopMark, 0x70b); }
  static LFormula bottom() { return constant(Conn::Bottom, FreshTag::NegOf, 0xb0); }
  static LFormula top() { return constant(Conn::Top, FreshTag::NegOf, 0x70); }
  static LFormula unit() { return constant(Conn::Unit, FreshTag::NegOf, 0x1); }

  static LFormula conj(const LFormula& x, const LFormula& y) { return binary(Conn::And, x, y); }
  static LFormula disj(const LFormula& x, const LFormula& y) { return binary(Conn::Or, x, y); }
  static LFormula prod(const LFormula& x, const LFormula& y) { return binary(Conn::Prod, x, y); }
  /// x \ y
  static LFormula under(const LFormula& x, const LFormula& y) { return binary(Conn::Under, x, y); }
  /// x / y
  static LFormula over(const LFormula& x, const LFormula& y) { return binary(Conn::Over, x, y); }
  static LFormula neg(const LFormula& x) { return unary(Conn::Not, x); }
  static LFormula dia(const LFormula& x) { return unary(Conn::Dia, x); }
  static LFormula boxdown(const LFormula& x) { return unary(Conn::BoxDown, x); }

  Conn conn() const { return node_->conn; }
  FreshTag tag() const { return node_->tag; }
  const std::string& name() const { return node_->name; }
  LFormula left() const { return LFormula(node_->a); }
  LFormula right() const { return LFormula(node_->b); }
  LFormula child() const { return LFormula(node_->a); }
  /// Payload of p{A}.
  LFormula payload() const { return LFormula(node_->a); }
  std::size_t hash() const { return node_->hash; }
  /// Number of connectives; letters and constants have size 0.
  int size() const { return node_->size; }
  std::uint32_t mask() const { return node_->mask; }
  bool mentions(Conn c) const { return (node_->mask & bit(c)) != 0; }
  static constexpr std::uint32_t bit(Conn c) { return 1u << static_cast<unsigned>(c); }
  explicit operator bool() const { return static_cast<bool>(node_); }
  const Node* get() const { return node_.get(); }

  bool is(Conn c) const { return node_ && node_->conn == c; }
  bool is_binary() const {
    switch (conn()) {
      case Conn::And: case Conn::Or: case Conn::Prod: case Conn::Under: case Conn::Over: return true;
      default: return false;
    }
  }
  bool is_unary() const { return is(Conn::Not) || is(Conn::Dia) || is(Conn::BoxDown); }
  bool is_letter() const { return is(Conn::Atom) || is(Conn::Fresh); }
  bool is_fresh(FreshTag t) const { return is(Conn::Fresh) && tag() == t; }

  friend bool operator==(const LFormula& x, const LFormula& y) { return equal(x.node_.get(), y.node_.get()); }
  friend bool operator!=(const LFormula& x, const LFormula& y) { return !(x == y); }

 private:
  explicit LFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static LFormula constant(Conn c, FreshTag t, std::size_t h) {
    // Function-local statics keyed by (conn, tag); initialization is thread-safe.
    auto make = [&] {
      auto n = std::make_shared<Node>();
      n->conn = c;
      n->tag = t;
      n->mask = bit(c);
      n->hash = h;
      return LFormula(std::move(n));
    };
    switch (c) {
      case Conn::Bottom: { static const LFormula f = make(); return f; }
      case Conn::Top: { static const LFormula f = make(); return f; }
      case Conn::Unit: { static const LFormula f = make(); return f; }
      default:
        if (t == FreshTag::BotMark) { static const LFormula f = make(); return f; }
        { static const LFormula f = make(); return f; }
    }
  }
  static LFormula binary(Conn c, const LFormula& x, const LFormula& y) {
    auto n = std::make_shared<Node>();
    n->conn = c;
    n->a = x.node_;
    n->b = y.node_;
    n->size = 1 + x.size() + y.size();
    n->mask = bit(c) | x.mask() | y.mask();
    n->hash = detail::hash_mix(detail::hash_mix(static_cast<std::size_t>(c) * 7919, x.hash()), y.hash());
    return LFormula(std::move(n));
  }
  static LFormula unary(Conn c, const LFormula& x) {
    auto n = std::make_shared<Node>();
    n->conn = c;
    n->a = x.node_;
    n->size = 1 + x.size();
    n->mask = bit(c) | x.mask();
    n->hash = detail::hash_mix(static_cast<std::size_t>(c) * 104729, x.hash());
    return LFormula(std::move(n));
  }
  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->hash != y->hash || x->conn != y->conn || x->size != y->size || x->tag != y->tag) return false;
    if (x->conn == Conn::Atom) return x->name == y->name;
    return equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const LFormula& f) const { return f.hash(); }
  std::size_t operator()(const ModalFormula& f) const { return f.hash(); }
};

using FormulaSet = std::unordered_set<LFormula, FormulaHash>;

// ---------------------------------------------------------------------------
// Structured antecedents: A | G o D | < G >
// ---------------------------------------------------------------------------

enum class TKind : std::uint8_t { Leaf, Node, Bracket };

/// Path from the root of a tree: 0 = left child (or bracket body), 1 = right child.
using Path = std::vector<std::uint8_t>;

class StructTree {
 public:
  struct Node {
    TKind kind;
    LFormula formula;
    std::shared_ptr<const Node> l, r;
    std::size_t hash = 0;
    int leaves = 0;
  };

  StructTree() = default;
  StructTree(const LFormula& f) : StructTree(leaf(f)) {}  // NOLINT: leaf promotion reads naturally

  static StructTree leaf(const LFormula& f) {
    auto n = std::make_shared<Node>();
    n->kind = TKind::Leaf;
    n->formula = f;
    n->hash = detail::hash_mix(f.hash(), 0x1eaf);
    n->leaves = 1;
    return StructTree(std::move(n));
  }
  static StructTree node(const StructTree& l, const StructTree& r) {
    auto n = std::make_shared<Node>();
    n->kind = TKind::Node;
    n->l = l.node_;
    n->r = r.node_;
    n->hash = detail::hash_mix(detail::hash_mix(0x90de, l.hash()), r.hash());
    n->leaves = l.leaves() + r.leaves();
    return StructTree(std::move(n));
  }
  static StructTree bracket(const StructTree& c) {
    auto n = std::make_shared<Node>();
    n->kind = TKind::Bracket;
    n->l = c.node_;
    n->hash = detail::hash_mix(0xb7ac, c.hash());
    n->leaves = c.leaves();
    return StructTree(std::move(n));
  }

  TKind kind() const { return node_->kind; }
  bool is_leaf() const { return node_->kind == TKind::Leaf; }
  bool is_node() const { return node_->kind == TKind::Node; }
  bool is_bracket() const { return node_->kind == TKind::Bracket; }
  const LFormula& formula() const { return node_->formula; }
  StructTree left() const { return StructTree(node_->l); }
  StructTree right() const { return StructTree(node_->r); }
  StructTree child() const { return StructTree(node_->l); }
  std::size_t hash() const { return node_->hash; }
  int leaves() const { return node_->leaves; }
  explicit operator bool() const { return static_cast<bool>(node_); }
  const Node* get() const { return node_.get(); }

  friend bool operator==(const StructTree& x, const StructTree& y) { return equal(x.node_.get(), y.node_.get()); }
  friend bool operator!=(const StructTree& x, const StructTree& y) { return !(x == y); }

 private:
  explicit StructTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->hash != y->hash || x->kind != y->kind) return false;
    if (x->kind == TKind::Leaf) return x->formula == y->formula;
    return equal(x->l.get(), y->l.get()) && equal(x->r.get(), y->r.get());
  }

  std::shared_ptr<const Node> node_;
};

/// Subtree at `path`; throws std::out_of_range when the path leaves the tree.
inline StructTree subtree_at(const StructTree& t, const Path& path, std::size_t from = 0) {
  StructTree cur = t;
  for (std::size_t i = from; i < path.size(); ++i) {
    if (cur.is_leaf()) throw std::out_of_range("path descends below a leaf");
    if (cur.is_bracket()) {
      if (path[i] != 0) throw std::out_of_range("bracket has a single child");
      cur = cur.child();
    } else {
      cur = path[i] == 0 ? cur.left() : cur.right();
    }
  }
  return cur;
}

/// Tree with the subtree at `path` replaced; this is Γ[Δ] with the hole at `path`.
inline StructTree replace_at(const StructTree& t, const Path& path, const StructTree& with, std::size_t depth = 0) {
  if (depth == path.size()) return with;
  if (t.is_leaf()) throw std::out_of_range("path descends below a leaf");
  if (t.is_bracket()) {
    if (path[depth] != 0) throw std::out_of_range("bracket has a single child");
    return StructTree::bracket(replace_at(t.child(), path, with, depth + 1));
  }
  if (path[depth] == 0) return StructTree::node(replace_at(t.left(), path, with, depth + 1), t.right());
  return StructTree::node(t.left(), replace_at(t.right(), path, with, depth + 1));
}

/// Every position in the tree, outermost first, then left to right.
inline std::vector<Path> all_paths(const StructTree& t) {
  std::vector<Path> out;
  std::vector<std::pair<StructTree, Path>> queue{{t, {}}};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [cur, p] = queue[i];
    out.push_back(p);
    if (cur.is_node()) {
      Path l = p, r = p;
      l.push_back(0);
      r.push_back(1);
      queue.emplace_back(cur.left(), l);
      queue.emplace_back(cur.right(), r);
    } else if (cur.is_bracket()) {
      Path c = p;
      c.push_back(0);
      queue.emplace_back(cur.child(), c);
    }
  }
  return out;
}

inline bool has_bracket(const StructTree& t) {
  if (t.is_leaf()) return false;
  if (t.is_bracket()) return true;
  return has_bracket(t.left()) || has_bracket(t.right());
}

template <typename F>
void for_each_leaf(const StructTree& t, F&& f) {
  if (t.is_leaf()) {
    f(t.formula());
  } else if (t.is_bracket()) {
    for_each_leaf(t.child(), f);
  } else {
    for_each_leaf(t.left(), f);
    for_each_leaf(t.right(), f);
  }
}

// ---------------------------------------------------------------------------
// Sequents
// ---------------------------------------------------------------------------

struct Sequent {
  std::optional<StructTree> antecedent;  // empty antecedent when absent
  LFormula succedent;

  Sequent() = default;
  Sequent(std::optional<StructTree> ant, LFormula succ) : antecedent(std::move(ant)), succedent(std::move(succ)) {}
  static Sequent simple(const LFormula& a, const LFormula& b) { return {StructTree::leaf(a), b}; }
  static Sequent empty(const LFormula& b) { return {std::nullopt, b}; }

  bool is_simple() const { return antecedent && antecedent->is_leaf(); }
  bool has_empty_antecedent() const { return !antecedent.has_value(); }
  std::size_t hash() const {
    return detail::hash_mix(antecedent ? antecedent->hash() : 0xe3, succedent.hash());
  }
  friend bool operator==(const Sequent& x, const Sequent& y) {
    if (x.antecedent.has_value() != y.antecedent.has_value()) return false;
    if (x.antecedent && *x.antecedent != *y.antecedent) return false;
    return x.succedent == y.succedent;
  }
  friend bool operator!=(const Sequent& x, const Sequent& y) { return !(x == y); }
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

// ---------------------------------------------------------------------------
// Structural utilities
// ---------------------------------------------------------------------------

/// Error raised on structure the requested operation does not support.
class UnsupportedStructure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// φ(A) = A, φ(Γ∘Δ) = φ(Γ)·φ(Δ).
inline LFormula phi_of_tree(const StructTree& t) {
  switch (t.kind()) {
    case TKind::Leaf: return t.formula();
    case TKind::Node: return LFormula::prod(phi_of_tree(t.left()), phi_of_tree(t.right()));
    case TKind::Bracket: break;
  }
  throw UnsupportedStructure("phi is undefined on bracketed structures");
}

namespace detail {
inline void collect_subformulas(const LFormula& f, std::vector<LFormula>& out, FormulaSet& seen) {
  if (seen.count(f)) return;
  if (f.is_binary()) {
    collect_subformulas(f.left(), out, seen);
    collect_subformulas(f.right(), out, seen);
  } else if (f.is_unary()) {
    collect_subformulas(f.child(), out, seen);
  }
  if (seen.insert(f).second) out.push_back(f);
}
}  // namespace detail

/// All subtrees of the given formulas (fresh-letter payloads are not descended
/// into: p{A} is a letter). Children precede parents; first occurrence wins.
inline std::vector<LFormula> subformulas(const std::vector<LFormula>& roots) {
  std::vector<LFormula> out;
  FormulaSet seen;
  for (const auto& r : roots) detail::collect_subformulas(r, out, seen);
  return out;
}

inline std::vector<LFormula> subformulas(const LFormula& f) { return subformulas(std::vector<LFormula>{f}); }

inline std::vector<LFormula> formulas_of(const Sequent& s) {
  std::vector<LFormula> out;
  if (s.antecedent) for_each_leaf(*s.antecedent, [&](const LFormula& f) { out.push_back(f); });
  out.push_back(s.succedent);
  return out;
}

inline std::vector<LFormula> subformulas(const std::vector<Sequent>& seqs) {
  std::vector<LFormula> roots;
  for (const auto& s : seqs) {
    auto fs = formulas_of(s);
    roots.insert(roots.end(), fs.begin(), fs.end());
  }
  return subformulas(roots);
}

/// Conjunct leaves of an ∧-tree, left to right.
inline void conjuncts(const LFormula& f, std::vector<LFormula>& out) {
  if (f.is(Conn::And)) {
    conjuncts(f.left(), out);
    conjuncts(f.right(), out);
  } else {
    out.push_back(f);
  }
}

template <typename Pred>
bool any_subformula(const LFormula& f, Pred&& p) {
  if (p(f)) return true;
  if (f.is_binary()) return any_subformula(f.left(), p) || any_subformula(f.right(), p);
  if (f.is_unary()) return any_subformula(f.child(), p);
  return false;
}

}  // namespace lambek
