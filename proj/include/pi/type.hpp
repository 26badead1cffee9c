#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "pi/errors.hpp"

namespace pi {

/// Value types of the language: 0, 1, sums and products.  A fifth kind, the
/// metavariable, only appears while type checking; every type that reaches
/// the evaluator or a semantic model is ground.
///
/// Types are immutable trees with shared structure, so copying is cheap and
/// equality is structural.
class Type {
 public:
  enum class Kind : std::uint8_t { zero, one, sum, prod, var };

  static Type zero();
  static Type one();
  static Type sum(Type left, Type right);
  static Type prod(Type left, Type right);
  static Type var(std::size_t id);

  // Default-constructed type is 0; keeps Type regular for containers.
  Type();

  Kind kind() const;
  bool is_zero() const { return kind() == Kind::zero; }
  bool is_one() const { return kind() == Kind::one; }
  bool is_sum() const { return kind() == Kind::sum; }
  bool is_prod() const { return kind() == Kind::prod; }
  bool is_var() const { return kind() == Kind::var; }

  const Type& left() const;
  const Type& right() const;
  std::size_t var_id() const;

  bool is_ground() const;

  friend bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::zero:
      case Kind::one:
        return true;
      case Kind::var:
        return a.var_id() == b.var_id();
      default:
        return a.left() == b.left() && a.right() == b.right();
    }
  }
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

  /// Same node, not just the same shape.
  bool identical(const Type& other) const { return node_ == other.node_; }

 private:
  struct Node;

  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  explicit Type(std::nullptr_t) {}

  static const std::shared_ptr<const Node>& leaf(Kind k);
  static Type node(Kind k, Type left, Type right);

  friend std::uint64_t size(const Type& b);

  std::shared_ptr<const Node> node_;
};

// Groundness and the element count are fixed at construction.
struct Type::Node {
  Kind kind;
  Type left;
  Type right;
  std::size_t id = 0;
  bool ground = true;
  bool overflow = false;
  std::uint64_t count = 0;
};

inline const std::shared_ptr<const Type::Node>& Type::leaf(Kind k) {
  static const auto zero_node = std::make_shared<const Node>(Node{Kind::zero, Type(nullptr), Type(nullptr), 0, true, false, 0});
  static const auto one_node = std::make_shared<const Node>(Node{Kind::one, Type(nullptr), Type(nullptr), 0, true, false, 1});
  return k == Kind::zero ? zero_node : one_node;
}

inline Type Type::node(Kind k, Type left, Type right) {
  Node n{k, std::move(left), std::move(right)};
  const Node& l = *n.left.node_;
  const Node& r = *n.right.node_;
  n.ground = l.ground && r.ground;
  n.overflow = l.overflow || r.overflow;
  if (n.ground && !n.overflow) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    if (k == Kind::sum) {
      n.overflow = l.count > max - r.count;
      n.count = n.overflow ? 0 : l.count + r.count;
    } else {
      n.overflow = l.count != 0 && r.count > max / l.count;
      n.count = n.overflow ? 0 : l.count * r.count;
    }
  }
  return Type(std::make_shared<const Node>(std::move(n)));
}

inline Type Type::zero() { return Type(leaf(Kind::zero)); }
inline Type Type::one() { return Type(leaf(Kind::one)); }
inline Type Type::sum(Type left, Type right) { return node(Kind::sum, std::move(left), std::move(right)); }
inline Type Type::prod(Type left, Type right) { return node(Kind::prod, std::move(left), std::move(right)); }
inline Type Type::var(std::size_t id) {
  return Type(std::make_shared<const Node>(Node{Kind::var, Type(nullptr), Type(nullptr), id, false, false, 0}));
}
inline Type::Type() : Type(zero()) {}
inline Type::Kind Type::kind() const { return node_->kind; }
inline const Type& Type::left() const { return node_->left; }
inline const Type& Type::right() const { return node_->right; }
inline std::size_t Type::var_id() const { return node_->id; }
inline bool Type::is_ground() const { return node_->ground; }

/// Number of inhabitants of a ground type.  Throws if the type has a
/// metavariable or the count does not fit in 64 bits.
inline std::uint64_t size(const Type& b) {
  if (!b.node_->ground) throw type_error("size of a non-ground type");
  if (b.node_->overflow) throw size_error("type is too large to enumerate");
  return b.node_->count;
}

/// The canonical finite type with n elements, 1 + (1 + (... + 0)).
inline Type canonical_type(std::uint64_t n) {
  Type t = Type::zero();
  for (std::uint64_t i = 0; i < n; ++i) t = Type::sum(Type::one(), t);
  return t;
}

namespace detail {

inline std::string var_name(std::size_t id) {
  std::string s = "'";
  do {
    s += static_cast<char>('a' + id % 26);
    id /= 26;
  } while (id != 0);
  return s;
}

// Precedence: 0 = sum context, 1 = product operand, 2 = atom.
inline void print_type(std::string& out, const Type& t, int prec) {
  switch (t.kind()) {
    case Type::Kind::zero:
      out += '0';
      return;
    case Type::Kind::one:
      out += '1';
      return;
    case Type::Kind::var:
      out += var_name(t.var_id());
      return;
    case Type::Kind::sum:
      if (prec > 0) out += '(';
      print_type(out, t.left(), 1);
      out += " + ";
      print_type(out, t.right(), 0);
      if (prec > 0) out += ')';
      return;
    case Type::Kind::prod:
      if (prec > 1) out += '(';
      print_type(out, t.left(), 2);
      out += " * ";
      print_type(out, t.right(), 1);
      if (prec > 1) out += ')';
      return;
  }
}

}  // namespace detail

/// Renders a type in the concrete syntax: `*` binds tighter than `+` and both
/// associate to the right.
inline std::string to_string(const Type& t) {
  std::string out;
  detail::print_type(out, t, 0);
  return out;
}

}  // namespace pi
