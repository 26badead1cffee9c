#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <cstddef>
#include <string_view>
#include <utility>

#include "pi/type.hpp"

namespace pi {

/// Primitive isomorphisms.  The first fifteen are the rig isomorphisms of the
/// classical language; hadamard, phase_s and phase_t only have a quantum
/// meaning and are rejected by the classical evaluator.
enum class Prim : std::uint8_t {
  id,
  swap_plus,
  assocr_plus,
  assocl_plus,
  unite_plus_l,
  uniti_plus_l,
  swap_times,
  assocr_times,
  assocl_times,
  unite_times_l,
  uniti_times_l,
  dist,
  factor,
  absorbl,
  factorzr,
  hadamard,
  phase_s,
  phase_t,
};

inline constexpr std::size_t prim_count = 18;

inline constexpr std::array<std::string_view, prim_count> prim_names = {
    "id",      "swap+",   "assocr+", "assocl+", "unite+l", "uniti+l", "swapx",   "assocrx", "assoclx",
    "unitexl", "unitixl", "dist",    "factor",  "absorbl", "factorzr", "H",      "S",       "T",
};

inline std::string_view name(Prim p) { return prim_names[static_cast<std::size_t>(p)]; }

inline std::optional<Prim> prim_from_name(std::string_view s) {
  for (std::size_t i = 0; i < prim_count; ++i)
    if (prim_names[i] == s) return static_cast<Prim>(i);
  return std::nullopt;
}

inline bool is_quantum(Prim p) { return p == Prim::hadamard || p == Prim::phase_s || p == Prim::phase_t; }

/// The primitive listed opposite p in the table of isomorphisms, if it is
/// itself primitive.  S and T have no primitive inverse.
inline std::optional<Prim> dual(Prim p) {
  switch (p) {
    case Prim::id:
    case Prim::swap_plus:
    case Prim::swap_times:
    case Prim::hadamard:
      return p;
    case Prim::assocr_plus:
      return Prim::assocl_plus;
    case Prim::assocl_plus:
      return Prim::assocr_plus;
    case Prim::unite_plus_l:
      return Prim::uniti_plus_l;
    case Prim::uniti_plus_l:
      return Prim::unite_plus_l;
    case Prim::assocr_times:
      return Prim::assocl_times;
    case Prim::assocl_times:
      return Prim::assocr_times;
    case Prim::unite_times_l:
      return Prim::uniti_times_l;
    case Prim::uniti_times_l:
      return Prim::unite_times_l;
    case Prim::dist:
      return Prim::factor;
    case Prim::factor:
      return Prim::dist;
    case Prim::absorbl:
      return Prim::factorzr;
    case Prim::factorzr:
      return Prim::absorbl;
    case Prim::phase_s:
    case Prim::phase_t:
      return std::nullopt;
  }
  return std::nullopt;
}

/// Combinator syntax tree.  Immutable and shared like Type and Value.
class Comb {
 public:
  enum class Kind : std::uint8_t { prim, seq, sum, prod, inv, ascribe };

  static Comb prim(Prim p);
  static Comb seq(Comb a, Comb b);
  static Comb sum(Comb a, Comb b);
  static Comb prod(Comb a, Comb b);
  static Comb inv(Comb a);
  static Comb ascribe(Comb a, Type dom, Type cod);

  static Comb id() { return prim(Prim::id); }

  Comb() : Comb(id()) {}

  Kind kind() const;
  bool is_prim() const { return kind() == Kind::prim; }
  Prim primitive() const;

  /// Left (or only) child.
  const Comb& first() const;
  const Comb& second() const;
  /// Ascribed types; only meaningful on ascribe nodes.
  const Type& dom() const;
  const Type& cod() const;

  friend bool operator==(const Comb& x, const Comb& y) {
    if (x.node_ == y.node_) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::prim:
        return x.primitive() == y.primitive();
      case Kind::inv:
        return x.first() == y.first();
      case Kind::ascribe:
        return x.dom() == y.dom() && x.cod() == y.cod() && x.first() == y.first();
      default:
        return x.first() == y.first() && x.second() == y.second();
    }
  }
  friend bool operator!=(const Comb& x, const Comb& y) { return !(x == y); }

 private:
  struct Node;

  explicit Comb(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  explicit Comb(std::nullptr_t) {}

  std::shared_ptr<const Node> node_;
};

struct Comb::Node {
  Kind kind;
  Prim p;
  Comb a;
  Comb b;
  Type dom;
  Type cod;
};

inline Comb Comb::prim(Prim p) {
  return Comb(std::make_shared<const Node>(Node{Kind::prim, p, Comb(nullptr), Comb(nullptr), {}, {}}));
}
inline Comb Comb::seq(Comb a, Comb b) {
  return Comb(std::make_shared<const Node>(Node{Kind::seq, Prim::id, std::move(a), std::move(b), {}, {}}));
}
inline Comb Comb::sum(Comb a, Comb b) {
  return Comb(std::make_shared<const Node>(Node{Kind::sum, Prim::id, std::move(a), std::move(b), {}, {}}));
}
inline Comb Comb::prod(Comb a, Comb b) {
  return Comb(std::make_shared<const Node>(Node{Kind::prod, Prim::id, std::move(a), std::move(b), {}, {}}));
}
inline Comb Comb::inv(Comb a) {
  return Comb(std::make_shared<const Node>(Node{Kind::inv, Prim::id, std::move(a), Comb(nullptr), {}, {}}));
}
inline Comb Comb::ascribe(Comb a, Type dom, Type cod) {
  return Comb(std::make_shared<const Node>(
      Node{Kind::ascribe, Prim::id, std::move(a), Comb(nullptr), std::move(dom), std::move(cod)}));
}
inline Comb::Kind Comb::kind() const { return node_->kind; }
inline Prim Comb::primitive() const { return node_->p; }
inline const Comb& Comb::first() const { return node_->a; }
inline const Comb& Comb::second() const { return node_->b; }
inline const Type& Comb::dom() const { return node_->dom; }
inline const Type& Comb::cod() const { return node_->cod; }

inline Comb operator>>(Comb a, Comb b) { return Comb::seq(std::move(a), std::move(b)); }

/// Number of nodes in the tree.
inline std::size_t term_size(const Comb& c) {
  switch (c.kind()) {
    case Comb::Kind::prim:
      return 1;
    case Comb::Kind::inv:
    case Comb::Kind::ascribe:
      return 1 + term_size(c.first());
    default:
      return 1 + term_size(c.first()) + term_size(c.second());
  }
}

inline bool is_classical(const Comb& c) {
  switch (c.kind()) {
    case Comb::Kind::prim:
      return !is_quantum(c.primitive());
    case Comb::Kind::inv:
    case Comb::Kind::ascribe:
      return is_classical(c.first());
    default:
      return is_classical(c.first()) && is_classical(c.second());
  }
}

/// Syntactic inverse by recursive descent: primitives go to their duals,
/// sequences reverse, sums and products invert componentwise, and an explicit
/// inv node is dropped.
inline Comb invert(const Comb& c) {
  switch (c.kind()) {
    case Comb::Kind::prim:
      if (auto d = dual(c.primitive())) return Comb::prim(*d);
      return Comb::inv(c);
    case Comb::Kind::seq:
      return Comb::seq(invert(c.second()), invert(c.first()));
    case Comb::Kind::sum:
      return Comb::sum(invert(c.first()), invert(c.second()));
    case Comb::Kind::prod:
      return Comb::prod(invert(c.first()), invert(c.second()));
    case Comb::Kind::inv:
      return c.first();
    case Comb::Kind::ascribe:
      return Comb::ascribe(invert(c.first()), c.cod(), c.dom());
  }
  return c;
}

/// Pushes every inv node down to the primitives.  invert is an involution on
/// terms in this normal form.
inline Comb collapse_inv(const Comb& c) {
  switch (c.kind()) {
    case Comb::Kind::prim:
      return c;
    case Comb::Kind::seq:
      return Comb::seq(collapse_inv(c.first()), collapse_inv(c.second()));
    case Comb::Kind::sum:
      return Comb::sum(collapse_inv(c.first()), collapse_inv(c.second()));
    case Comb::Kind::prod:
      return Comb::prod(collapse_inv(c.first()), collapse_inv(c.second()));
    case Comb::Kind::inv: {
      const Comb& a = c.first();
      if (a.is_prim() && !dual(a.primitive())) return c;
      return invert(collapse_inv(a));
    }
    case Comb::Kind::ascribe:
      return Comb::ascribe(collapse_inv(c.first()), c.dom(), c.cod());
  }
  return c;
}

}  // namespace pi
