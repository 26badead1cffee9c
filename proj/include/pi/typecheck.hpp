#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pi/comb.hpp"
#include "pi/errors.hpp"
#include "pi/syntax.hpp"
#include "pi/type.hpp"

namespace pi {

/// A combinator type b1 <-> b2, possibly with metavariables.
struct CombType {
  Type dom;
  Type cod;

  friend bool operator==(const CombType&, const CombType&) = default;
};

inline std::string to_string(const CombType& t) { return to_string(t.dom) + " <-> " + to_string(t.cod); }

/// A fully ground typing derivation: every subterm carries the type it is
/// used at.  Premises follow the term structure (two for seq/sum/prod, one
/// for inv/ascribe, none for primitives).
struct Derivation {
  Comb term;
  Type dom;
  Type cod;
  std::vector<Derivation> premises;
};

namespace detail {

class Unifier {
 public:
  Type fresh() {
    binding_.emplace_back();
    return Type::var(binding_.size() - 1);
  }

  // Follows variable bindings at the root only.
  Type walk(Type t) const {
    while (t.is_var() && binding_[t.var_id()]) t = *binding_[t.var_id()];
    return t;
  }

  Type apply(const Type& t) const {
    if (t.is_var() && binding_[t.var_id()]) {
      // Path compression: later lookups share the resolved tree.
      Type r = apply(*binding_[t.var_id()]);
      binding_[t.var_id()] = r;
      return r;
    }
    const Type& w = t;
    switch (w.kind()) {
      case Type::Kind::sum:
      case Type::Kind::prod: {
        Type l = apply(w.left());
        Type r = apply(w.right());
        // Reuse the node when nothing below it was bound.
        if (l.identical(w.left()) && r.identical(w.right())) return w;
        return w.is_sum() ? Type::sum(std::move(l), std::move(r)) : Type::prod(std::move(l), std::move(r));
      }
      default:
        return w;
    }
  }

  // Returns false on a clash; throws on an occurs-check violation.
  bool unify(const Type& a, const Type& b) {
    Type x = walk(a);
    Type y = walk(b);
    if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) return true;
    if (x.is_var()) return bind(x.var_id(), y);
    if (y.is_var()) return bind(y.var_id(), x);
    if (x.kind() != y.kind()) return false;
    if (x.is_sum() || x.is_prod()) return unify(x.left(), y.left()) && unify(x.right(), y.right());
    return true;
  }

 private:
  bool occurs(std::size_t id, const Type& t) const {
    Type w = walk(t);
    if (w.is_var()) return w.var_id() == id;
    if (w.is_sum() || w.is_prod()) return occurs(id, w.left()) || occurs(id, w.right());
    return false;
  }

  bool bind(std::size_t id, const Type& t) {
    if (occurs(id, t)) throw type_error("occurs check: " + var_name(id) + " occurs in " + to_string(apply(t)));
    binding_[id] = t;
    return true;
  }

  mutable std::vector<std::optional<Type>> binding_;
};

// Renames metavariables to 0, 1, 2, ... in order of first appearance.
class Renamer {
 public:
  Type operator()(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::var: {
        auto [it, fresh] = names_.try_emplace(t.var_id(), names_.size());
        return Type::var(it->second);
      }
      case Type::Kind::sum:
      case Type::Kind::prod: {
        Type l = (*this)(t.left());
        Type r = (*this)(t.right());
        return t.is_sum() ? Type::sum(std::move(l), std::move(r)) : Type::prod(std::move(l), std::move(r));
      }
      default:
        return t;
    }
  }

 private:
  std::map<std::size_t, std::size_t> names_;
};

struct Pending {
  Comb term;
  Type dom;
  Type cod;
  std::vector<Pending> premises;
};

class Checker {
 public:
  Pending build(const Comb& c) {
    switch (c.kind()) {
      case Comb::Kind::prim:
        return primitive(c);
      case Comb::Kind::seq: {
        Pending a = build(c.first());
        Pending b = build(c.second());
        if (!u_.unify(a.cod, b.dom)) mismatch(c, a.cod, b.dom);
        Type dom = a.dom, cod = b.cod;
        return node(c, dom, cod, std::move(a), std::move(b));
      }
      case Comb::Kind::sum:
      case Comb::Kind::prod: {
        Pending a = build(c.first());
        Pending b = build(c.second());
        bool sum = c.kind() == Comb::Kind::sum;
        Type dom = sum ? Type::sum(a.dom, b.dom) : Type::prod(a.dom, b.dom);
        Type cod = sum ? Type::sum(a.cod, b.cod) : Type::prod(a.cod, b.cod);
        return node(c, dom, cod, std::move(a), std::move(b));
      }
      case Comb::Kind::inv: {
        Pending a = build(c.first());
        Type dom = a.cod, cod = a.dom;
        return node(c, dom, cod, std::move(a));
      }
      case Comb::Kind::ascribe: {
        Pending a = build(c.first());
        std::map<std::size_t, Type> fresh;
        Type d = refresh(c.dom(), fresh);
        Type e = refresh(c.cod(), fresh);
        if (!u_.unify(a.dom, d)) mismatch(c, a.dom, d);
        if (!u_.unify(a.cod, e)) mismatch(c, a.cod, e);
        Type dom = a.dom, cod = a.cod;
        return node(c, dom, cod, std::move(a));
      }
    }
    throw type_error("malformed term");
  }

  void expect(const Pending& p, const Type& dom, const Type& cod) {
    if (!u_.unify(p.dom, dom) || !u_.unify(p.cod, cod)) {
      Renamer r;
      CombType have{r(u_.apply(p.dom)), r(u_.apply(p.cod))};
      throw type_error("term has type " + to_string(have) + ", expected " + to_string(dom) + " <-> " +
                       to_string(cod));
    }
  }

  CombType principal(const Pending& p) const {
    Renamer r;
    Type d = r(u_.apply(p.dom));
    Type e = r(u_.apply(p.cod));
    return {d, e};
  }

  Derivation ground(const Pending& p) const {
    Derivation d{p.term, u_.apply(p.dom), u_.apply(p.cod), {}};
    if (!d.dom.is_ground() || !d.cod.is_ground()) {
      Renamer r;
      throw type_error("ambiguous middle type: `" + to_string(p.term) + "` is used at " + to_string(r(d.dom)) +
                       " <-> " + to_string(r(d.cod)) + "; add an ascription");
    }
    d.premises.reserve(p.premises.size());
    for (const auto& q : p.premises) d.premises.push_back(ground(q));
    return d;
  }

 private:
  // Moves the premises in; a braced initializer list would copy them.
  template <class... Ps>
  static Pending node(const Comb& c, Type dom, Type cod, Ps&&... ps) {
    Pending p{c, std::move(dom), std::move(cod), {}};
    p.premises.reserve(sizeof...(ps));
    (p.premises.push_back(std::forward<Ps>(ps)), ...);
    return p;
  }

  Pending primitive(const Comb& c) {
    auto v = [&] { return u_.fresh(); };
    auto sum = [](Type a, Type b) { return Type::sum(std::move(a), std::move(b)); };
    auto prod = [](Type a, Type b) { return Type::prod(std::move(a), std::move(b)); };
    auto mk = [&](Type d, Type e) { return Pending{c, std::move(d), std::move(e), {}}; };
    switch (c.primitive()) {
      case Prim::id: {
        Type a = v();
        return mk(a, a);
      }
      case Prim::swap_plus: {
        Type a = v(), b = v();
        return mk(sum(a, b), sum(b, a));
      }
      case Prim::assocr_plus: {
        Type a = v(), b = v(), d = v();
        return mk(sum(sum(a, b), d), sum(a, sum(b, d)));
      }
      case Prim::assocl_plus: {
        Type a = v(), b = v(), d = v();
        return mk(sum(a, sum(b, d)), sum(sum(a, b), d));
      }
      case Prim::unite_plus_l: {
        Type a = v();
        return mk(sum(Type::zero(), a), a);
      }
      case Prim::uniti_plus_l: {
        Type a = v();
        return mk(a, sum(Type::zero(), a));
      }
      case Prim::swap_times: {
        Type a = v(), b = v();
        return mk(prod(a, b), prod(b, a));
      }
      case Prim::assocr_times: {
        Type a = v(), b = v(), d = v();
        return mk(prod(prod(a, b), d), prod(a, prod(b, d)));
      }
      case Prim::assocl_times: {
        Type a = v(), b = v(), d = v();
        return mk(prod(a, prod(b, d)), prod(prod(a, b), d));
      }
      case Prim::unite_times_l: {
        Type a = v();
        return mk(prod(Type::one(), a), a);
      }
      case Prim::uniti_times_l: {
        Type a = v();
        return mk(a, prod(Type::one(), a));
      }
      case Prim::dist: {
        Type a = v(), b = v(), d = v();
        return mk(prod(sum(a, b), d), sum(prod(a, d), prod(b, d)));
      }
      case Prim::factor: {
        Type a = v(), b = v(), d = v();
        return mk(sum(prod(a, d), prod(b, d)), prod(sum(a, b), d));
      }
      case Prim::absorbl: {
        Type a = v();
        return mk(prod(a, Type::zero()), Type::zero());
      }
      case Prim::factorzr: {
        Type a = v();
        return mk(Type::zero(), prod(a, Type::zero()));
      }
      case Prim::hadamard:
      case Prim::phase_s:
      case Prim::phase_t: {
        Type qubit = sum(Type::one(), Type::one());
        return mk(qubit, qubit);
      }
    }
    throw type_error("unknown primitive");
  }

  // Metavariables written in an ascription are local to it.
  Type refresh(const Type& t, std::map<std::size_t, Type>& fresh) {
    switch (t.kind()) {
      case Type::Kind::var: {
        auto it = fresh.find(t.var_id());
        if (it == fresh.end()) it = fresh.emplace(t.var_id(), u_.fresh()).first;
        return it->second;
      }
      case Type::Kind::sum:
      case Type::Kind::prod: {
        Type l = refresh(t.left(), fresh);
        Type r = refresh(t.right(), fresh);
        return t.is_sum() ? Type::sum(std::move(l), std::move(r)) : Type::prod(std::move(l), std::move(r));
      }
      default:
        return t;
    }
  }

  [[noreturn]] void mismatch(const Comb& where, const Type& a, const Type& b) const {
    Renamer r;
    Type x = r(u_.apply(a));
    Type y = r(u_.apply(b));
    throw type_error("cannot unify " + to_string(x) + " with " + to_string(y) + " in `" + to_string(where) + "`");
  }

  Unifier u_;
};

}  // namespace detail

/// Principal type of a combinator.  Metavariables are numbered in order of
/// appearance, so the result is stable across calls.
inline CombType infer(const Comb& c) {
  detail::Checker k;
  auto p = k.build(c);
  return k.principal(p);
}

/// Checks c at the ground type dom <-> cod and returns the derivation with
/// every subterm monomorphised.
inline Derivation check(const Comb& c, const Type& dom, const Type& cod) {
  if (!dom.is_ground() || !cod.is_ground()) throw type_error("check needs ground types");
  detail::Checker k;
  auto p = k.build(c);
  k.expect(p, dom, cod);
  Derivation d = k.ground(p);
  if (size(d.dom) != size(d.cod))
    throw std::logic_error("well-typed term changes cardinality: " + to_string(c));
  return d;
}

/// Like check, but takes the types from the principal type, which must be ground.
inline Derivation check(const Comb& c) {
  CombType t = infer(c);
  if (!t.dom.is_ground() || !t.cod.is_ground())
    throw type_error("type " + to_string(t) + " is not ground; add an ascription");
  return check(c, t.dom, t.cod);
}

}  // namespace pi
