#pragma once

// Two arrow layers over the reversible core.
//
//   AllocTerm  b1 >-> b2   a bijection  u : b1 + heap <-> b2      (allocation)
//   HideTerm   b1 ~> b2    an AllocTerm v : b1 >-> b2 * garbage    (hiding)
//
// Terms are compared extensionally: an AllocTerm by the injection it induces
// on b1, a HideTerm by the function it induces.  Two terms that differ only
// by a bijection acting on the hidden part induce the same table, and
// conversely, so this is exactly the quotient "up to a term on the hidden
// part"; it also relates terms whose hidden types differ.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pi/comb.hpp"
#include "pi/errors.hpp"
#include "pi/eval.hpp"
#include "pi/finite.hpp"
#include "pi/models.hpp"
#include "pi/typecheck.hpp"
#include "pi/value.hpp"

namespace pi {

class AllocTerm {
 public:
  /// lift(u) for u : dom + hidden <-> cod.
  static AllocTerm lift(Comb body, Type dom, Type hidden, Type cod) {
    check(body, Type::sum(dom, hidden), cod);
    if (!is_classical(body)) throw type_error("allocation bodies must be classical terms");
    return AllocTerm(std::move(body), std::move(dom), std::move(hidden), std::move(cod));
  }

  const Type& dom() const { return dom_; }
  const Type& hidden() const { return hidden_; }
  const Type& cod() const { return cod_; }
  const Comb& body() const { return body_; }

  /// The induced injection: k ↦ idx(eval(body, inl(value_of(dom, k)))).
  const std::vector<std::size_t>& injection() const { return inj_; }

  PartialInjection as_partial_injection() const {
    PartialInjection::Map m(inj_.begin(), inj_.end());
    return {std::move(m), static_cast<std::size_t>(size(cod_))};
  }

  friend bool operator==(const AllocTerm& a, const AllocTerm& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.inj_ == b.inj_;
  }

 private:
  AllocTerm(Comb body, Type dom, Type hidden, Type cod)
      : body_(std::move(body)), dom_(std::move(dom)), hidden_(std::move(hidden)), cod_(std::move(cod)) {
    auto n = size(dom_);
    auto m = size(cod_);
    std::vector<bool> hit(m, false);
    inj_.resize(n);
    for (std::uint64_t k = 0; k < n; ++k) {
      auto y = idx(eval(body_, Value::inl(value_of(dom_, k))), cod_);
      if (hit[y]) throw std::logic_error("allocation term induces a non-injective map");
      hit[y] = true;
      inj_[k] = y;
    }
  }

  Comb body_;
  Type dom_;
  Type hidden_;
  Type cod_;
  std::vector<std::size_t> inj_;
};

namespace detail {

inline Comb prim(Prim p) { return Comb::prim(p); }

// b + 0 <-> b
inline Comb unite_plus_r() { return prim(Prim::swap_plus) >> prim(Prim::unite_plus_l); }
// b * 1 <-> b
inline Comb unite_times_r() { return prim(Prim::swap_times) >> prim(Prim::unite_times_l); }
// b <-> b * 1
inline Comb uniti_times_r() { return prim(Prim::uniti_times_l) >> prim(Prim::swap_times); }
// a * (b + c) <-> a * b + a * c
inline Comb distl() {
  return prim(Prim::swap_times) >> (prim(Prim::dist) >> Comb::sum(prim(Prim::swap_times), prim(Prim::swap_times)));
}

inline Comb pinned(const AllocTerm& t) { return Comb::ascribe(t.body(), Type::sum(t.dom(), t.hidden()), t.cod()); }

}  // namespace detail

/// arr(u) = lift(unite+ ; u), hiding only the empty type.
inline AllocTerm alloc_arr(const Comb& u, const Type& dom, const Type& cod) {
  return AllocTerm::lift(detail::unite_plus_r() >> Comb::ascribe(u, dom, cod), dom, Type::zero(), cod);
}

inline AllocTerm alloc_id(const Type& b) { return alloc_arr(Comb::id(), b, b); }

/// lift(u) >>> lift(v) = lift(assocl+ ; (u + id) ; v).
inline AllocTerm alloc_seq(const AllocTerm& t, const AllocTerm& s) {
  if (t.cod() != s.dom())
    throw type_error("cannot compose " + to_string(t.cod()) + " with an arrow from " + to_string(s.dom()));
  Comb body = Comb::prim(Prim::assocl_plus) >> (Comb::sum(detail::pinned(t), Comb::id()) >> detail::pinned(s));
  return AllocTerm::lift(std::move(body), t.dom(), Type::sum(t.hidden(), s.hidden()), s.cod());
}

/// Parallel composition t *** s : b1 * b3 >-> b2 * b4.  The heap is what is
/// left of (b1 + h1) * (b3 + h2) after removing b1 * b3.
inline AllocTerm alloc_par(const AllocTerm& t, const AllocTerm& s) {
  using detail::distl;
  const Type& b1 = t.dom();
  const Type& h1 = t.hidden();
  const Type& b3 = s.dom();
  const Type& h2 = s.hidden();
  Type heap = Type::sum(Type::prod(b1, h2), Type::sum(Type::prod(h1, b3), Type::prod(h1, h2)));
  // (b1 + h1) * (b3 + h2) <-> b1 * b3 + heap
  Comb reshape =
      Comb::prim(Prim::dist) >> (Comb::sum(distl(), distl()) >> Comb::prim(Prim::assocr_plus));
  Comb body = invert(reshape) >> Comb::prod(detail::pinned(t), detail::pinned(s));
  return AllocTerm::lift(std::move(body), Type::prod(b1, b3), std::move(heap), Type::prod(t.cod(), s.cod()));
}

/// alloc = lift(unite+l) : 0 >-> b.
inline AllocTerm alloc(const Type& b) { return AllocTerm::lift(Comb::prim(Prim::unite_plus_l), Type::zero(), b, b); }

/// inl : b1 >-> b1 + b2.
inline AllocTerm alloc_inl(const Type& b1, const Type& b2) {
  return AllocTerm::lift(Comb::id(), b1, b2, Type::sum(b1, b2));
}

/// inr : b2 >-> b1 + b2.
inline AllocTerm alloc_inr(const Type& b1, const Type& b2) {
  return AllocTerm::lift(Comb::prim(Prim::swap_plus), b2, b1, Type::sum(b1, b2));
}

/// clone : b >-> b * b.  The heap is N(|b|^2 - |b|); the body is synthesised
/// from the permutation sending k to (k, k) and the heap onto the remaining
/// pairs in order.
inline AllocTerm clone(const Type& b) {
  auto n = static_cast<std::size_t>(size(b));
  std::size_t heap = n * n - n;
  std::vector<std::size_t> image(n * n);
  std::vector<bool> used(n * n, false);
  for (std::size_t k = 0; k < n; ++k) {
    image[k] = k * n + k;
    used[k * n + k] = true;
  }
  std::size_t next = 0;
  for (std::size_t h = 0; h < heap; ++h) {
    while (used[next]) ++next;
    image[n + h] = next++;
  }
  Type hidden = canonical_type(heap);
  Type dom = Type::sum(b, hidden);
  Type cod = Type::prod(b, b);
  return AllocTerm::lift(synth_iso(Permutation(std::move(image)), dom, cod), b, hidden, cod);
}

class HideTerm {
 public:
  /// lift(v) for v : dom >-> cod * garbage.
  static HideTerm lift(AllocTerm body, Type cod, Type garbage) {
    if (body.cod() != Type::prod(cod, garbage))
      throw type_error("hiding needs a body into " + to_string(Type::prod(cod, garbage)) + ", got " +
                       to_string(body.cod()));
    return HideTerm(std::move(body), std::move(cod), std::move(garbage));
  }

  const Type& dom() const { return body_.dom(); }
  const Type& cod() const { return cod_; }
  const Type& garbage() const { return garbage_; }
  const AllocTerm& body() const { return body_; }

  const std::vector<std::size_t>& table() const { return table_; }

  friend bool operator==(const HideTerm& a, const HideTerm& b) {
    return a.dom() == b.dom() && a.cod_ == b.cod_ && a.table_ == b.table_;
  }

 private:
  HideTerm(AllocTerm body, Type cod, Type garbage)
      : body_(std::move(body)), cod_(std::move(cod)), garbage_(std::move(garbage)) {
    auto g = size(garbage_);
    // An empty garbage type forces an empty domain, so g is only read when nonzero.
    for (auto y : body_.injection()) table_.push_back(static_cast<std::size_t>(y / g));
  }

  AllocTerm body_;
  Type cod_;
  Type garbage_;
  std::vector<std::size_t> table_;
};

/// The function a hiding term computes.
inline FinFun denote_hide(const HideTerm& t) { return FinFun(t.table(), static_cast<std::size_t>(size(t.cod()))); }

/// arr for the hiding layer: adjoin the trivial garbage 1.
inline HideTerm hide_arr(const AllocTerm& t) {
  Type cod = t.cod();
  AllocTerm body = alloc_seq(t, alloc_arr(detail::uniti_times_r(), cod, Type::prod(cod, Type::one())));
  return HideTerm::lift(std::move(body), std::move(cod), Type::one());
}

inline HideTerm hide_id(const Type& b) { return hide_arr(alloc_id(b)); }

/// t >>> s, collecting garbage as g2 * g1.
inline HideTerm hide_seq(const HideTerm& t, const HideTerm& s) {
  if (t.cod() != s.dom())
    throw type_error("cannot compose " + to_string(t.cod()) + " with an arrow from " + to_string(s.dom()));
  const Type& g1 = t.garbage();
  const Type& g2 = s.garbage();
  const Type& b3 = s.cod();
  // (b3 * g2) * g1 <-> b3 * (g2 * g1)
  AllocTerm regroup = alloc_arr(Comb::prim(Prim::assocr_times), Type::prod(Type::prod(b3, g2), g1),
                                Type::prod(b3, Type::prod(g2, g1)));
  AllocTerm body = alloc_seq(alloc_seq(t.body(), alloc_par(s.body(), alloc_id(g1))), regroup);
  return HideTerm::lift(std::move(body), b3, Type::prod(g2, g1));
}

/// t *** s, collecting garbage as g1 * g2.
inline HideTerm hide_par(const HideTerm& t, const HideTerm& s) {
  const Type& b2 = t.cod();
  const Type& g1 = t.garbage();
  const Type& b4 = s.cod();
  const Type& g2 = s.garbage();
  // (b2 * g1) * (b4 * g2) <-> (b2 * b4) * (g1 * g2)
  Comb middle = Comb::prim(Prim::assocl_times) >>
                (Comb::prod(Comb::prim(Prim::swap_times), Comb::id()) >> Comb::prim(Prim::assocr_times));
  Comb shuffle = Comb::prim(Prim::assocr_times) >>
                 (Comb::prod(Comb::id(), middle) >> Comb::prim(Prim::assocl_times));
  AllocTerm regroup = alloc_arr(shuffle, Type::prod(Type::prod(b2, g1), Type::prod(b4, g2)),
                                Type::prod(Type::prod(b2, b4), Type::prod(g1, g2)));
  AllocTerm body = alloc_seq(alloc_par(t.body(), s.body()), regroup);
  return HideTerm::lift(std::move(body), Type::prod(b2, b4), Type::prod(g1, g2));
}

/// discard : b ~> 1, hiding all of b.
inline HideTerm discard(const Type& b) {
  return HideTerm::lift(alloc_arr(Comb::prim(Prim::uniti_times_l), b, Type::prod(Type::one(), b)), Type::one(), b);
}

/// fst : b1 * b2 ~> b1 = (id *** discard) >>> unite*r.
inline HideTerm fst(const Type& b1, const Type& b2) {
  HideTerm drop = hide_par(hide_id(b1), discard(b2));
  return hide_seq(drop, hide_arr(alloc_arr(detail::unite_times_r(), Type::prod(b1, Type::one()), b1)));
}

/// snd : b1 * b2 ~> b2 = (discard *** id) >>> unite*l.
inline HideTerm snd(const Type& b1, const Type& b2) {
  HideTerm drop = hide_par(discard(b1), hide_id(b2));
  return hide_seq(drop, hide_arr(alloc_arr(Comb::prim(Prim::unite_times_l), Type::prod(Type::one(), b2), b2)));
}

/// measure = clone >>> fst.  Classically the identity function; its quantum
/// reading is computational-basis measurement.
inline HideTerm measure(const Type& b) { return hide_seq(hide_arr(clone(b)), fst(b, b)); }

/// A function A → B factored as A → A + H ≅ B × G → B.
struct Factorization {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::size_t heap = 0;
  std::size_t garbage = 0;
  /// Bijection from [0, dom + heap) to pair indices [0, cod * garbage).
  Permutation bij;
};

/// Split-monic factorization: the garbage is a copy of the input, a is sent
/// to the pair (f(a), a), and the heap fills the remaining pairs in order.
inline Factorization factorize(const FinFun& f) {
  std::size_t a = f.dom_size();
  std::size_t b = f.cod_size();
  if (b == 0 && a > 0) throw size_error("there is no function from a nonempty set into the empty set");
  Factorization out;
  out.dom = a;
  out.cod = b;
  out.garbage = a;
  out.heap = a * b - a;
  std::vector<std::size_t> image(a * b);
  std::vector<bool> used(a * b, false);
  for (std::size_t k = 0; k < a; ++k) {
    image[k] = f(k) * a + k;
    used[image[k]] = true;
  }
  std::size_t next = 0;
  for (std::size_t h = 0; h < out.heap; ++h) {
    while (used[next]) ++next;
    image[a + h] = next++;
  }
  out.bij = Permutation(std::move(image));
  return out;
}

/// π ∘ bij ∘ i.
inline FinFun recompose(const Factorization& fz) {
  std::vector<std::size_t> t(fz.dom);
  for (std::size_t k = 0; k < fz.dom; ++k) t[k] = fz.bij[k] / fz.garbage;
  return FinFun(std::move(t), fz.cod);
}

/// Realizes f : |A| → |B| as a hiding term A ~> B whose body is a synthesised
/// bijection A + N(heap) <-> B * N(garbage).
inline HideTerm realize(const FinFun& f, const Type& a, const Type& b) {
  if (size(a) != f.dom_size() || size(b) != f.cod_size()) throw size_error("function does not fit the given types");
  Factorization fz = factorize(f);
  Type heap = canonical_type(fz.heap);
  Type garbage = canonical_type(fz.garbage);
  Type dom = Type::sum(a, heap);
  Type cod = Type::prod(b, garbage);
  AllocTerm body = AllocTerm::lift(synth_iso(fz.bij, dom, cod), a, heap, cod);
  return HideTerm::lift(std::move(body), b, garbage);
}

}  // namespace pi
