#pragma once

// Shared test helpers: random ground types and well-typed random terms, and
// small oracles that do not go through the library's own enumeration code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "pi/pi.hpp"

namespace pi::testing {

using Rng = std::mt19937_64;

inline std::size_t type_depth(const Type& b) {
  if (b.is_sum() || b.is_prod()) return 1 + std::max(type_depth(b.left()), type_depth(b.right()));
  return 0;
}

inline std::size_t comb_depth(const Comb& c) {
  switch (c.kind()) {
    case Comb::Kind::prim:
      return 0;
    case Comb::Kind::seq:
    case Comb::Kind::sum:
    case Comb::Kind::prod:
      return 1 + std::max(comb_depth(c.first()), comb_depth(c.second()));
    default:
      return 1 + comb_depth(c.first());
  }
}

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Random ground type of size ≤ max_size and depth ≤ max_depth.  Leaves are
/// mostly 1, with an occasional 0.
inline Type random_type(Rng& rng, std::uint64_t max_size, std::size_t max_depth) {
  while (true) {
    std::function<Type(std::size_t)> go = [&](std::size_t d) -> Type {
      if (d == 0 || coin(rng, 0.3)) return coin(rng, 0.1) ? Type::zero() : Type::one();
      Type l = go(d - 1);
      Type r = go(d - 1);
      return coin(rng) ? Type::sum(l, r) : Type::prod(l, r);
    };
    Type t = go(std::min<std::size_t>(max_depth, 4));
    if (size(t) <= max_size) return t;
  }
}

/// Random ground type with exactly n elements, built by splitting n into a
/// sum or (when possible) a product.
inline Type random_type_of_size(Rng& rng, std::uint64_t n, std::size_t depth = 0) {
  if (n == 0) return coin(rng, 0.7) || depth > 3 ? Type::zero() : Type::prod(random_type_of_size(rng, 1 + pick(rng, 2), depth + 1), Type::zero());
  if (n == 1) return coin(rng, 0.8) || depth > 3 ? Type::one() : Type::prod(Type::one(), Type::one());
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 2; d < n; ++d)
    if (n % d == 0) divisors.push_back(d);
  if (!divisors.empty() && coin(rng, 0.4)) {
    auto d = divisors[pick(rng, divisors.size())];
    return Type::prod(random_type_of_size(rng, d, depth + 1), random_type_of_size(rng, n / d, depth + 1));
  }
  auto k = 1 + pick(rng, n - 1);
  return Type::sum(random_type_of_size(rng, k, depth + 1), random_type_of_size(rng, n - k, depth + 1));
}

/// A term together with the ground type it is used at.
struct Typed {
  Comb term;
  Type dom;
  Type cod;
};

class TermGen {
 public:
  TermGen(Rng& rng, std::size_t max_depth = 8, std::size_t max_type_depth = 8)
      : rng_(rng), max_depth_(max_depth), max_type_depth_(max_type_depth) {}

  /// A random term with domain b.  The codomain is whatever it produces.
  Typed from(const Type& b) { return gen(b, max_depth_); }

 private:
  using P = Prim;

  Typed prim(P p, const Type& dom, const Type& cod) { return {Comb::prim(p), dom, cod}; }

  std::vector<Typed> primitives(const Type& b) {
    std::vector<Typed> out;
    out.push_back(prim(P::id, b, b));
    bool room = type_depth(b) < max_type_depth_;
    if (room) {
      out.push_back(prim(P::uniti_plus_l, b, Type::sum(Type::zero(), b)));
      out.push_back(prim(P::uniti_times_l, b, Type::prod(Type::one(), b)));
    }
    if (b.is_sum()) {
      const Type& l = b.left();
      const Type& r = b.right();
      out.push_back(prim(P::swap_plus, b, Type::sum(r, l)));
      if (l.is_sum()) out.push_back(prim(P::assocr_plus, b, Type::sum(l.left(), Type::sum(l.right(), r))));
      if (r.is_sum()) out.push_back(prim(P::assocl_plus, b, Type::sum(Type::sum(l, r.left()), r.right())));
      if (l.is_zero()) out.push_back(prim(P::unite_plus_l, b, r));
      if (l.is_prod() && r.is_prod() && l.right() == r.right())
        out.push_back(prim(P::factor, b, Type::prod(Type::sum(l.left(), r.left()), l.right())));
    }
    if (b.is_prod()) {
      const Type& l = b.left();
      const Type& r = b.right();
      out.push_back(prim(P::swap_times, b, Type::prod(r, l)));
      if (l.is_prod()) out.push_back(prim(P::assocr_times, b, Type::prod(l.left(), Type::prod(l.right(), r))));
      if (r.is_prod()) out.push_back(prim(P::assocl_times, b, Type::prod(Type::prod(l, r.left()), r.right())));
      if (l.is_one()) out.push_back(prim(P::unite_times_l, b, r));
      if (l.is_sum())
        out.push_back(prim(P::dist, b, Type::sum(Type::prod(l.left(), r), Type::prod(l.right(), r))));
      if (r.is_zero()) out.push_back(prim(P::absorbl, b, Type::zero()));
    }
    if (b.is_zero()) {
      Type a = random_type(rng_, 4, 2);
      Type cod = Type::prod(a, Type::zero());
      out.push_back({Comb::ascribe(Comb::prim(P::factorzr), b, cod), b, cod});
    }
    return out;
  }

  Typed gen(const Type& b, std::size_t depth) {
    if (depth == 0) {
      auto ps = primitives(b);
      return ps[pick(rng_, ps.size())];
    }
    switch (pick(rng_, 6)) {
      case 0: {
        auto ps = primitives(b);
        return ps[pick(rng_, ps.size())];
      }
      case 1:
      case 2: {
        Typed x = gen(b, depth - 1);
        Typed y = gen(x.cod, depth - 1);
        return {Comb::seq(x.term, y.term), b, y.cod};
      }
      case 3:
        if (b.is_sum()) {
          Typed x = gen(b.left(), depth - 1);
          Typed y = gen(b.right(), depth - 1);
          return {Comb::sum(x.term, y.term), b, Type::sum(x.cod, y.cod)};
        }
        if (b.is_prod()) {
          Typed x = gen(b.left(), depth - 1);
          Typed y = gen(b.right(), depth - 1);
          return {Comb::prod(x.term, y.term), b, Type::prod(x.cod, y.cod)};
        }
        return gen(b, depth - 1);
      case 4: {
        // inv of the inverse of a forward term; pinned so that any
        // factorzr introduced by inversion stays unambiguous.
        Typed x = gen(b, depth - 1);
        return {Comb::ascribe(Comb::inv(invert(x.term)), b, x.cod), b, x.cod};
      }
      default: {
        Typed x = gen(b, depth - 1);
        Typed y = gen(x.cod, depth - 1);
        return {Comb::seq(x.term, y.term), b, y.cod};
      }
    }
  }

  Rng& rng_;
  std::size_t max_depth_;
  std::size_t max_type_depth_;
};

/// Every value of b, listed in the left-biased order by direct recursion
/// (independent of idx / value_of).
inline std::vector<Value> all_values(const Type& b) {
  switch (b.kind()) {
    case Type::Kind::zero:
      return {};
    case Type::Kind::one:
      return {Value::unit()};
    case Type::Kind::sum: {
      std::vector<Value> out;
      for (const auto& v : all_values(b.left())) out.push_back(Value::inl(v));
      for (const auto& v : all_values(b.right())) out.push_back(Value::inr(v));
      return out;
    }
    case Type::Kind::prod: {
      std::vector<Value> out;
      auto r = all_values(b.right());
      for (const auto& x : all_values(b.left()))
        for (const auto& y : r) out.push_back(Value::pair(x, y));
      return out;
    }
    default:
      return {};
  }
}

/// Denotation computed by brute force: evaluate on the listed values and
/// find each result by search.
inline std::vector<std::size_t> brute_denote(const Comb& c, const Type& dom, const Type& cod) {
  auto in = all_values(dom);
  auto out = all_values(cod);
  std::vector<std::size_t> image;
  for (const auto& v : in) {
    Value w = eval(c, v);
    auto it = std::find(out.begin(), out.end(), w);
    image.push_back(static_cast<std::size_t>(it - out.begin()));
  }
  return image;
}

/// A random permutation of n points.
inline Permutation random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

/// The fixed random corpus shared by the property tests.
inline std::vector<Typed> corpus(std::size_t n, std::uint64_t seed, std::uint64_t max_size = 64) {
  Rng rng(seed);
  TermGen g(rng, 7, 10);
  std::vector<Typed> out;
  while (out.size() < n) {
    std::uint64_t n = coin(rng) ? pick(rng, max_size + 1) : pick(rng, 9);
    Type b = random_type_of_size(rng, n);
    if (type_depth(b) > 8) continue;
    Typed t = g.from(b);
    if (comb_depth(t.term) > 8) continue;
    out.push_back(std::move(t));
  }
  return out;
}

/// n qubits as 1+1 nested to the right: b * (b * (... * b)).
inline Type qubits(std::size_t n) {
  Type bit = Type::sum(Type::one(), Type::one());
  Type t = bit;
  for (std::size_t i = 1; i < n; ++i) t = Type::prod(bit, t);
  return t;
}

/// A random circuit on n qubits, together with its unitary built from
/// textbook Kronecker products rather than the term semantics.
struct Circuit {
  Comb term;
  Type type;
  quantum::Matrix oracle;
};

inline Circuit random_circuit(Rng& rng, std::size_t n, std::size_t gates) {
  using quantum::Matrix;
  const Prim ones[] = {Prim::hadamard, Prim::phase_s, Prim::phase_t};
  auto identity = [](std::size_t k) -> Matrix {
    auto d = static_cast<Eigen::Index>(std::size_t{1} << k);
    return Matrix::Identity(d, d);
  };
  // Gate g on qubit q of an m-qubit register.
  std::function<std::pair<Comb, Matrix>(Comb, Matrix, std::size_t, std::size_t)> on =
      [&](Comb g, Matrix gm, std::size_t q, std::size_t m) -> std::pair<Comb, Matrix> {
    if (m == 1) return {g, gm};
    if (q == 0) return {Comb::prod(g, Comb::id()), quantum::kron(gm, identity(m - 1))};
    auto [c, cm] = on(g, gm, q - 1, m - 1);
    return {Comb::prod(Comb::id(), c), quantum::kron(identity(1), cm)};
  };
  Type t = qubits(n);
  Comb term = Comb::id();
  Matrix u = identity(n);
  for (std::size_t i = 0; i < gates; ++i) {
    Comb c;
    Matrix m;
    switch (n > 1 ? pick(rng, 4) : pick(rng, 2)) {
      case 0: {
        Prim p = ones[pick(rng, 3)];
        Comb g = Comb::prim(p);
        Matrix gm = quantum::gate(p);
        if (coin(rng, 0.3)) {
          g = Comb::inv(g);
          gm = gm.adjoint().eval();
        }
        std::tie(c, m) = on(g, gm, pick(rng, n), n);
        break;
      }
      case 1: {
        Comb x = Comb::prim(Prim::swap_plus);
        Matrix xm(2, 2);
        xm << 0.0, 1.0, 1.0, 0.0;
        std::tie(c, m) = on(x, xm, pick(rng, n), n);
        break;
      }
      case 2: {
        // Controlled gate on the rest, controlled by the first qubit.
        Type rest = qubits(n - 1);
        Circuit inner = random_circuit(rng, n - 1, 1 + pick(rng, 2));
        c = Comb::seq(Comb::prim(Prim::dist),
                      Comb::seq(Comb::sum(Comb::id(), Comb::prod(Comb::id(), inner.term)), Comb::prim(Prim::factor)));
        c = Comb::ascribe(c, t, t);
        Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
        p0(0, 0) = 1.0;
        p1(1, 1) = 1.0;
        m = quantum::kron(p0, identity(n - 1)) + quantum::kron(p1, inner.oracle);
        break;
      }
      default: {
        // Swap the first two qubits.
        Comb sw = n == 2 ? Comb::prim(Prim::swap_times)
                         : Comb::seq(Comb::prim(Prim::assocl_times),
                                     Comb::seq(Comb::prod(Comb::prim(Prim::swap_times), Comb::id()),
                                               Comb::prim(Prim::assocr_times)));
        c = Comb::ascribe(sw, t, t);
        Matrix sm = Matrix::Zero(4, 4);
        sm(0, 0) = sm(1, 2) = sm(2, 1) = sm(3, 3) = 1.0;
        m = quantum::kron(sm, identity(n - 2));
        break;
      }
    }
    term = Comb::seq(term, c);
    u = (m * u).eval();
  }
  return {term, t, u};
}

/// A Haar-ish random unitary from the QR factor of a Gaussian matrix.
inline quantum::Matrix random_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  quantum::Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = quantum::Complex(g(rng), g(rng));
  return a.householderQr().householderQ() * quantum::Matrix::Identity(n, n);
}

/// A random mixed state of dimension n.
inline quantum::Matrix random_density(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  quantum::Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = quantum::Complex(g(rng), g(rng));
  quantum::Matrix r = a * a.adjoint();
  return r / r.trace();
}

}  // namespace pi::testing
