#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pi/comb.hpp"
#include "pi/errors.hpp"
#include "pi/eval.hpp"
#include "pi/finite.hpp"
#include "pi/typecheck.hpp"
#include "pi/value.hpp"

namespace pi {

/// Permutation denoted by a checked classical term: index k of the domain
/// goes to the index of eval(c, value_of(dom, k)) in the codomain.
inline Permutation denote(const Derivation& d) {
  if (!is_classical(d.term)) throw eval_error("term uses quantum primitives; it has no permutation semantics");
  auto n = size(d.dom);
  std::vector<std::size_t> image(n);
  for (std::uint64_t k = 0; k < n; ++k) image[k] = idx(eval(d.term, value_of(d.dom, k)), d.cod);
  return Permutation(std::move(image));
}

inline Permutation denote(const Comb& c, const Type& dom, const Type& cod) { return denote(check(c, dom, cod)); }

/// Program equivalence, decided by comparing denotations.
inline bool equiv(const Comb& a, const Comb& b, const Type& dom, const Type& cod) {
  auto checked = [&](const Comb& c, const char* which) {
    try {
      return check(c, dom, cod);
    } catch (const type_error& e) {
      throw type_error(std::string("type mismatch between the two terms: ") + which + " term: " + e.what());
    }
  };
  return denote(checked(a, "first")) == denote(checked(b, "second"));
}

namespace detail {

inline Comb seq_all(const std::vector<Comb>& cs) {
  if (cs.empty()) return Comb::id();
  Comb acc = cs.back();
  for (std::size_t i = cs.size() - 1; i-- > 0;) acc = Comb::seq(cs[i], acc);
  return acc;
}

// N(m) + N(n) <-> N(m + n)
inline Comb append(std::uint64_t m) {
  if (m == 0) return Comb::prim(Prim::unite_plus_l);
  return Comb::prim(Prim::assocr_plus) >> Comb::sum(Comb::id(), append(m - 1));
}

// N(m) * N(n) <-> N(m * n)
inline Comb multiply(std::uint64_t m, std::uint64_t n) {
  if (m == 0) return Comb::prim(Prim::swap_times) >> Comb::prim(Prim::absorbl);
  return Comb::prim(Prim::dist) >>
         (Comb::sum(Comb::prim(Prim::unite_times_l), multiply(m - 1, n)) >> append(n));
}

// One round of disjoint adjacent swaps on N(n): position j is exchanged
// with j+1 for every j in js (sorted, at least two apart).
inline Comb swap_round(const std::vector<std::size_t>& js, std::size_t from = 0, std::size_t pos = 0) {
  if (from == js.size()) return Comb::id();
  if (js[from] == pos) {
    Comb swap = Comb::prim(Prim::assocl_plus) >>
                (Comb::sum(Comb::prim(Prim::swap_plus), Comb::id()) >> Comb::prim(Prim::assocr_plus));
    if (from + 1 == js.size()) return swap;
    return swap >> Comb::sum(Comb::id(), Comb::sum(Comb::id(), swap_round(js, from + 1, pos + 2)));
  }
  return Comb::sum(Comb::id(), swap_round(js, from, pos + 1));
}

// Odd-even transposition sort of p's image: each round lists the swapped
// positions, and applying the rounds in order composes to p.
inline std::vector<std::vector<std::size_t>> transposition_rounds(const Permutation& p) {
  std::vector<std::size_t> a = p.image();
  std::vector<std::vector<std::size_t>> rounds;
  std::size_t quiet = 0;
  for (std::size_t parity = 0; quiet < 2 && a.size() > 1; parity ^= 1) {
    std::vector<std::size_t> round;
    for (std::size_t j = parity; j + 1 < a.size(); j += 2)
      if (a[j] > a[j + 1]) {
        std::swap(a[j], a[j + 1]);
        round.push_back(j);
      }
    quiet = round.empty() ? quiet + 1 : 0;
    if (!round.empty()) rounds.push_back(std::move(round));
  }
  return rounds;
}

}  // namespace detail

/// Reshapes b into the canonical type N(|b|) = 1 + (1 + ... + 0) using only
/// primitive isomorphisms.  With the left-biased enumeration the result
/// denotes the identity permutation.
inline Comb canonical_iso(const Type& b) {
  switch (b.kind()) {
    case Type::Kind::zero:
      return Comb::id();
    case Type::Kind::one:
      return Comb::prim(Prim::uniti_plus_l) >> Comb::prim(Prim::swap_plus);
    case Type::Kind::sum:
      return Comb::sum(canonical_iso(b.left()), canonical_iso(b.right())) >> detail::append(size(b.left()));
    case Type::Kind::prod:
      return Comb::prod(canonical_iso(b.left()), canonical_iso(b.right())) >>
             detail::multiply(size(b.left()), size(b.right()));
    case Type::Kind::var:
      break;
  }
  throw type_error("canonical_iso needs a ground type");
}

/// Adjacent transpositions t_j1, ..., t_jm (each swapping j and j+1) whose
/// composite, applying t_j1 first, is p.
inline std::vector<std::size_t> adjacent_transpositions(const Permutation& p) {
  std::vector<std::size_t> out;
  for (const auto& round : detail::transposition_rounds(p)) out.insert(out.end(), round.begin(), round.end());
  return out;
}

/// A term dom <-> cod whose denotation is p: reshape to N(n), apply p as
/// rounds of disjoint adjacent swaps, then reshape into cod.
inline Comb synth_iso(const Permutation& p, const Type& dom, const Type& cod) {
  if (size(dom) != p.size() || size(cod) != p.size())
    throw size_error("permutation on " + std::to_string(p.size()) + " points does not fit " + to_string(dom) +
                     " <-> " + to_string(cod));
  std::vector<Comb> steps;
  steps.push_back(canonical_iso(dom));
  for (const auto& round : detail::transposition_rounds(p)) steps.push_back(detail::swap_round(round));
  steps.push_back(invert(canonical_iso(cod)));
  return detail::seq_all(steps);
}

inline Comb synth_perm(const Permutation& p, const Type& b) { return synth_iso(p, b, b); }

}  // namespace pi
