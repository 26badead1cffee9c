// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "pi/io.hpp"
#include "support.hpp"

using namespace pi;
using namespace pi::testing;
using quantum::Matrix;

namespace {

/// Collects the first few failure messages of a criterion.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what());
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failed_criteria = 0;

void report(int n, const std::string& title, const Tally& t, double secs, const std::string& detail,
            double limit = 0.0) {
  bool slow = limit > 0.0 && secs >= limit;
  bool ok = t.failures == 0 && !slow;
  if (!ok) ++failed_criteria;
  std::printf("[%s] %2d. %s: %zu checks, %zu failures; %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", n, title.c_str(),
              t.checks, t.failures, detail.c_str(), secs, slow ? ", over the time limit" : "");
  for (const auto& m : t.notes) std::printf("        %s\n", m.c_str());
  std::fflush(stdout);
}

Comb pinned(const Typed& t) { return Comb::ascribe(t.term, t.dom, t.cod); }

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// 1. reval(c, eval(c, v)) = v on every input of every corpus term.
void round_trip(const std::vector<Typed>& corpus_terms) {
  auto t0 = Clock::now();
  Tally t;
  std::size_t inputs = 0;
  for (const auto& c : corpus_terms) {
    for (const auto& v : all_values(c.dom)) {
      ++inputs;
      Value w = eval(c.term, v);
      t.expect(has_type(w, c.cod) && reval(c.term, w) == v,
               [&] { return to_string(c.term) + " fails on " + to_string(v); });
    }
  }
  report(1, "round-trip inversion", t, seconds_since(t0),
         std::to_string(corpus_terms.size()) + " terms, " + std::to_string(inputs) + " inputs", 60.0);
}

// 2. denote(c1 ; c2) = denote(c2) ∘ denote(c1) and denote(invert c) = denote(c)⁻¹.
void functoriality(const std::vector<Typed>& corpus_terms) {
  auto t0 = Clock::now();
  Tally t;
  Rng rng(2002);
  TermGen g(rng, 4);
  for (const auto& c : corpus_terms) {
    Typed d = g.from(c.cod);
    Permutation p1 = denote(c.term, c.dom, c.cod);
    Permutation p2 = denote(d.term, d.dom, d.cod);
    t.expect(denote(Comb::seq(pinned(c), pinned(d)), c.dom, d.cod) == compose(p2, p1),
             [&] { return "seq: " + to_string(c.term) + " then " + to_string(d.term); });
    t.expect(denote(invert(c.term), c.cod, c.dom) == inverse(p1), [&] { return "dagger: " + to_string(c.term); });
  }
  report(2, "functoriality and dagger", t, seconds_since(t0), std::to_string(corpus_terms.size()) + " terms");
}

// 3. Coherence: both pentagons, the hexagons, naturality of swapx and dist.
void coherence() {
  auto t0 = Clock::now();
  Tally t;
  Rng rng(3003);
  auto small = [&] { return random_type(rng, 4, 2); };
  auto same = [&](const char* law, const std::string& a, const std::string& b, const Type& dom, const Type& cod) {
    bool ok = false;
    try {
      ok = equiv(parse_comb(a), parse_comb(b), dom, cod);
    } catch (const error& e) {
      t.expect(false, [&] { return std::string(law) + ": " + e.what(); });
      return;
    }
    t.expect(ok, [&] { return std::string(law) + " at " + to_string(dom); });
  };
  auto S = [](const Type& a, const Type& b) { return Type::sum(a, b); };
  auto P = [](const Type& a, const Type& b) { return Type::prod(a, b); };
  for (int i = 0; i < 100; ++i) {
    Type a = small(), b = small(), c = small(), d = small();
    same("pentagon +", "assocr+ ; assocr+", "(assocr+ + id) ; assocr+ ; (id + assocr+)", S(S(S(a, b), c), d),
         S(a, S(b, S(c, d))));
    same("pentagon *", "assocrx ; assocrx", "(assocrx * id) ; assocrx ; (id * assocrx)", P(P(P(a, b), c), d),
         P(a, P(b, P(c, d))));
    same("hexagon +", "assocr+ ; swap+ ; assocr+", "(swap+ + id) ; assocr+ ; (id + swap+)", S(S(a, b), c),
         S(b, S(c, a)));
    same("hexagon +, inverse", "assocl+ ; swap+ ; assocl+", "(id + swap+) ; assocl+ ; (swap+ + id)", S(a, S(b, c)),
         S(S(c, a), b));
    same("hexagon *", "assocrx ; swapx ; assocrx", "(swapx * id) ; assocrx ; (id * swapx)", P(P(a, b), c),
         P(b, P(c, a)));
    same("hexagon *, inverse", "assoclx ; swapx ; assoclx", "(id * swapx) ; assoclx ; (swapx * id)", P(a, P(b, c)),
         P(P(c, a), b));

    // Naturality against random terms f : a -> a', g : b -> b', h : c -> c'.
    TermGen gen(rng, 3);
    Typed f = gen.from(a), g = gen.from(b), h = gen.from(c);
    Comb swap_lhs = Comb::seq(Comb::prod(pinned(f), pinned(g)), Comb::prim(Prim::swap_times));
    Comb swap_rhs = Comb::seq(Comb::prim(Prim::swap_times), Comb::prod(pinned(g), pinned(f)));
    t.expect(equiv(swap_lhs, swap_rhs, P(a, b), P(g.cod, f.cod)),
             [&] { return "swapx naturality: " + to_string(f.term) + ", " + to_string(g.term); });
    Comb dist_lhs = Comb::seq(Comb::prod(Comb::sum(pinned(f), pinned(g)), pinned(h)), Comb::prim(Prim::dist));
    Comb dist_rhs = Comb::seq(Comb::prim(Prim::dist), Comb::sum(Comb::prod(pinned(f), pinned(h)),
                                                                Comb::prod(pinned(g), pinned(h))));
    t.expect(equiv(dist_lhs, dist_rhs, P(S(a, b), c), S(P(f.cod, h.cod), P(g.cod, h.cod))),
             [&] { return "dist naturality: " + to_string(f.term) + ", " + to_string(g.term) + ", " + to_string(h.term); });
  }
  report(3, "coherence", t, seconds_since(t0), "100 instantiations of 8 laws");
}

// 4. denote(synth_perm p) = p for all of S_1..S_6, and equiv separates them.
void completeness() {
  auto t0 = Clock::now();
  Tally t;
  Rng rng(4004);
  std::size_t perms = 0, direct_pairs = 0, cached_pairs = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    Type b = canonical_type(n);
    auto ps = all_permutations(n);
    std::vector<Comb> cs;
    std::vector<Permutation> nf;
    for (const auto& p : ps) {
      ++perms;
      cs.push_back(synth_perm(p, b));
      nf.push_back(denote(cs.back(), b, b));
      t.expect(nf.back() == p, [&] { return "synth_perm " + to_string(p) + " denotes " + to_string(nf.back()); });
    }
    if (n <= 5) {
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) {
          ++direct_pairs;
          t.expect(equiv(cs[i], cs[j], b, b) == (i == j), [&] { return "equiv " + to_string(ps[i]) + " vs " + to_string(ps[j]); });
        }
    } else {
      // Every pair through the normal forms, and equiv itself on the
      // diagonal plus a random sample.
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) {
          ++cached_pairs;
          t.expect((nf[i] == nf[j]) == (i == j), [&] { return "normal forms " + to_string(ps[i]) + " vs " + to_string(ps[j]); });
        }
      for (std::size_t k = 0; k < cs.size() + 5000; ++k) {
        std::size_t i = k < cs.size() ? k : pick(rng, cs.size());
        std::size_t j = k < cs.size() ? k : pick(rng, cs.size());
        ++direct_pairs;
        t.expect(equiv(cs[i], cs[j], b, b) == (i == j), [&] { return "equiv " + to_string(ps[i]) + " vs " + to_string(ps[j]); });
      }
    }
  }
  report(4, "completeness round-trip", t, seconds_since(t0),
         std::to_string(perms) + " permutations, " + std::to_string(direct_pairs) + " equiv calls, " +
             std::to_string(cached_pairs) + " normal-form pairs",
         60.0);
}

// 5. Every function factors as injection, bijection, projection.
void fundamental_theorem() {
  auto t0 = Clock::now();
  Tally t;
  auto check_one = [&](const FinFun& f) {
    Factorization fz = factorize(f);
    std::size_t a = f.dom_size(), b = f.cod_size(), g = fz.garbage;
    bool ok = fz.dom == a && fz.cod == b && fz.bij.size() == a + fz.heap && a + fz.heap == b * g;
    // π(bij(i(k))) computed by hand: inject k into the first summand, then
    // project the pair index onto its first component.
    for (std::size_t k = 0; ok && k < a; ++k) ok = fz.bij[k] / g == f(k);
    t.expect(ok && recompose(fz) == f, [&] {
      std::ostringstream s;
      s << "factorization of";
      for (auto y : f.table()) s << ' ' << y;
      return s.str();
    });
  };
  std::size_t count = 0;
  for (std::size_t code = 0; code < 256; ++code) {
    std::vector<std::size_t> table(4);
    for (std::size_t k = 0; k < 4; ++k) table[k] = (code >> (2 * k)) & 3;
    check_one(FinFun(table, 4));
    ++count;
  }
  Rng rng(5005);
  for (int i = 0; i < 1000; ++i) {
    std::size_t a = pick(rng, 9);
    std::size_t b = a == 0 ? pick(rng, 9) : 1 + pick(rng, 8);
    std::vector<std::size_t> table(a);
    for (auto& y : table) y = pick(rng, b);
    check_one(FinFun(table, b));
    ++count;
  }
  // The hiding-layer realization computes the function on a sample.
  for (int i = 0; i < 50; ++i) {
    std::size_t a = 1 + pick(rng, 8), b = 1 + pick(rng, 8);
    std::vector<std::size_t> table(a);
    for (auto& y : table) y = pick(rng, b);
    FinFun f(table, b);
    t.expect(denote_hide(realize(f, random_type_of_size(rng, a), random_type_of_size(rng, b))) == f,
             [] { return std::string("realized term computes a different function"); });
  }
  report(5, "fundamental theorem", t, seconds_since(t0), std::to_string(count) + " functions, 50 realized");
}

// Random layer terms.  Codomains are capped so that composites stay small;
// a cap below the domain size is only met by shrinking terms.
class LayerGen {
 public:
  explicit LayerGen(Rng& rng) : rng_(rng) {}

  AllocTerm alloc_term(const Type& b, int depth, std::uint64_t cap = 64) {
    for (;;) {
      std::optional<AllocTerm> t;
      switch (pick(rng_, depth > 0 ? 6 : 4)) {
        case 0:
          t = arr(b);
          break;
        case 1:
          if (size(b) <= 8) t = clone(b);
          break;
        case 2:
          t = alloc_inl(b, random_type(rng_, 3, 2));
          break;
        case 3:
          t = alloc_inr(random_type(rng_, 3, 2), b);
          break;
        case 4: {
          AllocTerm f = alloc_term(b, depth - 1, cap);
          t = alloc_seq(f, alloc_term(f.cod(), depth - 1, cap));
          break;
        }
        default:
          if (b.is_prod()) t = alloc_par(alloc_term(b.left(), depth - 1, side(b.left())), alloc_term(b.right(), depth - 1, side(b.right())));
          break;
      }
      if (t && size(t->cod()) <= cap) return *t;
    }
  }

  HideTerm hide_term(const Type& b, int depth, std::uint64_t cap = 64) {
    for (;;) {
      std::optional<HideTerm> t;
      switch (pick(rng_, depth > 0 ? 7 : 5)) {
        case 0:
          t = hide_arr(alloc_term(b, depth, cap));
          break;
        case 1:
          t = discard(b);
          break;
        case 2:
          if (b.is_prod()) t = coin(rng_) ? fst(b.left(), b.right()) : snd(b.left(), b.right());
          break;
        case 3:
          if (size(b) <= 8) t = measure(b);
          break;
        case 4:
          t = hide_arr(arr(b));
          break;
        case 5: {
          HideTerm f = hide_term(b, depth - 1, cap);
          t = hide_seq(f, hide_term(f.cod(), depth - 1, cap));
          break;
        }
        default:
          if (b.is_prod()) t = hide_par(hide_term(b.left(), depth - 1, side(b.left())), hide_term(b.right(), depth - 1, side(b.right())));
          break;
      }
      if (t && size(t->cod()) <= cap) return *t;
    }
  }

  AllocTerm arr(const Type& b) {
    TermGen g(rng_, 3);
    Typed u = g.from(b);
    return alloc_arr(pinned(u), u.dom, u.cod);
  }

 private:
  // Factors of a product may grow to 8 points, or keep their size if larger.
  static std::uint64_t side(const Type& b) { return std::max<std::uint64_t>(8, size(b)); }

  Rng& rng_;
};

// 6. Arrow laws for both layers.
void arrow_laws() {
  auto t0 = Clock::now();
  Tally t;
  Rng rng(6006);
  LayerGen gen(rng);
  auto dom = [&](std::uint64_t max) { return random_type_of_size(rng, 1 + pick(rng, max)); };
  for (int i = 0; i < 200; ++i) {
    // Allocation layer.
    {
      Type a = dom(8);
      AllocTerm f = gen.alloc_term(a, 2, 16);
      AllocTerm unit_a = AllocTerm::lift(parse_comb("swap+ ; unite+l"), a, Type::zero(), a);
      AllocTerm unit_b = AllocTerm::lift(parse_comb("swap+ ; unite+l"), f.cod(), Type::zero(), f.cod());
      t.expect(alloc_seq(unit_a, f) == f && alloc_seq(f, unit_b) == f, [] { return std::string("alloc identity"); });
      AllocTerm g = gen.alloc_term(f.cod(), 1, 16);
      AllocTerm h = gen.alloc_term(g.cod(), 1, 16);
      t.expect(alloc_seq(alloc_seq(f, g), h) == alloc_seq(f, alloc_seq(g, h)), [] { return std::string("alloc associativity"); });

      TermGen tg(rng, 3);
      Typed u = tg.from(a);
      Typed v = tg.from(u.cod);
      t.expect(alloc_arr(Comb::seq(pinned(u), pinned(v)), a, v.cod) ==
                   alloc_seq(alloc_arr(pinned(u), a, u.cod), alloc_arr(pinned(v), u.cod, v.cod)),
               [] { return std::string("alloc arr preserves composition"); });

      Type a1 = dom(4), a2 = dom(4);
      Typed x = tg.from(a1), y = tg.from(a2);
      t.expect(alloc_arr(Comb::prod(pinned(x), pinned(y)), Type::prod(a1, a2), Type::prod(x.cod, y.cod)) ==
                   alloc_par(alloc_arr(pinned(x), a1, x.cod), alloc_arr(pinned(y), a2, y.cod)),
               [] { return std::string("alloc arr preserves products"); });

      AllocTerm f1 = gen.alloc_term(a1, 1, 8), g1 = gen.alloc_term(f1.cod(), 1, 8);
      AllocTerm f2 = gen.alloc_term(a2, 1, 8), g2 = gen.alloc_term(f2.cod(), 1, 8);
      t.expect(alloc_par(alloc_seq(f1, g1), alloc_seq(f2, g2)) == alloc_seq(alloc_par(f1, f2), alloc_par(g1, g2)),
               [] { return std::string("alloc exchange"); });
    }
    // Hiding layer.
    {
      Type a = dom(8);
      HideTerm f = gen.hide_term(a, 2, 16);
      t.expect(hide_seq(hide_id(a), f) == f && hide_seq(f, hide_id(f.cod())) == f, [] { return std::string("hide identity"); });
      HideTerm g = gen.hide_term(f.cod(), 1, 16);
      HideTerm h = gen.hide_term(g.cod(), 1, 16);
      t.expect(hide_seq(hide_seq(f, g), h) == hide_seq(f, hide_seq(g, h)), [] { return std::string("hide associativity"); });

      AllocTerm u = gen.alloc_term(a, 1, 16);
      AllocTerm v = gen.alloc_term(u.cod(), 1, 16);
      t.expect(hide_arr(alloc_seq(u, v)) == hide_seq(hide_arr(u), hide_arr(v)),
               [] { return std::string("hide arr preserves composition"); });

      Type a1 = dom(4), a2 = dom(4);
      AllocTerm x = gen.alloc_term(a1, 1, 8), y = gen.alloc_term(a2, 1, 8);
      t.expect(hide_arr(alloc_par(x, y)) == hide_par(hide_arr(x), hide_arr(y)),
               [] { return std::string("hide arr preserves products"); });

      HideTerm f1 = gen.hide_term(a1, 1, 8), g1 = gen.hide_term(f1.cod(), 1, 8);
      HideTerm f2 = gen.hide_term(a2, 1, 8), g2 = gen.hide_term(f2.cod(), 1, 8);
      t.expect(hide_par(hide_seq(f1, g1), hide_seq(f2, g2)) == hide_seq(hide_par(f1, f2), hide_par(g1, g2)),
               [] { return std::string("hide exchange"); });
    }
  }
  report(6, "arrow laws", t, seconds_since(t0), "200 rounds of 5 laws on each layer");
}

// 7. f ∘ f† ∘ f = f and f†† = f.
void pinj_dagger() {
  auto t0 = Clock::now();
  Tally t;
  Rng rng(7007);
  for (int i = 0; i < 1000; ++i) {
    std::size_t m = pick(rng, 9), n = pick(rng, 9);
    std::vector<std::size_t> targets(n);
    std::iota(targets.begin(), targets.end(), 0);
    std::shuffle(targets.begin(), targets.end(), rng);
    PartialInjection::Map map(m);
    std::size_t next = 0;
    for (auto& y : map)
      if (next < n && coin(rng, 0.7)) y = targets[next++];
    PartialInjection f(map, n);
    t.expect(compose(f, compose(dagger(f), f)) == f, [] { return std::string("f f† f != f"); });
    t.expect(dagger(dagger(f)) == f, [] { return std::string("f†† != f"); });
  }
  report(7, "partial injection dagger laws", t, seconds_since(t0), "1000 partial injections");
}

// 8. HH = I, TT = S, and classical terms are their permutation matrices.
void quantum_identities(const std::vector<Typed>& corpus_terms) {
  auto t0 = Clock::now();
  Tally t;
  Type bit = Type::sum(Type::one(), Type::one());
  double hh = quantum::max_abs_diff(quantum::denote_q(parse_comb("H ; H"), bit, bit), Matrix::Identity(2, 2));
  double tt = quantum::max_abs_diff(quantum::denote_q(parse_comb("T ; T"), bit, bit),
                                    quantum::denote_q(parse_comb("S"), bit, bit));
  t.expect(hh <= quantum::exact_tol, [&] { return "‖HH − I‖ = " + std::to_string(hh); });
  t.expect(tt <= quantum::exact_tol, [&] { return "‖TT − S‖ = " + std::to_string(tt); });
  for (const auto& c : corpus_terms) {
    Matrix m = quantum::denote_q(c.term, c.dom, c.cod);
    auto image = brute_denote(c.term, c.dom, c.cod);
    Matrix expected = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t k = 0; k < image.size(); ++k) expected(static_cast<Eigen::Index>(image[k]), static_cast<Eigen::Index>(k)) = 1.0;
    t.expect(quantum::max_abs_diff(m, expected) == 0.0,
             [&] { return "matrix of " + to_string(c.term); });
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "‖HH − I‖ = %.1e, ‖TT − S‖ = %.1e, %zu corpus matrices", hh, tt, corpus_terms.size());
  report(8, "quantum identities", t, seconds_since(t0), buf);
}

// 9. Born rule, idempotent measurement, and random pipelines are channels.
void born_rule() {
  auto t0 = Clock::now();
  Tally t;
  Type bit = Type::sum(Type::one(), Type::one());
  quantum::Channel m = quantum::measure_channel(bit);
  quantum::Vector plus = quantum::Vector::Constant(2, 1.0 / std::sqrt(2.0));
  Matrix out = m.apply(quantum::DensityMatrix::pure(plus).matrix());
  Matrix half = Matrix::Zero(2, 2);
  half(0, 0) = half(1, 1) = 0.5;
  double born = quantum::max_abs_diff(out, half);
  t.expect(born <= quantum::exact_tol, [&] { return "measure |+> off by " + std::to_string(born); });
  double idem = quantum::max_abs_diff(quantum::compose(m, m).choi(), m.choi());
  t.expect(idem <= quantum::structural_tol, [&] { return "measure is not idempotent: " + std::to_string(idem); });

  Rng rng(9009);
  double worst_tp = 0.0, worst_eig = 0.0;
  for (int i = 0; i < 100; ++i) {
    Eigen::Index d0 = 1 + static_cast<Eigen::Index>(pick(rng, 8));
    Eigen::Index d = d0;
    std::vector<quantum::Stage> p;
    for (int s = 0; s < 6; ++s) {
      switch (pick(rng, 3)) {
        case 0:
          p.push_back(quantum::Stage::evolve(random_unitary(rng, d)));
          break;
        case 1:
          if (d < 16) {
            auto e = 1 + static_cast<Eigen::Index>(pick(rng, static_cast<std::size_t>(16 - d)));
            p.push_back(quantum::Stage::prepare(e));
            d += e;
          }
          break;
        default: {
          std::vector<Eigen::Index> divisors;
          for (Eigen::Index g = 2; g <= d; ++g)
            if (d % g == 0) divisors.push_back(g);
          if (!divisors.empty()) {
            auto g = divisors[pick(rng, divisors.size())];
            p.push_back(quantum::Stage::discard(g));
            d /= g;
          }
        }
      }
    }
    quantum::Channel c = quantum::stinespring_normalize(p, d0);
    Matrix s = Matrix::Zero(d0, d0);
    for (const auto& k : c.kraus()) s += k.adjoint() * k;
    double tp = quantum::max_abs_diff(s, Matrix::Identity(d0, d0));
    double eig = c.choi_min_eigenvalue();
    worst_tp = std::max(worst_tp, tp);
    worst_eig = std::min(worst_eig, eig);
    t.expect(tp <= quantum::structural_tol, [&] { return "pipeline not trace preserving: " + std::to_string(tp); });
    t.expect(eig >= -quantum::structural_tol, [&] { return "Choi eigenvalue " + std::to_string(eig); });
    Matrix rho = random_density(rng, d0);
    t.expect(quantum::max_abs_diff(c.apply(rho), quantum::run_pipeline(p, rho)) <= quantum::structural_tol,
             [] { return std::string("normal form disagrees with the staged run"); });
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "Born error %.1e, idempotence %.1e, worst TP error %.1e, min Choi eigenvalue %.1e", born,
                idem, worst_tp, worst_eig);
  report(9, "measurement and Born rule", t, seconds_since(t0), buf);
}

tm::Machine load_machine(const std::string& name) {
  std::ifstream in(std::string(PI_SAMPLES_DIR) + "/machines/" + name + ".json");
  return io::machine_from_json(nlohmann::json::parse(in));
}

// 10. Bennett's construction leaves (input, blank, output).
void bennett_criterion() {
  auto t0 = Clock::now();
  Tally t;
  Rng rng(10010);
  auto word = [&](std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += coin(rng) ? '1' : '0';
    return s;
  };
  auto increment = [](const std::string& s) {
    std::string out = s;
    std::size_t i = out.size();
    while (i > 0 && out[i - 1] == '1') out[--i] = '0';
    if (i == 0) out.insert(out.begin(), '1');
    else out[i - 1] = '1';
    return out;
  };
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> cases;
  for (int i = 0; i < 12; ++i) {
    std::string w = word(1 + pick(rng, 10));
    cases["increment"].push_back({w, increment(w)});
    std::string r(w.rbegin(), w.rend());
    cases["reverse"].push_back({w, r});
    std::size_t a = pick(rng, 8), b = pick(rng, 8);
    cases["unary_add"].push_back({std::string(a, '1') + "+" + std::string(b, '1'), std::string(a + b, '1')});
  }
  std::size_t runs = 0;
  for (const auto& [name, io_pairs] : cases) {
    tm::Machine m = load_machine(name);
    for (const auto& [in, expected] : io_pairs) {
      ++runs;
      try {
        tm::BennettResult r = tm::run_bennett(m, tm::symbols_of(in), 100000);
        t.expect(tm::join(r.tape1) == in && r.tape2.empty() && tm::join(r.tape3) == expected, [&] {
          return name + " on " + in + ": (" + tm::join(r.tape1) + ", " + tm::join(r.tape2) + ", " + tm::join(r.tape3) + ")";
        });
      } catch (const error& e) {
        t.expect(false, [&] { return name + " on " + in + ": " + e.what(); });
      }
    }
    std::vector<std::pair<std::string, tm::Machine>> built = {{"landauer", tm::landauer_instrument(m)},
                                                              {"landauer+unwind", tm::landauer_instrument(m, true)},
                                                              {"bennett", tm::bennett(m)}};
    for (const auto& [kind, b] : built) {
      t.expect(tm::check_forward_deterministic(b).deterministic, [&] { return name + " " + kind + " not forward deterministic"; });
      t.expect(tm::check_backward_deterministic(b).deterministic, [&] { return name + " " + kind + " not backward deterministic"; });
    }
  }
  report(10, "Bennett construction", t, seconds_since(t0), std::to_string(runs) + " runs over 3 machines", 30.0);
}

}  // namespace

int main() {
  auto terms = corpus(500, 1001);
  round_trip(terms);
  functoriality(terms);
  coherence();
  completeness();
  fundamental_theorem();
  arrow_laws();
  pinj_dagger();
  quantum_identities(terms);
  born_rule();
  bennett_criterion();
  std::printf("%d of 10 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
