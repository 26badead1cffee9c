#pragma once

// Finite semantic models: bijections, partial injections and total functions
// on {0, ..., n-1}.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pi/errors.hpp"

namespace pi {

/// A bijection on [0, n), stored as its image table.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (auto k : image_) {
      if (k >= image_.size() || seen[k]) throw value_error("image table is not a permutation");
      seen[k] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return Permutation(std::move(v), unchecked{});
  }

  std::size_t size() const { return image_.size(); }
  std::size_t operator[](std::size_t k) const { return image_[k]; }
  const std::vector<std::size_t>& image() const { return image_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

  /// g ∘ f: apply f, then g.
  friend Permutation compose(const Permutation& g, const Permutation& f) {
    if (g.size() != f.size()) throw size_error("composing permutations of different sizes");
    std::vector<std::size_t> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g[f[i]];
    return Permutation(std::move(v), unchecked{});
  }

  friend Permutation inverse(const Permutation& p) {
    std::vector<std::size_t> v(p.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[p[i]] = i;
    return Permutation(std::move(v), unchecked{});
  }

  /// p ⊕ q: p on the first p.size() points, q shifted after it.
  friend Permutation direct_sum(const Permutation& p, const Permutation& q) {
    std::vector<std::size_t> v = p.image_;
    for (auto k : q.image_) v.push_back(p.size() + k);
    return Permutation(std::move(v), unchecked{});
  }

  /// p ⊗ q on lexicographically ordered pairs: (i, j) ↦ (p i, q j).
  friend Permutation tensor(const Permutation& p, const Permutation& q) {
    std::vector<std::size_t> v(p.size() * q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) v[i * q.size() + j] = p[i] * q.size() + q[j];
    return Permutation(std::move(v), unchecked{});
  }

 private:
  struct unchecked {};
  Permutation(std::vector<std::size_t> image, unchecked) : image_(std::move(image)) {}

  std::vector<std::size_t> image_;
};

inline std::string to_string(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

/// Partial injection [0, m) ⇀ [0, n).
class PartialInjection {
 public:
  using Map = std::vector<std::optional<std::size_t>>;

  PartialInjection() = default;

  PartialInjection(Map map, std::size_t cod_size) : map_(std::move(map)), cod_(cod_size) {
    std::vector<bool> hit(cod_, false);
    for (const auto& y : map_) {
      if (!y) continue;
      if (*y >= cod_) throw value_error("partial injection maps outside its codomain");
      if (hit[*y]) throw value_error("partial map is not injective");
      hit[*y] = true;
    }
  }

  static PartialInjection identity(std::size_t n) {
    Map m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return {std::move(m), n, unchecked{}};
  }

  static PartialInjection empty(std::size_t m, std::size_t n) { return {Map(m), n, unchecked{}}; }

  std::size_t dom_size() const { return map_.size(); }
  std::size_t cod_size() const { return cod_; }
  const std::optional<std::size_t>& operator[](std::size_t k) const { return map_[k]; }
  const Map& map() const { return map_; }

  friend bool operator==(const PartialInjection&, const PartialInjection&) = default;

  /// g ∘ f.
  friend PartialInjection compose(const PartialInjection& g, const PartialInjection& f) {
    if (f.cod_size() != g.dom_size()) throw size_error("composing partial injections with mismatched sizes");
    Map m(f.dom_size());
    for (std::size_t i = 0; i < m.size(); ++i)
      if (f[i]) m[i] = g[*f[i]];
    return {std::move(m), g.cod_size(), unchecked{}};
  }

  /// Relational converse.
  friend PartialInjection dagger(const PartialInjection& f) {
    Map m(f.cod_size());
    for (std::size_t i = 0; i < f.dom_size(); ++i)
      if (f[i]) m[*f[i]] = i;
    return {std::move(m), f.dom_size(), unchecked{}};
  }

  friend PartialInjection oplus(const PartialInjection& f, const PartialInjection& g) {
    Map m = f.map_;
    for (const auto& y : g.map_) m.push_back(y ? std::optional<std::size_t>(f.cod_size() + *y) : std::nullopt);
    return {std::move(m), f.cod_size() + g.cod_size(), unchecked{}};
  }

  friend PartialInjection otimes(const PartialInjection& f, const PartialInjection& g) {
    Map m(f.dom_size() * g.dom_size());
    for (std::size_t i = 0; i < f.dom_size(); ++i)
      for (std::size_t j = 0; j < g.dom_size(); ++j)
        if (f[i] && g[j]) m[i * g.dom_size() + j] = *f[i] * g.cod_size() + *g[j];
    return {std::move(m), f.cod_size() * g.cod_size(), unchecked{}};
  }

 private:
  struct unchecked {};
  PartialInjection(Map map, std::size_t cod_size, unchecked) : map_(std::move(map)), cod_(cod_size) {}

  Map map_;
  std::size_t cod_ = 0;
};

/// Total function [0, dom) → [0, cod).
class FinFun {
 public:
  FinFun() = default;

  FinFun(std::vector<std::size_t> table, std::size_t cod_size) : table_(std::move(table)), cod_(cod_size) {
    for (auto y : table_)
      if (y >= cod_) throw value_error("function maps outside its codomain");
  }

  std::size_t dom_size() const { return table_.size(); }
  std::size_t cod_size() const { return cod_; }
  std::size_t operator()(std::size_t k) const { return table_[k]; }
  const std::vector<std::size_t>& table() const { return table_; }

  friend bool operator==(const FinFun&, const FinFun&) = default;

  friend FinFun compose(const FinFun& g, const FinFun& f) {
    if (f.cod_size() != g.dom_size()) throw size_error("composing functions with mismatched sizes");
    std::vector<std::size_t> t(f.dom_size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(f(i));
    return FinFun(std::move(t), g.cod_size());
  }

 private:
  std::vector<std::size_t> table_;
  std::size_t cod_ = 0;
};

}  // namespace pi
