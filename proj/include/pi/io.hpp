#pragma once

// JSON formats used by the command-line tool.
//
// Machine:
//   {"tapes": 1, "states": [...], "start": "q0", "halt": "halt",
//    "alphabet": ["_", "0", "1"], "blank": "_",
//    "rules": [{"from": "q0", "read": ["0"], "to": "q1",
//               "write": ["1"], "move": ["R"]}, ...]}
//
// Matrix: row-major array of rows, each entry a [re, im] pair.  A plain
// number is accepted for a real entry.  Vectors are flat arrays of entries.
//
// Layer term (for arrow-equiv), evaluated to an allocation or hiding term:
//   {"op": "arr", "comb": "swap+", "dom": "1 + 1", "cod": "1 + 1"}
//   {"op": "lift", "comb": "...", "dom": "...", "hidden": "...", "cod": "..."}
//   {"op": "id" | "alloc" | "clone" | "discard" | "measure", "type": "..."}
//   {"op": "inl" | "inr" | "fst" | "snd", "left": "...", "right": "..."}
//   {"op": "seq" | "par", "args": [term, term, ...]}
//   {"op": "hide", "of": term}
// seq and par promote allocation terms to the hiding layer when mixed.

#include <json.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pi/arrows.hpp"
#include "pi/errors.hpp"
#include "pi/finite.hpp"
#include "pi/quantum.hpp"
#include "pi/syntax.hpp"
#include "pi/turing.hpp"

namespace pi::io {

using json = nlohmann::json;

// ---- machines -------------------------------------------------------------

inline tm::Machine machine_from_json(const json& j) {
  try {
    tm::Machine m;
    m.tapes = j.value("tapes", std::size_t{1});
    m.states = j.at("states").get<std::vector<std::string>>();
    m.start = j.at("start").get<std::string>();
    m.halt = j.at("halt").get<std::string>();
    m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    m.blank = j.value("blank", std::string("_"));
    for (const auto& r : j.at("rules")) {
      tm::Rule rule;
      rule.from = r.at("from").get<std::string>();
      rule.to = r.at("to").get<std::string>();
      rule.read = r.at("read").get<std::vector<std::string>>();
      rule.write = r.at("write").get<std::vector<std::string>>();
      for (const auto& mv : r.at("move")) rule.move.push_back(tm::parse_move(mv.get<std::string>()));
      m.rules.push_back(std::move(rule));
    }
    tm::validate(m);
    return m;
  } catch (const json::exception& e) {
    throw value_error(std::string("malformed machine description: ") + e.what());
  }
}

inline json machine_to_json(const tm::Machine& m) {
  json rules = json::array();
  for (const auto& r : m.rules) {
    json mv = json::array();
    for (auto x : r.move) mv.push_back(std::string(1, tm::move_char(x)));
    rules.push_back({{"from", r.from}, {"read", r.read}, {"to", r.to}, {"write", r.write}, {"move", mv}});
  }
  return {{"tapes", m.tapes}, {"states", m.states}, {"start", m.start}, {"halt", m.halt},
          {"alphabet", m.alphabet}, {"blank", m.blank}, {"rules", rules}};
}

inline json report_to_json(const tm::Report& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({x.first, x.second});
  return {{"deterministic", r.deterministic}, {"violations", v}};
}

// ---- matrices -------------------------------------------------------------

inline quantum::Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw value_error("expected a number or a [re, im] pair, got " + j.dump());
}

inline json complex_to_json(quantum::Complex z) { return json::array({z.real(), z.imag()}); }

inline quantum::Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw value_error("a matrix must be an array of rows");
  auto rows = static_cast<Eigen::Index>(j.size());
  auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  quantum::Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw value_error("matrix rows must all have the same length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

inline quantum::Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw value_error("a state vector must be an array of entries");
  quantum::Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

// Tiny values are printed as 0 so output does not depend on rounding noise.
inline double clean(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }

inline json matrix_to_json(const quantum::Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(json::array({clean(m(i, k).real()), clean(m(i, k).imag())}));
    out.push_back(row);
  }
  return out;
}

inline json vector_to_json(const quantum::Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(json::array({clean(v(i).real()), clean(v(i).imag())}));
  return out;
}

// ---- permutations and functions ------------------------------------------

/// "[0,2,1]" or "0,2,1" or "0 2 1".
inline Permutation permutation_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t += (c == '[' || c == ']' || c == ',') ? ' ' : c;
  std::istringstream in(t);
  std::vector<std::size_t> v;
  long x;
  while (in >> x) {
    if (x < 0) throw value_error("permutation entries must be nonnegative");
    v.push_back(static_cast<std::size_t>(x));
  }
  if (!in.eof()) throw value_error("malformed permutation `" + s + "`");
  return Permutation(std::move(v));
}

/// "0:0,1:0" with every input in [0, dom) listed once.
inline FinFun function_from_string(const std::string& s, std::size_t dom, std::size_t cod) {
  std::vector<std::optional<std::size_t>> t(dom);
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw value_error("expected `input:output`, got `" + item + "`");
    std::size_t a, b;
    try {
      a = std::stoul(item.substr(0, colon));
      b = std::stoul(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw value_error("expected `input:output`, got `" + item + "`");
    }
    if (a >= dom) throw value_error("input " + std::to_string(a) + " is outside the domain");
    if (t[a]) throw value_error("input " + std::to_string(a) + " is listed twice");
    t[a] = b;
  }
  std::vector<std::size_t> table;
  for (std::size_t k = 0; k < dom; ++k) {
    if (!t[k]) throw value_error("no output given for input " + std::to_string(k));
    table.push_back(*t[k]);
  }
  return FinFun(std::move(table), cod);
}

inline json factorization_to_json(const Factorization& f) {
  json inj = json::array();
  for (std::size_t k = 0; k < f.dom; ++k) inj.push_back(k);
  json proj = json::array();
  for (std::size_t k = 0; k < f.cod * f.garbage; ++k) proj.push_back(k / f.garbage);
  return {{"dom", f.dom},         {"cod", f.cod},          {"heap", f.heap},
          {"garbage", f.garbage}, {"bij", f.bij.image()},  {"inject", inj},
          {"project", proj},      {"recomposed", recompose(f).table()}};
}

// ---- layer terms ----------------------------------------------------------

using LayerTerm = std::variant<AllocTerm, HideTerm>;

inline HideTerm as_hide(const LayerTerm& t) {
  if (auto* h = std::get_if<HideTerm>(&t)) return *h;
  return hide_arr(std::get<AllocTerm>(t));
}

inline LayerTerm layer_from_json(const json& j) {
  try {
    std::string op = j.at("op").get<std::string>();
    auto type = [&](const char* key) { return parse_type(j.at(key).get<std::string>()); };
    if (op == "arr") return alloc_arr(parse_comb(j.at("comb").get<std::string>()), type("dom"), type("cod"));
    if (op == "lift")
      return AllocTerm::lift(parse_comb(j.at("comb").get<std::string>()), type("dom"), type("hidden"), type("cod"));
    if (op == "id") return alloc_id(type("type"));
    if (op == "alloc") return alloc(type("type"));
    if (op == "clone") return clone(type("type"));
    if (op == "inl") return alloc_inl(type("left"), type("right"));
    if (op == "inr") return alloc_inr(type("left"), type("right"));
    if (op == "discard") return discard(type("type"));
    if (op == "measure") return measure(type("type"));
    if (op == "fst") return fst(type("left"), type("right"));
    if (op == "snd") return snd(type("left"), type("right"));
    if (op == "hide") return as_hide(layer_from_json(j.at("of")));
    if (op == "seq" || op == "par") {
      const json& args = j.at("args");
      if (args.empty()) throw value_error("`" + op + "` needs at least one argument");
      LayerTerm acc = layer_from_json(args[0]);
      for (std::size_t i = 1; i < args.size(); ++i) {
        LayerTerm next = layer_from_json(args[i]);
        auto* a = std::get_if<AllocTerm>(&acc);
        auto* b = std::get_if<AllocTerm>(&next);
        if (a && b)
          acc = op == "seq" ? alloc_seq(*a, *b) : alloc_par(*a, *b);
        else
          acc = op == "seq" ? hide_seq(as_hide(acc), as_hide(next)) : hide_par(as_hide(acc), as_hide(next));
      }
      return acc;
    }
    throw value_error("unknown layer operation `" + op + "`");
  } catch (const json::exception& e) {
    throw value_error(std::string("malformed layer term: ") + e.what());
  }
}

/// Extensional comparison; an allocation term is compared with a hiding
/// term by promoting it.
inline bool layer_equal(const LayerTerm& a, const LayerTerm& b) {
  auto* x = std::get_if<AllocTerm>(&a);
  auto* y = std::get_if<AllocTerm>(&b);
  if (x && y) return *x == *y;
  return as_hide(a) == as_hide(b);
}

inline json layer_summary(const LayerTerm& t) {
  if (auto* a = std::get_if<AllocTerm>(&t))
    return {{"layer", "alloc"},
            {"dom", to_string(a->dom())},
            {"hidden", to_string(a->hidden())},
            {"cod", to_string(a->cod())},
            {"injection", a->injection()}};
  const auto& h = std::get<HideTerm>(t);
  return {{"layer", "hide"},
          {"dom", to_string(h.dom())},
          {"garbage", to_string(h.garbage())},
          {"cod", to_string(h.cod())},
          {"function", h.table()}};
}

}  // namespace pi::io
