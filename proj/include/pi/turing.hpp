#pragma once

// Multi-tape Turing machines with quintuple rules, determinism checks,
// Landauer history instrumentation and Bennett's compute-copy-uncompute
// construction.
//
// Convention for machines fed to bennett(): the input is written from cell 0
// with every head at 0, and the machine halts with tape 1 holding a single
// contiguous block (the output) and the head on its leftmost cell, or on a
// blank when the output is empty.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pi/errors.hpp"

namespace pi::tm {

using Symbol = std::string;
using State = std::string;

enum class Move { left, right, stay };

inline char move_char(Move m) { return m == Move::left ? 'L' : m == Move::right ? 'R' : 'S'; }

inline Move parse_move(const std::string& s) {
  if (s == "L") return Move::left;
  if (s == "R") return Move::right;
  if (s == "S") return Move::stay;
  throw value_error("unknown head move `" + s + "`");
}

inline Move reverse(Move m) { return m == Move::left ? Move::right : m == Move::right ? Move::left : Move::stay; }

/// (from, read) -> (to, write, move), one symbol and move per tape.
struct Rule {
  State from;
  std::vector<Symbol> read;
  State to;
  std::vector<Symbol> write;
  std::vector<Move> move;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Machine {
  std::size_t tapes = 1;
  std::vector<State> states;
  State start;
  State halt;
  std::vector<Symbol> alphabet;  // includes the blank
  Symbol blank = "_";
  std::vector<Rule> rules;
};

/// Checks that rules only mention declared states and symbols and have one
/// entry per tape.
inline void validate(const Machine& m) {
  std::set<State> states(m.states.begin(), m.states.end());
  std::set<Symbol> symbols(m.alphabet.begin(), m.alphabet.end());
  if (!symbols.count(m.blank)) throw value_error("alphabet does not contain the blank `" + m.blank + "`");
  if (!states.count(m.start)) throw value_error("start state `" + m.start + "` is not declared");
  if (!states.count(m.halt)) throw value_error("halt state `" + m.halt + "` is not declared");
  for (std::size_t i = 0; i < m.rules.size(); ++i) {
    const Rule& r = m.rules[i];
    std::string where = "rule " + std::to_string(i);
    if (!states.count(r.from) || !states.count(r.to)) throw value_error(where + " uses an undeclared state");
    if (r.read.size() != m.tapes || r.write.size() != m.tapes || r.move.size() != m.tapes)
      throw value_error(where + " does not have one entry per tape");
    for (std::size_t t = 0; t < m.tapes; ++t)
      if (!symbols.count(r.read[t]) || !symbols.count(r.write[t])) throw value_error(where + " uses an undeclared symbol");
  }
}

struct Tape {
  std::map<long, Symbol> cells;  // blanks are not stored
  long head = 0;

  friend bool operator==(const Tape&, const Tape&) = default;
};

struct Config {
  State state;
  std::vector<Tape> tapes;

  friend bool operator==(const Config&, const Config&) = default;
};

inline Symbol read(const Tape& t, long pos, const Symbol& blank) {
  auto it = t.cells.find(pos);
  return it == t.cells.end() ? blank : it->second;
}

inline void write(Tape& t, long pos, const Symbol& s, const Symbol& blank) {
  if (s == blank)
    t.cells.erase(pos);
  else
    t.cells[pos] = s;
}

/// Tape holding the symbols of `input` from cell 0, head at 0.
inline Tape tape_of(const std::vector<Symbol>& input, const Symbol& blank) {
  Tape t;
  for (std::size_t i = 0; i < input.size(); ++i) write(t, static_cast<long>(i), input[i], blank);
  return t;
}

/// Non-blank content from the leftmost to the rightmost non-blank cell.
inline std::vector<Symbol> contents(const Tape& t, const Symbol& blank) {
  std::vector<Symbol> out;
  if (t.cells.empty()) return out;
  for (long p = t.cells.begin()->first; p <= t.cells.rbegin()->first; ++p) out.push_back(read(t, p, blank));
  return out;
}

/// Splits an input string into one-character symbols.
inline std::vector<Symbol> symbols_of(const std::string& s) {
  std::vector<Symbol> out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

inline std::string join(const std::vector<Symbol>& v) {
  std::string s;
  for (const auto& x : v) s += x;
  return s;
}

inline Config initial(const Machine& m, const std::vector<Symbol>& input) {
  Config c{m.start, std::vector<Tape>(m.tapes)};
  c.tapes[0] = tape_of(input, m.blank);
  return c;
}

enum class Outcome { halted, fuel_exhausted, stuck };

inline const char* to_string(Outcome o) {
  return o == Outcome::halted ? "halted" : o == Outcome::fuel_exhausted ? "fuel exhausted" : "stuck";
}

struct Run {
  Config config;
  Outcome outcome = Outcome::stuck;
  std::size_t steps = 0;
  std::vector<std::size_t> fired;  // rule indices in firing order
};

namespace detail {

inline std::map<State, std::vector<std::size_t>> rules_by_state(const Machine& m) {
  std::map<State, std::vector<std::size_t>> by;
  for (std::size_t i = 0; i < m.rules.size(); ++i) by[m.rules[i].from].push_back(i);
  return by;
}

inline void shift(long& head, Move mv) {
  if (mv == Move::left) --head;
  if (mv == Move::right) ++head;
}

}  // namespace detail

/// Runs from `start` for at most `fuel` rule firings.  Two matching rules
/// are reported as a determinism error.
inline Run run(const Machine& m, Config start, std::size_t fuel) {
  auto by = detail::rules_by_state(m);
  Run r{std::move(start), Outcome::stuck, 0, {}};
  Config& c = r.config;
  if (c.tapes.size() != m.tapes) throw value_error("configuration has the wrong number of tapes");
  while (true) {
    if (c.state == m.halt) {
      r.outcome = Outcome::halted;
      return r;
    }
    if (r.steps == fuel) {
      r.outcome = Outcome::fuel_exhausted;
      return r;
    }
    const Rule* match = nullptr;
    std::size_t match_index = 0;
    auto it = by.find(c.state);
    if (it != by.end()) {
      for (auto i : it->second) {
        const Rule& rule = m.rules[i];
        bool ok = true;
        for (std::size_t t = 0; t < m.tapes && ok; ++t) ok = read(c.tapes[t], c.tapes[t].head, m.blank) == rule.read[t];
        if (!ok) continue;
        if (match)
          throw value_error("forward determinism violated: rules " + std::to_string(match_index) + " and " +
                            std::to_string(i) + " both apply in state `" + c.state + "`");
        match = &rule;
        match_index = i;
      }
    }
    if (!match) {
      r.outcome = Outcome::stuck;
      return r;
    }
    for (std::size_t t = 0; t < m.tapes; ++t) {
      write(c.tapes[t], c.tapes[t].head, match->write[t], m.blank);
      detail::shift(c.tapes[t].head, match->move[t]);
    }
    c.state = match->to;
    r.fired.push_back(match_index);
    ++r.steps;
  }
}

inline Run run(const Machine& m, const std::vector<Symbol>& input, std::size_t fuel) {
  return run(m, initial(m, input), fuel);
}

/// A pair of rules violating a determinism condition.
struct Violation {
  std::size_t first;
  std::size_t second;
};

struct Report {
  bool deterministic = true;
  std::vector<Violation> violations;
};

/// No two rules share (state, read symbols).
inline Report check_forward_deterministic(const Machine& m) {
  Report rep;
  std::map<std::pair<State, std::vector<Symbol>>, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < m.rules.size(); ++i) {
    auto& prev = seen[{m.rules[i].from, m.rules[i].read}];
    for (auto j : prev) rep.violations.push_back({j, i});
    prev.push_back(i);
  }
  rep.deterministic = rep.violations.empty();
  return rep;
}

/// Two rules entering the same state are compatible only if on some tape
/// they move the head the same way and write different symbols: the symbol
/// now sitting just behind the head then tells them apart.  Any other pair
/// could have a common successor configuration and is reported.
inline Report check_backward_deterministic(const Machine& m) {
  Report rep;
  std::map<State, std::vector<std::size_t>> by_target;
  for (std::size_t i = 0; i < m.rules.size(); ++i) by_target[m.rules[i].to].push_back(i);
  for (const auto& [state, idx] : by_target) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const Rule& x = m.rules[idx[a]];
        const Rule& y = m.rules[idx[b]];
        bool separated = false;
        for (std::size_t t = 0; t < m.tapes && !separated; ++t)
          separated = x.move[t] == y.move[t] && x.write[t] != y.write[t];
        if (!separated) rep.violations.push_back({idx[a], idx[b]});
      }
    }
  }
  rep.deterministic = rep.violations.empty();
  return rep;
}

namespace detail {

inline std::string history_symbol(std::size_t i) { return std::to_string(i); }

inline void require_forward(const Machine& tm) {
  if (tm.tapes != 1) throw value_error("expected a one-tape machine");
  // Records only ever sit on the history tape, so they may coincide with
  // work symbols, but not with the blank.
  for (std::size_t i = 0; i < tm.rules.size(); ++i)
    if (history_symbol(i) == tm.blank) throw value_error("the blank clashes with a history record");
  validate(tm);
  if (!check_forward_deterministic(tm).deterministic) throw value_error("machine is not forward-deterministic");
}

inline void add_states(Machine& out, std::set<State>& have, const State& s) {
  if (have.insert(s).second) out.states.push_back(s);
}

// The reverse of an instrumented run of `tm`, on tapes (work, history,
// extra...).  Starting in u:<q> with the history head just past the last
// record, it pops records one by one, undoing each rule, and ends in `done`
// with the history head back at cell 0.  The extra tapes are passive.
inline void add_uncompute(Machine& out, std::set<State>& have, const Machine& tm, const std::string& prefix,
                          const State& done) {
  const Symbol& blank = tm.blank;
  std::size_t passive = out.tapes - 2;
  // Every combination of symbols on the passive tapes.
  std::vector<std::vector<Symbol>> rest{{}};
  for (std::size_t t = 0; t < passive; ++t) {
    std::vector<std::vector<Symbol>> next;
    for (const auto& r : rest)
      for (const auto& s : tm.alphabet) {
        auto e = r;
        e.push_back(s);
        next.push_back(std::move(e));
      }
    rest = std::move(next);
  }
  auto tapes = [&](const Symbol& work, const Symbol& hist, const std::vector<Symbol>& y) {
    std::vector<Symbol> v{work, hist};
    v.insert(v.end(), y.begin(), y.end());
    return v;
  };
  auto moves = [&](Move work, Move hist) {
    std::vector<Move> v{work, hist};
    v.resize(out.tapes, Move::stay);
    return v;
  };
  auto u = [&](const std::string& s) { return prefix + s; };

  std::set<State> entered{tm.start};
  for (const auto& r : tm.rules) entered.insert(r.to);
  entered.insert(tm.halt);
  for (const auto& q : tm.states) {
    add_states(out, have, u(q));
    add_states(out, have, u("back:" + q));
  }
  for (std::size_t i = 0; i < tm.rules.size(); ++i) add_states(out, have, u("mid:" + history_symbol(i)));
  add_states(out, have, done);

  // Step back onto the last history record.
  for (const auto& q : tm.states) {
    if (!entered.count(q)) continue;
    for (const auto& x : tm.alphabet)
      for (const auto& y : rest)
        out.rules.push_back({u(q), tapes(x, blank, y), u("back:" + q), tapes(x, blank, y), moves(Move::stay, Move::left)});
  }
  // Erase record i and move the work head back to where rule i wrote.
  for (std::size_t i = 0; i < tm.rules.size(); ++i) {
    const Rule& r = tm.rules[i];
    for (const auto& x : tm.alphabet)
      for (const auto& y : rest)
        out.rules.push_back({u("back:" + r.to), tapes(x, history_symbol(i), y), u("mid:" + history_symbol(i)),
                             tapes(x, blank, y), moves(reverse(r.move[0]), Move::stay)});
  }
  // Restore the symbol rule i read and return to its source state.
  for (std::size_t i = 0; i < tm.rules.size(); ++i) {
    const Rule& r = tm.rules[i];
    for (const auto& y : rest)
      out.rules.push_back({u("mid:" + history_symbol(i)), tapes(r.write[0], blank, y), u(r.from),
                           tapes(r.read[0], blank, y), moves(Move::stay, Move::stay)});
  }
  // History exhausted: the head sits one cell left of the first record.
  for (const auto& x : tm.alphabet)
    for (const auto& y : rest)
      out.rules.push_back({u("back:" + tm.start), tapes(x, blank, y), done, tapes(x, blank, y),
                           moves(Move::stay, Move::right)});
}

inline std::vector<Symbol> with_history(const Machine& tm) {
  std::vector<Symbol> a = tm.alphabet;
  for (std::size_t i = 0; i < tm.rules.size(); ++i)
    if (std::find(a.begin(), a.end(), history_symbol(i)) == a.end()) a.push_back(history_symbol(i));
  return a;
}

}  // namespace detail

/// Two-tape machine that runs tm on tape 1 and appends the index of each
/// fired rule to tape 2.  With `unwind` set, reaching the halt state starts
/// the reverse run, which pops the history and ends in "u:done" with the
/// initial configuration restored.  States are "c:<q>" and "u:...".
inline Machine landauer_instrument(const Machine& tm, bool unwind = false) {
  detail::require_forward(tm);
  Machine out;
  out.tapes = 2;
  out.blank = tm.blank;
  out.alphabet = detail::with_history(tm);
  std::set<State> have;
  for (const auto& q : tm.states) detail::add_states(out, have, "c:" + q);
  out.start = "c:" + tm.start;
  out.halt = "c:" + tm.halt;
  for (std::size_t i = 0; i < tm.rules.size(); ++i) {
    const Rule& r = tm.rules[i];
    out.rules.push_back({"c:" + r.from, {r.read[0], tm.blank}, "c:" + r.to, {r.write[0], detail::history_symbol(i)},
                         {r.move[0], Move::right}});
  }
  if (unwind) {
    // The halt state hands over to the reverse run on the same tapes.
    const State bridge = "c:" + tm.halt;
    detail::add_uncompute(out, have, tm, "u:", "u:done");
    for (auto& r : out.rules)
      if (r.to == bridge) r.to = "u:" + tm.halt;
    if (tm.start == tm.halt) out.start = "u:" + tm.halt;
    out.halt = "u:done";
  }
  return out;
}

/// Three-tape machine: compute with history, copy tape 1 onto tape 3,
/// uncompute.  Final tapes are (input, blank, output).  With `copy` false
/// the copy stage is skipped, so the run must restore the initial
/// configuration exactly.
inline Machine bennett(const Machine& tm, bool copy = true) {
  detail::require_forward(tm);
  const Symbol& b = tm.blank;
  Machine out;
  out.tapes = 3;
  out.blank = b;
  out.alphabet = detail::with_history(tm);
  std::set<State> have;
  for (const auto& q : tm.states) detail::add_states(out, have, "c:" + q);
  out.start = "c:" + tm.start;
  out.halt = "u:done";

  // Compute.
  for (std::size_t i = 0; i < tm.rules.size(); ++i) {
    const Rule& r = tm.rules[i];
    out.rules.push_back({"c:" + r.from, {r.read[0], b, b}, "c:" + r.to, {r.write[0], detail::history_symbol(i), b},
                         {r.move[0], Move::right, Move::stay}});
  }

  if (copy) {
    // Copy: step left of the output, sweep right copying onto tape 3,
    // then walk both heads back.
    for (const auto& s : {"k:left", "k:copy", "k:return"}) detail::add_states(out, have, s);
    for (const auto& x : tm.alphabet)
      out.rules.push_back({"c:" + tm.halt, {x, b, b}, "k:left", {x, b, b}, {Move::left, Move::stay, Move::stay}});
    out.rules.push_back({"k:left", {b, b, b}, "k:copy", {b, b, b}, {Move::right, Move::stay, Move::stay}});
    for (const auto& x : tm.alphabet) {
      if (x == b) continue;
      out.rules.push_back({"k:copy", {x, b, b}, "k:copy", {x, b, x}, {Move::right, Move::stay, Move::right}});
      out.rules.push_back({"k:return", {x, b, x}, "k:return", {x, b, x}, {Move::left, Move::stay, Move::left}});
    }
    out.rules.push_back({"k:copy", {b, b, b}, "k:return", {b, b, b}, {Move::left, Move::stay, Move::left}});
    out.rules.push_back({"k:return", {b, b, b}, "u:" + tm.halt, {b, b, b}, {Move::right, Move::stay, Move::right}});
  }

  detail::add_uncompute(out, have, tm, "u:", "u:done");
  if (!copy)
    for (auto& r : out.rules)
      if (r.to == "c:" + tm.halt) r.to = "u:" + tm.halt;
  if (!copy && tm.start == tm.halt) out.start = "u:" + tm.halt;
  return out;
}

struct BennettResult {
  std::vector<Symbol> tape1;
  std::vector<Symbol> tape2;
  std::vector<Symbol> tape3;
  Run run;
};

/// Runs the Bennett machine of tm on input.  The original machine is run
/// first to check the halting convention; inputs it does not halt on
/// within fuel are rejected.
inline BennettResult run_bennett(const Machine& tm, const std::vector<Symbol>& input, std::size_t fuel) {
  Run plain = run(tm, input, fuel);
  if (plain.outcome != Outcome::halted)
    throw value_error(std::string("machine did not halt on the input: ") + to_string(plain.outcome));
  const Tape& t = plain.config.tapes[0];
  if (!t.cells.empty()) {
    long lo = t.cells.begin()->first;
    long hi = t.cells.rbegin()->first;
    if (t.head != lo || static_cast<long>(t.cells.size()) != hi - lo + 1)
      throw value_error("machine does not halt on the leftmost cell of a contiguous output");
  }
  Machine m = bennett(tm);
  // Compute, copy and uncompute take 2n + O(output) steps.
  std::size_t budget = 2 * plain.steps + 4 * (t.cells.size() + 2) + 2 * plain.steps + 8;
  Run r = run(m, initial(m, input), budget);
  if (r.outcome != Outcome::halted) throw value_error("Bennett machine did not finish within its step budget");
  const Symbol& b = tm.blank;
  return {contents(r.config.tapes[0], b), contents(r.config.tapes[1], b), contents(r.config.tapes[2], b), std::move(r)};
}

}  // namespace pi::tm
