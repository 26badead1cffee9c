#pragma once

#include <string>

#include "pi/comb.hpp"
#include "pi/errors.hpp"
#include "pi/syntax.hpp"
#include "pi/typecheck.hpp"
#include "pi/value.hpp"

namespace pi {

namespace detail {

[[noreturn]] inline void bad_value(Prim p, const Value& v) {
  throw eval_error("`" + std::string(name(p)) + "` cannot act on " + to_string(v));
}

// Action of a primitive in the forward direction.  Backward evaluation applies
// the dual instead.
inline Value step(Prim p, const Value& v) {
  switch (p) {
    case Prim::id:
      return v;
    case Prim::swap_plus:
      if (v.is_inl()) return Value::inr(v.first());
      if (v.is_inr()) return Value::inl(v.first());
      break;
    case Prim::assocr_plus:
      if (v.is_inl() && v.first().is_inl()) return Value::inl(v.first().first());
      if (v.is_inl() && v.first().is_inr()) return Value::inr(Value::inl(v.first().first()));
      if (v.is_inr()) return Value::inr(Value::inr(v.first()));
      break;
    case Prim::assocl_plus:
      if (v.is_inl()) return Value::inl(Value::inl(v.first()));
      if (v.is_inr() && v.first().is_inl()) return Value::inl(Value::inr(v.first().first()));
      if (v.is_inr() && v.first().is_inr()) return Value::inr(v.first().first());
      break;
    case Prim::unite_plus_l:
      // inl would carry a value of 0, which cannot exist.
      if (v.is_inr()) return v.first();
      break;
    case Prim::uniti_plus_l:
      return Value::inr(v);
    case Prim::swap_times:
      if (v.is_pair()) return Value::pair(v.second(), v.first());
      break;
    case Prim::assocr_times:
      if (v.is_pair() && v.first().is_pair())
        return Value::pair(v.first().first(), Value::pair(v.first().second(), v.second()));
      break;
    case Prim::assocl_times:
      if (v.is_pair() && v.second().is_pair())
        return Value::pair(Value::pair(v.first(), v.second().first()), v.second().second());
      break;
    case Prim::unite_times_l:
      if (v.is_pair() && v.first().is_unit()) return v.second();
      break;
    case Prim::uniti_times_l:
      return Value::pair(Value::unit(), v);
    case Prim::dist:
      if (v.is_pair() && v.first().is_inl()) return Value::inl(Value::pair(v.first().first(), v.second()));
      if (v.is_pair() && v.first().is_inr()) return Value::inr(Value::pair(v.first().first(), v.second()));
      break;
    case Prim::factor:
      if (v.is_inl() && v.first().is_pair())
        return Value::pair(Value::inl(v.first().first()), v.first().second());
      if (v.is_inr() && v.first().is_pair())
        return Value::pair(Value::inr(v.first().first()), v.first().second());
      break;
    case Prim::absorbl:
    case Prim::factorzr:
      // Both sides of these isomorphisms are empty.
      break;
    case Prim::hadamard:
    case Prim::phase_s:
    case Prim::phase_t:
      throw eval_error("`" + std::string(name(p)) + "` has no classical semantics");
  }
  bad_value(p, v);
}

inline Value run(const Comb& c, const Value& v, bool forward) {
  switch (c.kind()) {
    case Comb::Kind::prim: {
      if (forward) return step(c.primitive(), v);
      auto d = dual(c.primitive());
      if (!d) throw eval_error("`" + std::string(name(c.primitive())) + "` has no classical semantics");
      return step(*d, v);
    }
    case Comb::Kind::seq:
      if (forward) return run(c.second(), run(c.first(), v, true), true);
      return run(c.first(), run(c.second(), v, false), false);
    case Comb::Kind::sum:
      if (v.is_inl()) return Value::inl(run(c.first(), v.first(), forward));
      if (v.is_inr()) return Value::inr(run(c.second(), v.first(), forward));
      throw eval_error("sum of combinators applied to " + to_string(v));
    case Comb::Kind::prod:
      if (v.is_pair()) return Value::pair(run(c.first(), v.first(), forward), run(c.second(), v.second(), forward));
      throw eval_error("product of combinators applied to " + to_string(v));
    case Comb::Kind::inv:
      return run(c.first(), v, !forward);
    case Comb::Kind::ascribe:
      return run(c.first(), v, forward);
  }
  throw eval_error("malformed term");
}

}  // namespace detail

/// Forward evaluation.  The term is expected to be well typed at some
/// b1 <-> b2 with v : b1; ill-shaped inputs raise eval_error.
inline Value eval(const Comb& c, const Value& v) { return detail::run(c, v, true); }

/// Backward evaluation: runs c from its codomain to its domain without
/// constructing the inverse term.  Agrees with eval(invert(c), v).
inline Value reval(const Comb& c, const Value& v) { return detail::run(c, v, false); }

/// Evaluation with the typing contract enforced on both ends.
inline Value eval(const Derivation& d, const Value& v) {
  if (!has_type(v, d.dom)) throw value_error(to_string(v) + " is not a value of " + to_string(d.dom));
  return eval(d.term, v);
}

inline Value reval(const Derivation& d, const Value& v) {
  if (!has_type(v, d.cod)) throw value_error(to_string(v) + " is not a value of " + to_string(d.cod));
  return reval(d.term, v);
}

}  // namespace pi
