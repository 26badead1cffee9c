#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "pi/errors.hpp"
#include "pi/type.hpp"

namespace pi {

/// Canonical inhabitants of value types: (), inl v, inr v and (v, w).
class Value {
 public:
  enum class Kind : std::uint8_t { unit, inl, inr, pair };

  static Value unit();
  static Value inl(Value v);
  static Value inr(Value v);
  static Value pair(Value a, Value b);

  Value();

  Kind kind() const;
  bool is_unit() const { return kind() == Kind::unit; }
  bool is_inl() const { return kind() == Kind::inl; }
  bool is_inr() const { return kind() == Kind::inr; }
  bool is_pair() const { return kind() == Kind::pair; }

  /// Payload of an injection, or first component of a pair.
  const Value& first() const;
  /// Second component of a pair.
  const Value& second() const;

  friend bool operator==(const Value& x, const Value& y) {
    if (x.node_ == y.node_) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::unit:
        return true;
      case Kind::inl:
      case Kind::inr:
        return x.first() == y.first();
      case Kind::pair:
        return x.first() == y.first() && x.second() == y.second();
    }
    return false;
  }
  friend bool operator!=(const Value& x, const Value& y) { return !(x == y); }

 private:
  struct Node;

  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  explicit Value(std::nullptr_t) {}

  std::shared_ptr<const Node> node_;
};

struct Value::Node {
  Kind kind;
  Value a;
  Value b;
};

inline Value Value::unit() {
  static const auto node = std::make_shared<const Node>(Node{Kind::unit, Value(nullptr), Value(nullptr)});
  return Value(node);
}
inline Value Value::inl(Value v) {
  return Value(std::make_shared<const Node>(Node{Kind::inl, std::move(v), Value(nullptr)}));
}
inline Value Value::inr(Value v) {
  return Value(std::make_shared<const Node>(Node{Kind::inr, std::move(v), Value(nullptr)}));
}
inline Value Value::pair(Value a, Value b) {
  return Value(std::make_shared<const Node>(Node{Kind::pair, std::move(a), std::move(b)}));
}
inline Value::Value() : Value(unit()) {}
inline Value::Kind Value::kind() const { return node_->kind; }
inline const Value& Value::first() const { return node_->a; }
inline const Value& Value::second() const { return node_->b; }

inline bool has_type(const Value& v, const Type& b) {
  switch (v.kind()) {
    case Value::Kind::unit:
      return b.is_one();
    case Value::Kind::inl:
      return b.is_sum() && has_type(v.first(), b.left());
    case Value::Kind::inr:
      return b.is_sum() && has_type(v.first(), b.right());
    case Value::Kind::pair:
      return b.is_prod() && has_type(v.first(), b.left()) && has_type(v.second(), b.right());
  }
  return false;
}

/// Position of v in the left-biased enumeration of b: left summands come
/// before right summands, pairs are ordered lexicographically.
inline std::uint64_t idx(const Value& v, const Type& b) {
  switch (v.kind()) {
    case Value::Kind::unit:
      if (b.is_one()) return 0;
      break;
    case Value::Kind::inl:
      if (b.is_sum()) return idx(v.first(), b.left());
      break;
    case Value::Kind::inr:
      if (b.is_sum()) return size(b.left()) + idx(v.first(), b.right());
      break;
    case Value::Kind::pair:
      if (b.is_prod()) return idx(v.first(), b.left()) * size(b.right()) + idx(v.second(), b.right());
      break;
  }
  throw value_error("value does not have type " + to_string(b));
}

/// Inverse of idx: the k-th value of b.
inline Value value_of(const Type& b, std::uint64_t k) {
  switch (b.kind()) {
    case Type::Kind::one:
      if (k == 0) return Value::unit();
      break;
    case Type::Kind::sum: {
      auto l = size(b.left());
      if (k < l) return Value::inl(value_of(b.left(), k));
      return Value::inr(value_of(b.right(), k - l));
    }
    case Type::Kind::prod: {
      auto r = size(b.right());
      if (r != 0 && k < size(b)) return Value::pair(value_of(b.left(), k / r), value_of(b.right(), k % r));
      break;
    }
    case Type::Kind::zero:
      break;
    case Type::Kind::var:
      throw type_error("cannot enumerate a non-ground type");
  }
  throw value_error("index " + std::to_string(k) + " out of range for type " + to_string(b));
}

namespace detail {

inline void print_value(std::string& out, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::unit:
      out += "()";
      return;
    case Value::Kind::inl:
      out += "inl ";
      print_value(out, v.first());
      return;
    case Value::Kind::inr:
      out += "inr ";
      print_value(out, v.first());
      return;
    case Value::Kind::pair:
      out += '(';
      print_value(out, v.first());
      out += ", ";
      print_value(out, v.second());
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Value& v) {
  std::string out;
  detail::print_value(out, v);
  return out;
}

}  // namespace pi
