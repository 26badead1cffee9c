#pragma once

// Concrete syntax.
//
//   comb  ::= seq [ ':' type '<->' type ]
//   seq   ::= sum [ ';' seq ]
//   sum   ::= prod [ '+' sum ]
//   prod  ::= unary [ '*' prod ]
//   unary ::= 'inv' unary | prim | '(' comb ')'
//   type  ::= tprod [ '+' type ]
//   tprod ::= tatom [ '*' tprod ]
//   tatom ::= '0' | '1' | '\'' ident | '(' type ')'
//   value ::= '()' | 'inl' value | 'inr' value | '(' value ',' value ')'
//
// Binary operators associate to the right.  `--` starts a comment that runs
// to the end of the line.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "pi/comb.hpp"
#include "pi/errors.hpp"
#include "pi/type.hpp"
#include "pi/value.hpp"

namespace pi {

namespace detail {

enum class Tok { word, lparen, rparen, plus, star, semi, colon, arrow, comma, quote_var, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  static bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '-' && at(pos_ + 1) == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.column = col_;
    tok_.text.clear();
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::end;
      return;
    }
    char c = src_[pos_];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      bump();
    };
    switch (c) {
      case '(':
        return single(Tok::lparen);
      case ')':
        return single(Tok::rparen);
      case '+':
        return single(Tok::plus);
      case '*':
        return single(Tok::star);
      case ';':
        return single(Tok::semi);
      case ':':
        return single(Tok::colon);
      case ',':
        return single(Tok::comma);
      case '<':
        if (at(pos_ + 1) == '-' && at(pos_ + 2) == '>') {
          tok_.kind = Tok::arrow;
          tok_.text = "<->";
          bump();
          bump();
          bump();
          return;
        }
        break;
      case '\'': {
        bump();
        std::size_t start = pos_;
        while (pos_ < src_.size() && word_char(src_[pos_])) bump();
        if (start == pos_) throw syntax_error("expected a metavariable name after '", tok_.line, tok_.column);
        tok_.kind = Tok::quote_var;
        tok_.text = std::string(src_.substr(start, pos_ - start));
        return;
      }
      default:
        break;
    }
    if (!word_char(c)) throw syntax_error(std::string("unexpected character '") + c + "'", line_, col_);

    std::size_t start = pos_;
    while (pos_ < src_.size() && word_char(src_[pos_])) bump();
    std::string w(src_.substr(start, pos_ - start));
    // Primitive names with an embedded '+': swap+, assocr+, unite+l, ...
    if (at(pos_) == '+') {
      std::size_t j = pos_ + 1;
      while (j < src_.size() && word_char(src_[j])) ++j;
      std::string longer = w + "+" + std::string(src_.substr(pos_ + 1, j - pos_ - 1));
      if (j > pos_ + 1 && prim_from_name(longer)) {
        while (pos_ < j) bump();
        w = std::move(longer);
      } else if (prim_from_name(w + "+")) {
        bump();
        w += "+";
      }
    }
    tok_.kind = Tok::word;
    tok_.text = std::move(w);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token tok_{Tok::end, {}, 1, 1};
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Comb comb() {
    Comb c = seq();
    if (lex_.peek().kind == Tok::colon) {
      lex_.next();
      vars_.clear();
      Type d = type();
      expect(Tok::arrow, "'<->'");
      Type e = type();
      c = Comb::ascribe(std::move(c), std::move(d), std::move(e));
    }
    return c;
  }

  Type type() {
    Type l = tprod();
    if (lex_.peek().kind == Tok::plus) {
      lex_.next();
      return Type::sum(std::move(l), type());
    }
    return l;
  }

  Value value() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::word && (t.text == "inl" || t.text == "inr")) {
      bool left = t.text == "inl";
      lex_.next();
      Value v = value();
      return left ? Value::inl(std::move(v)) : Value::inr(std::move(v));
    }
    if (t.kind == Tok::lparen) {
      lex_.next();
      if (lex_.peek().kind == Tok::rparen) {
        lex_.next();
        return Value::unit();
      }
      Value a = value();
      if (lex_.peek().kind == Tok::rparen) {
        // Redundant parentheses around a value.
        lex_.next();
        return a;
      }
      expect(Tok::comma, "',' or ')'");
      Value b = value();
      expect(Tok::rparen, "')'");
      return Value::pair(std::move(a), std::move(b));
    }
    throw error_at(t, "expected a value");
  }

  void finish() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::end) throw error_at(t, "unexpected '" + t.text + "'");
  }

  const Token& peek() const { return lex_.peek(); }
  Token next() { return lex_.next(); }

 private:
  static syntax_error error_at(const Token& t, const std::string& what) {
    if (t.kind == Tok::end) return syntax_error(what + " at end of input", t.line, t.column);
    return syntax_error(what, t.line, t.column);
  }

  void expect(Tok k, const char* what) {
    const Token& t = lex_.peek();
    if (t.kind != k) throw error_at(t, std::string("expected ") + what);
    lex_.next();
  }

  Comb seq() {
    Comb l = sum();
    if (lex_.peek().kind == Tok::semi) {
      lex_.next();
      return Comb::seq(std::move(l), seq());
    }
    return l;
  }

  Comb sum() {
    Comb l = prod();
    if (lex_.peek().kind == Tok::plus) {
      lex_.next();
      return Comb::sum(std::move(l), sum());
    }
    return l;
  }

  Comb prod() {
    Comb l = unary();
    if (lex_.peek().kind == Tok::star) {
      lex_.next();
      return Comb::prod(std::move(l), prod());
    }
    return l;
  }

  Comb unary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::word && t.text == "inv") {
      lex_.next();
      return Comb::inv(unary());
    }
    if (t.kind == Tok::word) {
      if (auto p = prim_from_name(t.text)) {
        lex_.next();
        return Comb::prim(*p);
      }
      throw error_at(t, "unknown combinator '" + t.text + "'");
    }
    if (t.kind == Tok::lparen) {
      lex_.next();
      Comb c = comb();
      expect(Tok::rparen, "')'");
      return c;
    }
    throw error_at(t, "expected a combinator");
  }

  Type tprod() {
    Type l = tatom();
    if (lex_.peek().kind == Tok::star) {
      lex_.next();
      return Type::prod(std::move(l), tprod());
    }
    return l;
  }

  Type tatom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::word && (t.text == "0" || t.text == "1")) {
      bool z = t.text == "0";
      lex_.next();
      return z ? Type::zero() : Type::one();
    }
    if (t.kind == Tok::quote_var) {
      auto [it, fresh] = vars_.try_emplace(t.text, vars_.size());
      lex_.next();
      return Type::var(it->second);
    }
    if (t.kind == Tok::lparen) {
      lex_.next();
      Type ty = type();
      expect(Tok::rparen, "')'");
      return ty;
    }
    throw error_at(t, "expected a type");
  }

  Lexer lex_;
  std::map<std::string, std::size_t> vars_;
};

// Precedence levels: 0 ascription, 1 sequence, 2 sum, 3 product, 4 unary.
inline void print_comb(std::string& out, const Comb& c, int prec) {
  auto binary = [&](int level, std::string_view op) {
    if (prec > level) out += '(';
    print_comb(out, c.first(), level + 1);
    out += op;
    print_comb(out, c.second(), level);
    if (prec > level) out += ')';
  };
  switch (c.kind()) {
    case Comb::Kind::prim:
      out += name(c.primitive());
      return;
    case Comb::Kind::seq:
      return binary(1, " ; ");
    case Comb::Kind::sum:
      return binary(2, " + ");
    case Comb::Kind::prod:
      return binary(3, " * ");
    case Comb::Kind::inv:
      out += "inv ";
      print_comb(out, c.first(), 4);
      return;
    case Comb::Kind::ascribe:
      if (prec > 0) out += '(';
      print_comb(out, c.first(), 1);
      out += " : ";
      out += to_string(c.dom());
      out += " <-> ";
      out += to_string(c.cod());
      if (prec > 0) out += ')';
      return;
  }
}

}  // namespace detail

/// Parses a whole combinator program.
inline Comb parse_comb(std::string_view text) {
  detail::Parser p(text);
  Comb c = p.comb();
  p.finish();
  return c;
}

inline Type parse_type(std::string_view text) {
  detail::Parser p(text);
  Type t = p.type();
  p.finish();
  return t;
}

/// Parses a combinator type written `b1 <-> b2`.
inline std::pair<Type, Type> parse_comb_type(std::string_view text) {
  detail::Parser p(text);
  Type a = p.type();
  if (p.peek().kind != detail::Tok::arrow) {
    const auto& t = p.peek();
    throw syntax_error("expected '<->'", t.line, t.column);
  }
  p.next();
  Type b = p.type();
  p.finish();
  return {std::move(a), std::move(b)};
}

inline Value parse_value(std::string_view text) {
  detail::Parser p(text);
  Value v = p.value();
  p.finish();
  return v;
}

inline std::string to_string(const Comb& c) {
  std::string out;
  detail::print_comb(out, c, 0);
  return out;
}

}  // namespace pi
