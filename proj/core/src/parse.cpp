#include "asw/parse.hpp"

#include <cctype>
#include <string>

#include "asw/errors.hpp"

namespace asw {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Field& field) : s_(text), f_(field) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_primary() {
    const char c = peek();
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  static RatFunc hinted(RatFunc r) {
    if (r.is_polynomial() && r.numerator().degree() == 1) {
      const Poly& n = r.numerator();
      return r.with_hints({-n.coeff(0) / n.coeff(1)});
    }
    return r;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return hinted(acc);
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return hinted(acc);
      }
    }
  }

  RatFunc unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (peek() != '^') return base;
    ++pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
    unsigned long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (e > 1'000'000) fail("exponent too large");
      ++pos_;
    }
    RatFunc r = base.pow(static_cast<unsigned>(e));
    if (negative) {
      if (r.is_zero()) fail("division by zero");
      r = RatFunc::constant(FieldValue::one(f_)) / r;
    }
    return hinted(r);
  }

  RatFunc primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      const long long p = f_.characteristic();
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + (s_[pos_] - '0')) % p;
        ++pos_;
      }
      return RatFunc::constant(FieldValue::from_int(f_, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      if (c == 'x') return hinted(RatFunc::x(f_));
      if (c == 'g') {
        if (f_.degree() == 1) fail("generator g is not defined over " + f_.name());
        return RatFunc::constant(FieldValue::embed(f_, FieldValue::generator(f_.base())));
      }
      if (f_.is_parametric() && c == f_.parameter()) return RatFunc::constant(FieldValue::parameter(f_));
      --pos_;
      fail("unknown symbol '" + std::string(1, c) + "' over " + f_.name());
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  Field f_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const Field& field) {
  try {
    return Parser(text, field).parse_all();
  } catch (const DivisionByZeroError&) {
    throw ParseError("parse error in '" + std::string(text) + "': division by zero");
  }
}

FieldValue parse_field_value(std::string_view text, const Field& field) {
  RatFunc r = parse_ratfunc(text, field);
  if (!r.is_constant()) throw ParseError("expected a constant, got '" + std::string(text) + "'");
  return r.constant_value();
}

Place parse_place(std::string_view text, const Field& field) {
  if (text == "inf" || text == "oo" || text == "infinity") return Place::infinity();
  return Place::finite(parse_field_value(text, field));
}

}  // namespace asw
