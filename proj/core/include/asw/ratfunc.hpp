#pragma once

#include <ostream>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asw/poly.hpp"

namespace asw {

// A point of the projective x-line: a finite value or infinity.  Infinity
// sorts after every finite point.
class Place {
 public:
  Place() = default;
  static Place finite(FieldValue v) {
    Place p;
    p.value_ = std::move(v);
    return p;
  }
  static Place infinity() {
    Place p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const noexcept { return infinite_; }
  const FieldValue& value() const;
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) noexcept {
    if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.infinite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

 private:
  bool infinite_ = false;
  FieldValue value_;
};

class RatFunc;

// f = polynomial + sum over finite poles P of sum_j c_j / (x - P)^j.
// `poles[P][j-1]` holds c_j; the last entry is nonzero.
struct PartialFractions {
  Poly polynomial;
  std::map<FieldValue, std::vector<FieldValue>> poles;

  RatFunc recombine() const;
};

// Rational function num/den in x with coprime numerator and monic denominator.
//
// Alongside the canonical pair a RatFunc carries hint points: candidate roots
// of the denominator (typically roots of linear factors it was built from).
// Over F_q(t) these are the only roots the pole finder can discover beyond
// the constants.  Hints never affect equality.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Field f);
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);
  // Hints are set before normalizing so that hinted linear factors cancel cheaply.
  RatFunc(Poly num, Poly den, std::vector<FieldValue> hints);

  static RatFunc constant(const FieldValue& c) { return RatFunc(Poly::constant(c)); }
  static RatFunc x(const Field& f) { return RatFunc(Poly::x(f)); }
  // 1 / (x - a)^k; k may be zero.
  static RatFunc inverse_linear_power(const FieldValue& a, int k);

  const Field& field() const noexcept { return num_.field(); }
  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }
  bool is_constant() const noexcept { return is_polynomial() && num_.degree() <= 0; }
  // The value when constant.
  FieldValue constant_value() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc scale(const FieldValue& c) const;
  RatFunc pow(unsigned e) const;
  // p-th power: coefficients and x raised to the p-th power.
  RatFunc frobenius() const;
  RatFunc derivative() const;

  // Finite poles with multiplicities; throws UnsplitPoleError when the
  // denominator does not split over the coefficient field.
  std::vector<std::pair<FieldValue, int>> finite_poles() const;
  PartialFractions partial_fractions() const;
  int pole_order(const Place& P) const;
  // All poles including infinity, in Place order.
  std::vector<Place> poles() const;

  // Substitute the parameter; result over the finite coefficient field.
  RatFunc specialize(const FieldValue& value) const;
  // Move into the parametric field `f` over this field.
  RatFunc embed(const Field& f) const;

  const std::vector<FieldValue>& hints() const noexcept { return hints_; }
  RatFunc with_hints(std::vector<FieldValue> extra) const;

  // "num/den" canonical form.
  std::string to_string() const;
  // Sum of partial-fraction terms when the poles split, else to_string().
  std::string to_pretty_string() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  void merge_hints(const RatFunc& o);

  Poly num_, den_;
  std::vector<FieldValue> hints_;
};

inline std::ostream& operator<<(std::ostream& os, const Place& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const RatFunc& v) { return os << v.to_string(); }

}  // namespace asw
