#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "asw/field.hpp"

namespace asw {

// Dense univariate polynomial in x over a coefficient field.  Coefficients are
// ascending and trimmed; the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Field f) : field_(f) {}
  Poly(Field f, std::vector<FieldValue> coeffs);

  static Poly constant(const FieldValue& c);
  static Poly monomial(const FieldValue& c, int degree);
  static Poly x(const Field& f);
  // x - a
  static Poly linear(const FieldValue& a);

  const Field& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0].is_one(); }
  FieldValue coeff(int i) const;
  const FieldValue& leading() const;
  const std::vector<FieldValue>& coeffs() const noexcept { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scale(const FieldValue& c) const;
  Poly pow(unsigned e) const;
  // Multiply by x^k.
  Poly shift(int k) const;

  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  FieldValue eval(const FieldValue& v) const;
  Poly derivative() const;
  // p(x + a)
  Poly taylor_shift(const FieldValue& a) const;
  // Coefficientwise c -> c^p together with x -> x^p, i.e. the p-th power.
  Poly frobenius() const;
  Poly specialize(const FieldValue& value) const;
  // Move coefficients into the parametric field `f` over this field.
  Poly embed(const Field& f) const;

  std::string to_string(char var = 'x') const;

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

 private:
  void trim();
  void check_same(const Poly& o) const;

  Field field_;
  std::vector<FieldValue> c_;
};

Poly gcd(Poly a, Poly b);

// Multiplicity of the root a in p (p nonzero).
int root_multiplicity(const Poly& p, const FieldValue& a);

// Minimal degree m such that every irreducible factor of `f` splits over the
// degree-m extension of the finite coefficient field (lcm of factor degrees),
// and one irreducible factor of smallest degree.  Finite fields only.
struct SplittingInfo {
  unsigned extension_degree = 1;
  Poly smallest_factor;
};
SplittingInfo splitting_info(const Poly& f);

// Coefficient string used inside products, parenthesised when composite.
std::string coefficient_string(const FieldValue& c);

inline std::ostream& operator<<(std::ostream& os, const Poly& v) { return os << v.to_string(); }

}  // namespace asw
