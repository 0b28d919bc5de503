#pragma once

#include <ostream>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asw {

// Index of an element of F_{p^m}: the base-p digits are the coefficients of
// the element written as a polynomial in the generator g.
using GfIndex = std::uint32_t;

// Univariate polynomial over a finite field, ascending coefficients, no
// trailing zeros (the zero polynomial is empty).
using GfPoly = std::vector<GfIndex>;

// Immutable description of a coefficient field: F_{p^m} or F_{p^m}(t).
// Descriptors are interned for the lifetime of the process; compare fields by
// pointer identity through `Field`.
struct FieldDescriptor {
  std::uint32_t p = 0;
  unsigned m = 1;
  std::uint32_t q = 0;
  GfPoly modulus;  // monic, degree m; empty when m == 1
  char parameter = 0;  // 0 for finite fields
  const FieldDescriptor* base = nullptr;  // the finite coefficient field (self when finite)
  std::string name;
  std::vector<GfIndex> exp_table;  // m > 1 only
  std::vector<std::uint32_t> log_table;

  GfIndex add(GfIndex a, GfIndex b) const noexcept {
    if (m == 1) {
      const GfIndex s = a + b;
      return s >= p ? s - p : s;
    }
    return add_slow(a, b);
  }
  GfIndex neg(GfIndex a) const noexcept {
    if (m == 1) return a == 0 ? 0 : p - a;
    return neg_slow(a);
  }
  GfIndex sub(GfIndex a, GfIndex b) const noexcept { return add(a, neg(b)); }
  GfIndex mul(GfIndex a, GfIndex b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (m == 1) return static_cast<GfIndex>(static_cast<std::uint64_t>(a) * b % p);
    return exp_table[(log_table[a] + log_table[b]) % (q - 1)];
  }
  GfIndex inv(GfIndex a) const;  // throws DivisionByZeroError
  GfIndex pow(GfIndex a, std::uint64_t e) const noexcept;
  GfIndex frobenius(GfIndex a) const noexcept { return pow(a, p); }
  GfIndex frobenius_inverse(GfIndex a) const noexcept;
  GfIndex from_int(long long v) const noexcept;

 private:
  GfIndex add_slow(GfIndex a, GfIndex b) const noexcept;
  GfIndex neg_slow(GfIndex a) const noexcept;
};

class Field {
 public:
  Field() = default;

  static Field prime(std::uint32_t p);
  // F_{p^m} with the first monic irreducible modulus in enumeration order.
  static Field finite(std::uint32_t p, unsigned m);
  // F_{p^m} with an explicit monic modulus (ascending coefficients in F_p).
  static Field finite(std::uint32_t p, const GfPoly& modulus);
  static Field parametric(const Field& base, char parameter = 't');
  // "F5", "F4", "F9(t)", "F5(a)"; an explicit modulus overrides the default.
  static Field parse(std::string_view name, const GfPoly& modulus = {});

  bool valid() const noexcept { return d_ != nullptr; }
  bool is_parametric() const noexcept { return d_->parameter != 0; }
  std::uint32_t characteristic() const noexcept { return d_->p; }
  unsigned degree() const noexcept { return d_->m; }
  std::uint32_t base_order() const noexcept { return d_->q; }
  Field base() const noexcept { return Field(d_->base); }
  char parameter() const noexcept { return d_->parameter; }
  const GfPoly& modulus() const noexcept { return d_->modulus; }
  const std::string& name() const noexcept { return d_->name; }
  const FieldDescriptor& descriptor() const noexcept { return *d_; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(const FieldDescriptor* d) : d_(d) {}
  const FieldDescriptor* d_ = nullptr;
};

// Is `poly` (ascending, over F_p) irreducible?  Brute force, for small degree.
bool is_irreducible_over_prime(std::uint32_t p, const GfPoly& poly);

namespace gf {

void trim(GfPoly& a);
int degree(const GfPoly& a) noexcept;
GfPoly add(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b);
GfPoly sub(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b);
GfPoly mul(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b);
GfPoly scale(const FieldDescriptor& f, const GfPoly& a, GfIndex c);
// Quotient and remainder; throws DivisionByZeroError for b == 0.
std::pair<GfPoly, GfPoly> divmod(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b);
GfPoly monic(const FieldDescriptor& f, const GfPoly& a);
GfPoly gcd(const FieldDescriptor& f, GfPoly a, GfPoly b);
GfIndex eval(const FieldDescriptor& f, const GfPoly& a, GfIndex v);
// p-th root of a polynomial in F_q[t^p]; nullopt otherwise.
std::optional<GfPoly> pth_root(const FieldDescriptor& f, const GfPoly& a);
std::string to_string(const FieldDescriptor& f, const GfPoly& a, char var);

}  // namespace gf

// An element of a coefficient field.  Finite-field elements are stored as an
// index; elements of F_q(t) as a reduced fraction with monic denominator.
class FieldValue {
 public:
  FieldValue() = default;

  static FieldValue zero(const Field& f);
  static FieldValue one(const Field& f);
  static FieldValue from_int(const Field& f, long long v);
  static FieldValue from_index(const Field& f, GfIndex index);
  // The generator g of F_{p^m} (m > 1), or of the coefficient field.
  static FieldValue generator(const Field& f);
  // The transcendental parameter of F_q(t).
  static FieldValue parameter(const Field& f);
  static FieldValue fraction(const Field& f, GfPoly num, GfPoly den);
  // Embed an element of the finite coefficient field into `f`.
  static FieldValue embed(const Field& f, const FieldValue& base_value);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  FieldValue operator+(const FieldValue& o) const;
  FieldValue operator-(const FieldValue& o) const;
  FieldValue operator*(const FieldValue& o) const;
  FieldValue operator/(const FieldValue& o) const;
  FieldValue operator-() const;
  FieldValue& operator+=(const FieldValue& o) { return *this = *this + o; }
  FieldValue& operator-=(const FieldValue& o) { return *this = *this - o; }
  FieldValue& operator*=(const FieldValue& o) { return *this = *this * o; }

  FieldValue inverse() const;
  FieldValue pow(std::uint64_t e) const;
  FieldValue frobenius() const { return pow(field_.characteristic()); }
  // b with b^p == *this.  Finite fields only.
  FieldValue frobenius_inverse() const;
  // p-th root in any supported field, if it exists.
  std::optional<FieldValue> pth_root() const;

  // Finite fields.
  GfIndex index() const noexcept { return c_; }
  // Parametric fields.
  const GfPoly& numerator() const noexcept { return num_; }
  const GfPoly& denominator() const noexcept { return den_; }
  bool is_constant() const noexcept;  // lies in the finite coefficient field
  // Valuation at t = 0 (parametric; finite elements have valuation 0).
  int t_valuation() const;
  // Substitute the parameter; result lives in the coefficient field.
  FieldValue specialize(const FieldValue& value) const;

  std::string to_string() const;

  friend bool operator==(const FieldValue& a, const FieldValue& b) noexcept {
    return a.field_ == b.field_ && a.c_ == b.c_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const FieldValue& a, const FieldValue& b) noexcept;

 private:
  void check_same(const FieldValue& o) const;
  static FieldValue make_fraction(const Field& f, GfPoly num, GfPoly den);

  Field field_;
  GfIndex c_ = 0;
  GfPoly num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const FieldValue& v) { return os << v.to_string(); }

}  // namespace asw
