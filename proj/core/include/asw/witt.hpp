#pragma once

#include <ostream>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "asw/ratfunc.hpp"

namespace asw {

// Largest Witt length for which universal polynomials are generated.
unsigned witt_level_cap() noexcept;
void set_witt_level_cap(unsigned cap) noexcept;

// A polynomial over F_p in Witt variables.  For binary operations the
// variables are X_0..X_{n-1} followed by Y_0..Y_{n-1}; for unary ones
// X_0..X_{n-1}.  Every table polynomial at level i is isobaric of weight p^i
// when X_j and Y_j carry weight p^j.
struct WittMonomial {
  std::uint32_t coeff = 0;  // in [1, p)
  std::vector<std::uint32_t> exps;
};
using WittPolynomial = std::vector<WittMonomial>;

// Universal polynomials for one (p, n): sum, difference and negation, plus
// integer scalar multiples on demand.  Obtain instances via `get`; they are
// built once, memoized, and immutable afterwards.
class SumPolynomialTable {
 public:
  // Throws LimitError when n exceeds the level cap.  If the environment
  // variable ASW_MODULI_CACHE names a directory the tables are cached there.
  static const SumPolynomialTable& get(std::uint32_t p, unsigned n);

  std::uint32_t prime() const noexcept { return p_; }
  unsigned levels() const noexcept { return n_; }
  const WittPolynomial& sum(unsigned i) const { return sum_.at(i); }
  const WittPolynomial& difference(unsigned i) const { return diff_.at(i); }
  const WittPolynomial& negation(unsigned i) const { return neg_.at(i); }
  const std::vector<WittPolynomial>& sums() const noexcept { return sum_; }
  const std::vector<WittPolynomial>& differences() const noexcept { return diff_; }
  const std::vector<WittPolynomial>& negations() const noexcept { return neg_; }
  // Polynomials of X -> m*X; m is reduced mod p^n.
  const std::vector<WittPolynomial>& scalar(long long m) const;

  // e.g. "X1 + Y1 + X0*Y0"
  static std::string to_string(const WittPolynomial& poly, unsigned n, bool binary);

  SumPolynomialTable(std::uint32_t p, unsigned n);
  SumPolynomialTable(std::uint32_t p, unsigned n, std::vector<WittPolynomial> sum, std::vector<WittPolynomial> diff,
                     std::vector<WittPolynomial> neg);

 private:
  std::uint32_t p_;
  unsigned n_;
  std::vector<WittPolynomial> sum_, diff_, neg_;
  mutable std::map<long long, std::unique_ptr<const std::vector<WittPolynomial>>> scalar_;
  mutable std::mutex scalar_mu_;
};

// build_sum_polynomials: the sum table of (p, n).
const SumPolynomialTable& build_sum_polynomials(std::uint32_t p, unsigned n);

// Length-n Witt vector of rational functions over a common coefficient field
// of characteristic p.
class WittVector {
 public:
  WittVector() = default;
  explicit WittVector(std::vector<RatFunc> entries);
  static WittVector zero(const Field& f, unsigned n);

  unsigned length() const noexcept { return static_cast<unsigned>(e_.size()); }
  std::uint32_t prime() const noexcept { return field().characteristic(); }
  const Field& field() const noexcept { return e_.front().field(); }
  const std::vector<RatFunc>& entries() const noexcept { return e_; }
  // 0-based.
  const RatFunc& operator[](unsigned i) const { return e_.at(i); }
  bool is_zero() const noexcept;

  WittVector operator+(const WittVector& o) const;
  WittVector operator-(const WittVector& o) const;
  WittVector operator-() const;
  WittVector int_mul(long long m) const;
  WittVector frobenius() const;
  WittVector verschiebung() const;
  // First i entries.
  WittVector truncate(unsigned i) const;
  WittVector specialize(const FieldValue& value) const;
  WittVector embed(const Field& f) const;

  // JSON-ish list: ["1/x + 1/(x + 4)", ...]
  std::string to_string() const;

  friend bool operator==(const WittVector& a, const WittVector& b) noexcept { return a.e_ == b.e_; }

 private:
  void check_shape(const WittVector& o) const;
  std::vector<RatFunc> e_;
};

WittVector witt_add(const WittVector& u, const WittVector& v);
WittVector witt_neg(const WittVector& u);
WittVector witt_int_mul(long long m, const WittVector& u);
// F(u) - u.
WittVector asw_isogeny(const WittVector& u);

// Witt arithmetic on vectors of constants (used for class membership tests).
std::vector<FieldValue> witt_add_constants(const std::vector<FieldValue>& u, const std::vector<FieldValue>& v);
std::vector<FieldValue> witt_sub_constants(const std::vector<FieldValue>& u, const std::vector<FieldValue>& v);

// Do u and v define the same Z/p^n-cover (up to the unit action)?  Finite
// coefficient fields only; throws UnsupportedError otherwise and
// OrderDropError when a first entry reduces to a constant.
bool same_cover(const WittVector& u, const WittVector& v);

inline std::ostream& operator<<(std::ostream& os, const WittVector& v) { return os << v.to_string(); }

}  // namespace asw
