#include "asw/field.hpp"

#include <algorithm>
#include <climits>
#include <list>
#include <mutex>

#include "asw/errors.hpp"

namespace asw {

namespace {

constexpr std::uint32_t kMaxFieldOrder = 1u << 20;

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Arithmetic on F_p[X] with small integer coefficients, used to bootstrap
// extension fields before their tables exist.
GfPoly prime_poly_mod(std::uint32_t p, GfPoly a, const GfPoly& m) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    const std::uint32_t c = a[i];
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      const auto idx = static_cast<std::size_t>(i - dm + j);
      a[idx] = static_cast<std::uint32_t>((a[idx] + static_cast<std::uint64_t>(p - c) * m[j]) % p);
    }
  }
  a.resize(std::min<std::size_t>(a.size(), static_cast<std::size_t>(dm)));
  gf::trim(a);
  return a;
}

GfPoly prime_poly_mul(std::uint32_t p, const GfPoly& a, const GfPoly& b) {
  if (a.empty() || b.empty()) return {};
  GfPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  gf::trim(r);
  return r;
}

GfPoly index_to_digits(std::uint32_t p, GfIndex idx) {
  GfPoly d;
  while (idx > 0) {
    d.push_back(idx % p);
    idx /= p;
  }
  return d;
}

GfIndex digits_to_index(std::uint32_t p, const GfPoly& d) {
  GfIndex idx = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) idx = idx * p + *it;
  return idx;
}

struct Registry {
  std::mutex mu;
  std::list<FieldDescriptor> fields;  // stable addresses
};

Registry& registry() {
  static Registry r;
  return r;
}

void build_tables(FieldDescriptor& d) {
  if (d.m == 1) return;
  const std::uint32_t p = d.p;
  auto slow_mul = [&](GfIndex a, GfIndex b) {
    return digits_to_index(p, prime_poly_mod(p, prime_poly_mul(p, index_to_digits(p, a), index_to_digits(p, b)),
                                             d.modulus));
  };
  auto slow_pow = [&](GfIndex a, std::uint64_t e) {
    GfIndex r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto factors = prime_factors(d.q - 1);
  GfIndex primitive = 0;
  for (GfIndex cand = 2; cand < d.q && primitive == 0; ++cand) {
    bool ok = true;
    for (auto r : factors)
      if (slow_pow(cand, (d.q - 1) / r) == 1) {
        ok = false;
        break;
      }
    if (ok) primitive = cand;
  }
  if (d.q == 2) primitive = 1;
  d.exp_table.assign(d.q - 1, 0);
  d.log_table.assign(d.q, 0);
  GfIndex cur = 1;
  for (std::uint32_t i = 0; i + 1 < d.q; ++i) {
    d.exp_table[i] = cur;
    d.log_table[cur] = i;
    cur = slow_mul(cur, primitive);
  }
}

std::string finite_name(std::uint32_t q) { return "F" + std::to_string(q); }

const FieldDescriptor* intern_finite(std::uint32_t p, const GfPoly& modulus) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  for (const auto& d : reg.fields)
    if (d.parameter == 0 && d.p == p && d.modulus == modulus) return &d;
  FieldDescriptor d;
  d.p = p;
  d.modulus = modulus;
  d.m = modulus.empty() ? 1u : static_cast<unsigned>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < d.m; ++i) q *= p;
  if (q > kMaxFieldOrder) throw UnsupportedError("field order " + std::to_string(q) + " exceeds supported size");
  d.q = static_cast<std::uint32_t>(q);
  d.name = finite_name(d.q);
  build_tables(d);
  reg.fields.push_back(std::move(d));
  auto& stored = reg.fields.back();
  stored.base = &stored;
  return &stored;
}

const FieldDescriptor* intern_parametric(const FieldDescriptor* base, char parameter) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  for (const auto& d : reg.fields)
    if (d.parameter == parameter && d.base == base) return &d;
  FieldDescriptor d = *base;
  d.parameter = parameter;
  d.base = base;
  d.name = base->name + "(" + std::string(1, parameter) + ")";
  reg.fields.push_back(std::move(d));
  return &reg.fields.back();
}

}  // namespace

GfIndex FieldDescriptor::add_slow(GfIndex a, GfIndex b) const noexcept {
  GfIndex r = 0, mult = 1;
  while (a > 0 || b > 0) {
    r += ((a % p + b % p) % p) * mult;
    a /= p;
    b /= p;
    mult *= p;
  }
  return r;
}

GfIndex FieldDescriptor::neg_slow(GfIndex a) const noexcept {
  GfIndex r = 0, mult = 1;
  while (a > 0) {
    r += ((p - a % p) % p) * mult;
    a /= p;
    mult *= p;
  }
  return r;
}

GfIndex FieldDescriptor::inv(GfIndex a) const {
  if (a == 0) throw DivisionByZeroError();
  if (m == 1) return pow(a, p - 2);
  return exp_table[(q - 1 - log_table[a]) % (q - 1)];
}

GfIndex FieldDescriptor::pow(GfIndex a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (m > 1) return exp_table[static_cast<std::uint64_t>(log_table[a]) * (e % (q - 1)) % (q - 1)];
  GfIndex r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

GfIndex FieldDescriptor::frobenius_inverse(GfIndex a) const noexcept { return pow(a, q / p); }

GfIndex FieldDescriptor::from_int(long long v) const noexcept {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<GfIndex>(r);
}

bool is_irreducible_over_prime(std::uint32_t p, const GfPoly& poly) {
  const int d = static_cast<int>(poly.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      GfPoly div = index_to_digits(p, static_cast<GfIndex>(low));
      div.resize(static_cast<std::size_t>(k) + 1, 0);
      div[k] = 1;
      if (prime_poly_mod(p, poly, div).empty()) return false;
    }
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  return Field(intern_finite(p, {}));
}

Field Field::finite(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw Error("extension degree must be positive");
  if (m == 1) return prime(p);
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  if (count > kMaxFieldOrder) throw UnsupportedError("field order exceeds supported size");
  for (std::uint64_t low = 0; low < count; ++low) {
    GfPoly cand = index_to_digits(p, static_cast<GfIndex>(low));
    cand.resize(m + 1, 0);
    cand[m] = 1;
    if (is_irreducible_over_prime(p, cand)) return Field(intern_finite(p, cand));
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

Field Field::finite(std::uint32_t p, const GfPoly& modulus) {
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  GfPoly mod = modulus;
  for (auto& c : mod) c %= p;
  gf::trim(mod);
  if (mod.size() <= 2) return prime(p);
  if (mod.back() != 1) throw Error("field modulus must be monic");
  if (!is_irreducible_over_prime(p, mod)) throw Error("field modulus is reducible");
  return Field(intern_finite(p, mod));
}

Field Field::parametric(const Field& base, char parameter) {
  if (!base.valid()) throw Error("invalid base field");
  if (base.is_parametric()) throw UnsupportedError("nested parameters are not supported");
  if (parameter != 't' && parameter != 'a') throw Error("parameter must be 't' or 'a'");
  return Field(intern_parametric(&base.descriptor(), parameter));
}

Field Field::parse(std::string_view name, const GfPoly& modulus) {
  if (name.size() < 2 || name[0] != 'F') throw ParseError("bad field name '" + std::string(name) + "'");
  std::size_t i = 1;
  std::uint64_t q = 0;
  while (i < name.size() && name[i] >= '0' && name[i] <= '9') {
    q = q * 10 + static_cast<std::uint64_t>(name[i] - '0');
    if (q > kMaxFieldOrder) throw ParseError("field order too large");
    ++i;
  }
  if (q < 2) throw ParseError("bad field name '" + std::string(name) + "'");
  char parameter = 0;
  if (i < name.size()) {
    if (name.size() != i + 3 || name[i] != '(' || name[i + 2] != ')')
      throw ParseError("bad field name '" + std::string(name) + "'");
    parameter = name[i + 1];
  }
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  unsigned m = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw ParseError("field order " + std::to_string(q) + " is not a prime power");
  Field base = modulus.empty() ? finite(p, m) : finite(p, modulus);
  if (base.base_order() != q) throw ParseError("modulus degree does not match field order");
  return parameter ? parametric(base, parameter) : base;
}

namespace gf {

void trim(GfPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const GfPoly& a) noexcept { return static_cast<int>(a.size()) - 1; }

GfPoly add(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b) {
  GfPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

GfPoly sub(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b) {
  GfPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

GfPoly mul(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b) {
  if (a.empty() || b.empty()) return {};
  GfPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

GfPoly scale(const FieldDescriptor& f, const GfPoly& a, GfIndex c) {
  GfPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<GfPoly, GfPoly> divmod(const FieldDescriptor& f, const GfPoly& a, const GfPoly& b) {
  if (b.empty()) throw DivisionByZeroError();
  if (a.size() < b.size()) return {{}, a};
  GfPoly rem = a;
  GfPoly quot(a.size() - b.size() + 1, 0);
  const GfIndex lead_inv = f.inv(b.back());
  for (std::size_t i = rem.size(); i-- >= b.size();) {
    const GfIndex c = f.mul(rem[i], lead_inv);
    quot[i - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t k = i - (b.size() - 1) + j;
      rem[k] = f.sub(rem[k], f.mul(c, b[j]));
    }
    if (i == 0) break;
  }
  rem.resize(b.size() - 1);
  trim(rem);
  trim(quot);
  return {quot, rem};
}

GfPoly monic(const FieldDescriptor& f, const GfPoly& a) {
  if (a.empty()) return a;
  return scale(f, a, f.inv(a.back()));
}

GfPoly gcd(const FieldDescriptor& f, GfPoly a, GfPoly b) {
  while (!b.empty()) {
    auto r = divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

GfIndex eval(const FieldDescriptor& f, const GfPoly& a, GfIndex v) {
  GfIndex r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = f.add(f.mul(r, v), *it);
  return r;
}

std::optional<GfPoly> pth_root(const FieldDescriptor& f, const GfPoly& a) {
  GfPoly r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (i % f.p != 0) return std::nullopt;
  }
  if (a.empty()) return r;
  r.assign((a.size() - 1) / f.p + 1, 0);
  for (std::size_t i = 0; i < a.size(); i += f.p) r[i / f.p] = f.frobenius_inverse(a[i]);
  trim(r);
  return r;
}

namespace {
std::string element_string(const FieldDescriptor& f, GfIndex c) {
  if (f.m == 1) return std::to_string(c);
  GfPoly digits = index_to_digits(f.p, c);
  if (digits.empty()) return "0";
  const FieldDescriptor& prime_field = *intern_finite(f.p, {});
  return to_string(prime_field, digits, 'g');
}
}  // namespace

std::string to_string(const FieldDescriptor& f, const GfPoly& a, char var) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string coeff = element_string(f, a[i]);
    const bool composite = coeff.find('+') != std::string::npos;
    if (i == 0) {
      out += coeff;
      continue;
    }
    if (a[i] != 1) out += (composite ? "(" + coeff + ")" : coeff) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace gf

// ---------------------------------------------------------------------------
// FieldValue

FieldValue FieldValue::zero(const Field& f) {
  FieldValue v;
  v.field_ = f;
  if (f.is_parametric()) v.den_ = {1};
  return v;
}

FieldValue FieldValue::one(const Field& f) {
  FieldValue v = zero(f);
  if (f.is_parametric())
    v.num_ = {1};
  else
    v.c_ = 1;
  return v;
}

FieldValue FieldValue::from_int(const Field& f, long long n) {
  return from_index(f, f.descriptor().from_int(n));
}

FieldValue FieldValue::from_index(const Field& f, GfIndex index) {
  FieldValue v = zero(f);
  if (index >= f.base_order()) throw Error("field element index out of range");
  if (f.is_parametric()) {
    if (index != 0) v.num_ = {index};
  } else {
    v.c_ = index;
  }
  return v;
}

FieldValue FieldValue::generator(const Field& f) {
  if (f.degree() == 1) throw UnsupportedError("prime field " + f.name() + " has no generator g");
  return from_index(f, f.characteristic());
}

FieldValue FieldValue::parameter(const Field& f) {
  if (!f.is_parametric()) throw UnsupportedError("field " + f.name() + " has no parameter");
  FieldValue v = zero(f);
  v.num_ = {0, 1};
  return v;
}

FieldValue FieldValue::fraction(const Field& f, GfPoly num, GfPoly den) {
  if (!f.is_parametric()) throw UnsupportedError("fractions require a parametric field");
  return make_fraction(f, std::move(num), std::move(den));
}

FieldValue FieldValue::make_fraction(const Field& f, GfPoly num, GfPoly den) {
  const auto& d = f.descriptor();
  gf::trim(num);
  gf::trim(den);
  if (den.empty()) throw DivisionByZeroError();
  FieldValue v = zero(f);
  if (num.empty()) return v;
  GfPoly g = gf::gcd(d, num, den);
  if (g.size() > 1) {
    num = gf::divmod(d, num, g).first;
    den = gf::divmod(d, den, g).first;
  }
  const GfIndex lead_inv = d.inv(den.back());
  if (lead_inv != 1) {
    num = gf::scale(d, num, lead_inv);
    den = gf::scale(d, den, lead_inv);
  }
  v.num_ = std::move(num);
  v.den_ = std::move(den);
  return v;
}

FieldValue FieldValue::embed(const Field& f, const FieldValue& base_value) {
  if (base_value.field_ == f) return base_value;
  if (base_value.field_ != f.base() || base_value.field_.is_parametric())
    throw FieldMismatchError("cannot embed " + base_value.field_.name() + " into " + f.name());
  return from_index(f, base_value.c_);
}

void FieldValue::check_same(const FieldValue& o) const {
  if (field_ != o.field_) {
    if (!field_.valid() || !o.field_.valid()) throw FieldMismatchError("uninitialised field value");
    throw FieldMismatchError("field mismatch: " + field_.name() + " vs " + o.field_.name());
  }
}

bool FieldValue::is_zero() const noexcept { return field_.valid() && field_.is_parametric() ? num_.empty() : c_ == 0; }

bool FieldValue::is_one() const noexcept {
  if (field_.valid() && field_.is_parametric()) return num_.size() == 1 && num_[0] == 1 && den_.size() == 1;
  return c_ == 1;
}

FieldValue FieldValue::operator+(const FieldValue& o) const {
  check_same(o);
  const auto& d = field_.descriptor();
  if (!field_.is_parametric()) {
    FieldValue r = *this;
    r.c_ = d.add(c_, o.c_);
    return r;
  }
  if (o.num_.empty()) return *this;
  if (num_.empty()) return o;
  if (den_ == o.den_) return make_fraction(field_, gf::add(d, num_, o.num_), den_);
  return make_fraction(field_, gf::add(d, gf::mul(d, num_, o.den_), gf::mul(d, o.num_, den_)),
                       gf::mul(d, den_, o.den_));
}

FieldValue FieldValue::operator-() const {
  FieldValue r = *this;
  const auto& d = field_.descriptor();
  if (!field_.is_parametric()) {
    r.c_ = d.neg(c_);
  } else {
    for (auto& c : r.num_) c = d.neg(c);
  }
  return r;
}

FieldValue FieldValue::operator-(const FieldValue& o) const { return *this + (-o); }

FieldValue FieldValue::operator*(const FieldValue& o) const {
  check_same(o);
  const auto& d = field_.descriptor();
  if (!field_.is_parametric()) {
    FieldValue r = *this;
    r.c_ = d.mul(c_, o.c_);
    return r;
  }
  if (num_.empty() || o.num_.empty()) return zero(field_);
  return make_fraction(field_, gf::mul(d, num_, o.num_), gf::mul(d, den_, o.den_));
}

FieldValue FieldValue::inverse() const {
  if (is_zero()) throw DivisionByZeroError();
  if (!field_.is_parametric()) {
    FieldValue r = *this;
    r.c_ = field_.descriptor().inv(c_);
    return r;
  }
  return make_fraction(field_, den_, num_);
}

FieldValue FieldValue::operator/(const FieldValue& o) const {
  check_same(o);
  return *this * o.inverse();
}

FieldValue FieldValue::pow(std::uint64_t e) const {
  if (!field_.is_parametric()) {
    FieldValue r = *this;
    r.c_ = field_.descriptor().pow(c_, e);
    return r;
  }
  FieldValue result = one(field_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FieldValue FieldValue::frobenius_inverse() const {
  if (field_.is_parametric())
    throw UnsupportedError("Frobenius is not surjective on " + field_.name());
  FieldValue r = *this;
  r.c_ = field_.descriptor().frobenius_inverse(c_);
  return r;
}

std::optional<FieldValue> FieldValue::pth_root() const {
  if (!field_.is_parametric()) return frobenius_inverse();
  const auto& d = field_.descriptor();
  auto n = gf::pth_root(d, num_);
  auto m = gf::pth_root(d, den_);
  if (!n || !m) return std::nullopt;
  return make_fraction(field_, std::move(*n), std::move(*m));
}

bool FieldValue::is_constant() const noexcept {
  if (!field_.is_parametric()) return true;
  return den_.size() == 1 && num_.size() <= 1;
}

int FieldValue::t_valuation() const {
  if (!field_.is_parametric()) return is_zero() ? INT_MAX : 0;
  if (num_.empty()) return INT_MAX;
  auto low = [](const GfPoly& a) {
    int k = 0;
    while (a[static_cast<std::size_t>(k)] == 0) ++k;
    return k;
  };
  return low(num_) - low(den_);
}

FieldValue FieldValue::specialize(const FieldValue& value) const {
  if (!field_.is_parametric()) return *this;
  if (value.field_ != field_.base()) throw FieldMismatchError("specialization value must lie in " + field_.base().name());
  const auto& d = field_.descriptor();
  const GfIndex den = gf::eval(d, den_, value.c_);
  if (den == 0)
    throw SpecializationPoleError("specialization pole: coefficient " + to_string() + " at " +
                                  std::string(1, field_.parameter()) + "=" + value.to_string());
  return from_index(field_.base(), d.mul(gf::eval(d, num_, value.c_), d.inv(den)));
}

std::string FieldValue::to_string() const {
  if (!field_.valid()) return "<invalid>";
  const auto& d = field_.descriptor();
  if (!field_.is_parametric()) return gf::to_string(d, c_ == 0 ? GfPoly{} : GfPoly{c_}, 'g');
  auto wrap = [](const std::string& s) {
    return s.find_first_of("+-*/ ") == std::string::npos ? s : "(" + s + ")";
  };
  const std::string num = gf::to_string(d, num_, d.parameter);
  if (den_.size() == 1) return num;
  return wrap(num) + "/" + wrap(gf::to_string(d, den_, d.parameter));
}

std::strong_ordering operator<=>(const FieldValue& a, const FieldValue& b) noexcept {
  if (auto c = a.c_ <=> b.c_; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.num_.begin(), a.num_.end(), b.num_.begin(), b.num_.end());
      c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.den_.begin(), a.den_.end(), b.den_.begin(), b.den_.end());
}

}  // namespace asw
