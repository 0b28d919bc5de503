#include "asw/poly.hpp"

#include <numeric>

#include "asw/errors.hpp"

namespace asw {

Poly::Poly(Field f, std::vector<FieldValue> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != field_) throw FieldMismatchError("polynomial coefficient outside " + field_.name());
  trim();
}

Poly Poly::constant(const FieldValue& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const FieldValue& c, int degree) {
  if (degree < 0) throw Error("negative monomial degree");
  std::vector<FieldValue> v(static_cast<std::size_t>(degree) + 1, FieldValue::zero(c.field()));
  v.back() = c;
  return Poly(c.field(), std::move(v));
}

Poly Poly::x(const Field& f) { return monomial(FieldValue::one(f), 1); }

Poly Poly::linear(const FieldValue& a) {
  return Poly(a.field(), {-a, FieldValue::one(a.field())});
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
  if (field_ != o.field_) throw FieldMismatchError("polynomials over different fields");
}

FieldValue Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldValue::zero(field_);
  return c_[static_cast<std::size_t>(i)];
}

const FieldValue& Poly::leading() const {
  if (c_.empty()) throw Error("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  Poly r(field_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), FieldValue::zero(field_));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size() && i < o.c_.size())
      r.c_[i] = c_[i] + o.c_[i];
    else
      r.c_[i] = i < c_.size() ? c_[i] : o.c_[i];
  }
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  Poly r(field_);
  if (c_.empty() || o.c_.empty()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, FieldValue::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scale(const FieldValue& c) const {
  Poly r = *this;
  for (auto& v : r.c_) v *= c;
  r.trim();
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(FieldValue::one(field_)), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::shift(int k) const {
  if (c_.empty() || k == 0) return *this;
  if (k < 0) throw Error("negative shift");
  Poly r = *this;
  r.c_.insert(r.c_.begin(), static_cast<std::size_t>(k), FieldValue::zero(field_));
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  check_same(d);
  if (d.is_zero()) throw DivisionByZeroError();
  if (degree() < d.degree()) return {Poly(field_), *this};
  std::vector<FieldValue> rem = c_;
  std::vector<FieldValue> quot(c_.size() - d.c_.size() + 1, FieldValue::zero(field_));
  const FieldValue lead_inv = d.leading().inverse();
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (rem[i].is_zero()) continue;
    const FieldValue c = rem[i] * lead_inv;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j)
      if (!d.c_[j].is_zero()) rem[i - dd + j] -= c * d.c_[j];
  }
  rem.resize(dd, FieldValue::zero(field_));
  return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back().is_one()) return *this;
  return scale(c_.back().inverse());
}

FieldValue Poly::eval(const FieldValue& v) const {
  FieldValue r = FieldValue::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + *it;
  return r;
}

Poly Poly::derivative() const {
  Poly r(field_);
  if (c_.size() <= 1) return r;
  r.c_.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(c_[i] * FieldValue::from_int(field_, static_cast<long long>(i)));
  r.trim();
  return r;
}

Poly Poly::taylor_shift(const FieldValue& a) const {
  // Horner: repeated synthetic division by (x - a) yields the coefficients
  // of p(y + a) in y.
  std::vector<FieldValue> work = c_;
  std::vector<FieldValue> out;
  out.reserve(work.size());
  for (std::size_t n = work.size(); n > 0; --n) {
    for (std::size_t i = n - 1; i-- > 0;) work[i] += work[i + 1] * a;
    out.push_back(work[0]);
    work.erase(work.begin());
  }
  return Poly(field_, std::move(out));
}

Poly Poly::frobenius() const {
  Poly r(field_);
  if (c_.empty()) return r;
  const std::size_t p = field_.characteristic();
  r.c_.assign((c_.size() - 1) * p + 1, FieldValue::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * p] = c_[i].frobenius();
  r.trim();
  return r;
}

Poly Poly::specialize(const FieldValue& value) const {
  if (!field_.is_parametric()) return *this;
  std::vector<FieldValue> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c.specialize(value));
  return Poly(field_.base(), std::move(out));
}

Poly Poly::embed(const Field& f) const {
  if (f == field_) return *this;
  std::vector<FieldValue> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(FieldValue::embed(f, c));
  return Poly(f, std::move(out));
}

std::string coefficient_string(const FieldValue& c) {
  std::string s = c.to_string();
  if (s.find_first_of("+-*/ ") != std::string::npos) return "(" + s + ")";
  return s;
}

std::string Poly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += coefficient_string(c_[i]);
      continue;
    }
    if (!c_[i].is_one()) out += coefficient_string(c_[i]) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

int root_multiplicity(const Poly& p, const FieldValue& a) {
  if (p.is_zero()) throw Error("root multiplicity in zero polynomial");
  int k = 0;
  Poly cur = p;
  const Poly lin = Poly::linear(a);
  while (true) {
    auto [q, r] = cur.divmod(lin);
    if (!r.is_zero()) return k;
    ++k;
    cur = std::move(q);
  }
}

namespace {

Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(FieldValue::one(m.field()));
  base = base.divmod(m).second;
  while (e > 0) {
    if (e & 1) result = (result * base).divmod(m).second;
    e >>= 1;
    if (e) base = (base * base).divmod(m).second;
  }
  return result;
}

// x^(q^d) mod f, by repeated q-th powering.
Poly frobenius_power(const Poly& xq, const Poly& f, std::uint32_t q) { return powmod(xq, q, f); }

}  // namespace

SplittingInfo splitting_info(const Poly& f) {
  const Field& field = f.field();
  if (field.is_parametric()) throw UnsupportedError("splitting degree needs a finite field");
  if (f.degree() < 1) return {};
  const std::uint32_t q = field.base_order();
  Poly rest = f.monic();
  const Poly x = Poly::x(field);
  Poly xqd = x;  // x^(q^d) mod rest
  SplittingInfo info;
  info.extension_degree = 1;
  bool have_factor = false;
  for (unsigned d = 1; rest.degree() >= 1; ++d) {
    xqd = frobenius_power(xqd, rest, q);
    Poly g = gcd(rest, xqd - x);
    if (g.degree() >= 1) {
      info.extension_degree = std::lcm(info.extension_degree, d);
      if (!have_factor) {
        have_factor = true;
        info.smallest_factor = g;
        if (g.degree() > static_cast<int>(d)) {
          // g is a product of degree-d irreducibles; find one by search when small.
          std::uint64_t count = 1;
          for (unsigned i = 0; i < d; ++i) count *= q;
          if (count <= 1'000'000) {
            for (std::uint64_t low = 0; low < count; ++low) {
              std::vector<FieldValue> c;
              std::uint64_t v = low;
              for (unsigned i = 0; i < d; ++i) {
                c.push_back(FieldValue::from_index(field, static_cast<GfIndex>(v % q)));
                v /= q;
              }
              c.push_back(FieldValue::one(field));
              Poly cand(field, std::move(c));
              if (g.divmod(cand).second.is_zero()) {
                info.smallest_factor = cand;
                break;
              }
            }
          }
        }
      }
      while (g.degree() >= 1) {
        rest = rest.divmod(g).first;
        g = gcd(rest, g);
      }
      if (rest.degree() < 1) break;
      xqd = xqd.divmod(rest).second;
    }
  }
  return info;
}

}  // namespace asw
