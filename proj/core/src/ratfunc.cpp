#include "asw/ratfunc.hpp"

#include <algorithm>

#include "asw/errors.hpp"

namespace asw {

namespace {

constexpr std::uint32_t kMaxEnumeratedRoots = 1u << 16;

void sort_unique(std::vector<FieldValue>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string linear_factor_string(const FieldValue& P) {
  if (P.is_zero()) return "x";
  return "(" + Poly::linear(P).to_string() + ")";
}

// f / (x - h) for a root h of f, by synthetic division.
Poly divide_linear(const Poly& f, const FieldValue& h) {
  const auto& c = f.coeffs();
  std::vector<FieldValue> q(c.size() - 1, FieldValue::zero(f.field()));
  FieldValue carry = FieldValue::zero(f.field());
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    carry = c[i + 1] + carry * h;
    q[i] = carry;
  }
  return Poly(f.field(), std::move(q));
}

}  // namespace

const FieldValue& Place::value() const {
  if (infinite_) throw Error("the place at infinity has no finite value");
  return value_;
}

std::string Place::to_string() const { return infinite_ ? "inf" : value_.to_string(); }

RatFunc PartialFractions::recombine() const {
  RatFunc r(polynomial);
  for (const auto& [P, cs] : poles)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (!cs[j].is_zero())
        r += RatFunc::inverse_linear_power(P, static_cast<int>(j) + 1).scale(cs[j]);
  return r;
}

RatFunc::RatFunc(Field f) : num_(f), den_(Poly::constant(FieldValue::one(f))) {}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(FieldValue::one(num_.field()))) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.field() != den_.field()) throw FieldMismatchError("numerator and denominator over different fields");
  normalize();
}

RatFunc::RatFunc(Poly num, Poly den, std::vector<FieldValue> hints) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.field() != den_.field()) throw FieldMismatchError("numerator and denominator over different fields");
  for (auto& h : hints)
    if (h.field() != field()) h = FieldValue::embed(field(), h);
  hints_ = std::move(hints);
  sort_unique(hints_);
  normalize();
}

RatFunc RatFunc::inverse_linear_power(const FieldValue& a, int k) {
  if (k < 0) throw Error("negative pole order");
  RatFunc r(Poly::constant(FieldValue::one(a.field())), Poly::linear(a).pow(static_cast<unsigned>(k)));
  r.hints_ = {a};
  return r;
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw DivisionByZeroError();
  if (num_.is_zero()) {
    den_ = Poly::constant(FieldValue::one(num_.field()));
    return;
  }
  // Cancel linear factors at the hinted roots first.  When they exhaust the
  // denominator no gcd is needed, which matters over F_q(t) where Euclid's
  // coefficients grow quickly.
  Poly rest = den_;
  for (const auto& h : hints_) {
    while (rest.degree() > 0 && rest.eval(h).is_zero()) {
      rest = divide_linear(rest, h);
      if (num_.degree() > 0 && num_.eval(h).is_zero()) {
        num_ = divide_linear(num_, h);
        den_ = divide_linear(den_, h);
      }
    }
  }
  if (rest.degree() > 0 && num_.degree() > 0) {
    Poly g = gcd(num_, rest);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  const FieldValue& lead = den_.leading();
  if (!lead.is_one()) {
    const FieldValue inv = lead.inverse();
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
}

void RatFunc::merge_hints(const RatFunc& o) {
  if (o.hints_.empty()) return;
  if (hints_.empty()) {
    hints_ = o.hints_;
    return;
  }
  std::vector<FieldValue> out;
  out.reserve(hints_.size() + o.hints_.size());
  std::set_union(hints_.begin(), hints_.end(), o.hints_.begin(), o.hints_.end(), std::back_inserter(out));
  hints_ = std::move(out);
}

RatFunc RatFunc::with_hints(std::vector<FieldValue> extra) const {
  RatFunc r = *this;
  for (auto& h : extra) {
    if (h.field() != field()) h = FieldValue::embed(field(), h);
    r.hints_.push_back(std::move(h));
  }
  sort_unique(r.hints_);
  return r;
}

FieldValue RatFunc::constant_value() const {
  if (!is_constant()) throw Error("rational function is not constant");
  return num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (o.is_zero()) {
    RatFunc r = *this;
    r.merge_hints(o);
    return r;
  }
  if (is_zero()) {
    RatFunc r = o;
    r.merge_hints(*this);
    return r;
  }
  RatFunc r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else if (o.den_.degree() == 0) {
    r.num_ = num_ + o.num_ * den_;
    r.den_ = den_;
  } else if (den_.degree() == 0) {
    r.num_ = num_ * o.den_ + o.num_;
    r.den_ = o.den_;
  } else {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  }
  r.hints_ = hints_;
  r.merge_hints(o);
  r.normalize();
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  RatFunc r;
  r.num_ = num_ * o.num_;
  r.den_ = den_ * o.den_;
  r.hints_ = hints_;
  r.merge_hints(o);
  r.normalize();
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw DivisionByZeroError();
  RatFunc r;
  r.num_ = num_ * o.den_;
  r.den_ = den_ * o.num_;
  r.hints_ = hints_;
  r.merge_hints(o);
  r.normalize();
  return r;
}

RatFunc RatFunc::scale(const FieldValue& c) const {
  if (c.is_zero()) {
    RatFunc r(field());
    r.hints_ = hints_;
    return r;
  }
  RatFunc r = *this;
  r.num_ = num_.scale(c);
  return r;
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc r = *this;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  if (e == 0) r.num_ = Poly::constant(FieldValue::one(field()));
  return r;
}

RatFunc RatFunc::frobenius() const {
  RatFunc r;
  r.num_ = num_.frobenius();
  r.den_ = den_.frobenius();
  r.hints_.reserve(hints_.size());
  for (const auto& h : hints_) r.hints_.push_back(h.frobenius());
  sort_unique(r.hints_);
  return r;
}

RatFunc RatFunc::derivative() const {
  RatFunc r(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  r.hints_ = hints_;
  return r;
}

std::vector<std::pair<FieldValue, int>> RatFunc::finite_poles() const {
  std::vector<std::pair<FieldValue, int>> out;
  if (den_.degree() <= 0) return out;
  const Field& f = field();
  Poly rest = den_;
  auto try_root = [&](const FieldValue& c) {
    if (!rest.eval(c).is_zero()) return;
    int k = 0;
    const Poly lin = Poly::linear(c);
    while (rest.degree() > 0) {
      auto [q, r] = rest.divmod(lin);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++k;
    }
    out.emplace_back(c, k);
  };
  for (const auto& h : hints_) {
    if (rest.degree() <= 0) break;
    try_root(h);
  }
  const std::uint32_t q = f.base_order();
  if (rest.degree() > 0 && q <= kMaxEnumeratedRoots) {
    for (std::uint32_t i = 0; i < q && rest.degree() > 0; ++i) {
      FieldValue c = FieldValue::from_index(f, i);
      if (std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == c; }) != out.end()) continue;
      try_root(c);
    }
  }
  if (rest.degree() > 0) {
    if (f.is_parametric()) throw UnsplitPoleError(rest.to_string(), 0);
    SplittingInfo info = splitting_info(rest);
    throw UnsplitPoleError(info.smallest_factor.to_string(), info.extension_degree);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartialFractions RatFunc::partial_fractions() const {
  PartialFractions pf;
  const Field& f = field();
  pf.polynomial = num_.divmod(den_).first;
  for (const auto& [a, k] : finite_poles()) {
    Poly cofactor = den_.divmod(Poly::linear(a).pow(static_cast<unsigned>(k))).first;
    // Power series of N(y+a)/D_a(y+a) to order y^(k-1).
    Poly Ns = num_.taylor_shift(a);
    Poly Ds = cofactor.taylor_shift(a);
    const FieldValue d0_inv = Ds.coeff(0).inverse();
    std::vector<FieldValue> s(static_cast<std::size_t>(k), FieldValue::zero(f));
    for (int i = 0; i < k; ++i) {
      FieldValue acc = Ns.coeff(i);
      for (int j = 1; j <= i; ++j) acc -= Ds.coeff(j) * s[static_cast<std::size_t>(i - j)];
      s[static_cast<std::size_t>(i)] = acc * d0_inv;
    }
    std::vector<FieldValue> c(static_cast<std::size_t>(k), FieldValue::zero(f));
    for (int j = 1; j <= k; ++j) c[static_cast<std::size_t>(j - 1)] = s[static_cast<std::size_t>(k - j)];
    pf.poles.emplace(a, std::move(c));
  }
  return pf;
}

int RatFunc::pole_order(const Place& P) const {
  if (P.is_infinity()) return std::max(0, num_.degree() - den_.degree());
  if (den_.degree() <= 0) return 0;
  FieldValue a = P.value();
  if (a.field() != field()) a = FieldValue::embed(field(), a);
  return root_multiplicity(den_, a);
}

std::vector<Place> RatFunc::poles() const {
  std::vector<Place> out;
  for (const auto& [a, k] : finite_poles()) out.push_back(Place::finite(a));
  if (pole_order(Place::infinity()) > 0) out.push_back(Place::infinity());
  return out;
}

RatFunc RatFunc::specialize(const FieldValue& value) const {
  if (!field().is_parametric()) return *this;
  RatFunc r(num_.specialize(value), den_.specialize(value));
  for (const auto& h : hints_) {
    try {
      r.hints_.push_back(h.specialize(value));
    } catch (const SpecializationPoleError&) {
    }
  }
  sort_unique(r.hints_);
  return r;
}

RatFunc RatFunc::embed(const Field& f) const {
  if (f == field()) return *this;
  RatFunc r;
  r.num_ = num_.embed(f);
  r.den_ = den_.embed(f);
  for (const auto& h : hints_) r.hints_.push_back(FieldValue::embed(f, h));
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  auto wrap = [](const Poly& p) {
    std::string s = p.to_string();
    return s.find_first_of("+*/ ") == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

std::string RatFunc::to_pretty_string() const {
  PartialFractions pf;
  try {
    pf = partial_fractions();
  } catch (const UnsplitPoleError&) {
    return to_string();
  }
  std::string out;
  auto append = [&](const std::string& term) {
    if (!out.empty()) out += " + ";
    out += term;
  };
  if (!pf.polynomial.is_zero()) append(pf.polynomial.to_string());
  for (const auto& [P, cs] : pf.poles) {
    const std::string base = linear_factor_string(P);
    for (std::size_t j = cs.size(); j-- > 0;) {
      if (cs[j].is_zero()) continue;
      std::string term = cs[j].is_one() ? "1" : coefficient_string(cs[j]);
      term += "/" + base;
      if (j > 0) term += "^" + std::to_string(j + 1);
      append(term);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace asw
