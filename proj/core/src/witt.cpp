#include "asw/witt.hpp"

#include <algorithm>
#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "asw/errors.hpp"

namespace asw {

namespace {

using boost::multiprecision::cpp_int;
using Exps = std::vector<std::uint32_t>;
using IntPoly = std::map<Exps, cpp_int>;

std::atomic<unsigned> g_level_cap{4};

void ip_add_term(IntPoly& a, const Exps& e, const cpp_int& c) {
  if (c == 0) return;
  auto [it, inserted] = a.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) a.erase(it);
  }
}

IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  Exps e;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      ip_add_term(r, e, ca * cb);
    }
  return r;
}

IntPoly ip_pow(const IntPoly& a, std::uint64_t e, std::size_t nvars) {
  IntPoly result{{Exps(nvars, 0), cpp_int(1)}};
  IntPoly base = a;
  while (e > 0) {
    if (e & 1) result = ip_mul(result, base);
    e >>= 1;
    if (e) base = ip_mul(base, base);
  }
  return result;
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Ghost component w_i of the variable block starting at `offset`, scaled by `factor`.
IntPoly ghost(std::uint32_t p, unsigned i, std::size_t offset, std::size_t nvars, const cpp_int& factor) {
  IntPoly g;
  for (unsigned k = 0; k <= i; ++k) {
    Exps e(nvars, 0);
    e[offset + k] = static_cast<std::uint32_t>(upow(p, i - k));
    ip_add_term(g, e, factor * cpp_int(upow(p, k)));
  }
  return g;
}

// Given target ghost components G_0..G_{n-1}, solve for the Witt polynomials
// S_i with w_i(S) = G_i.  The division by p^i is exact over the integers;
// a nonzero remainder is a construction bug.
std::vector<IntPoly> solve_ghost(std::uint32_t p, const std::vector<IntPoly>& G, std::size_t nvars) {
  const unsigned n = static_cast<unsigned>(G.size());
  std::vector<IntPoly> S;
  // powers[k] holds S_k^(p^(i-k)) for the current level i.
  std::vector<IntPoly> powers;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = 0; k < i; ++k) powers[k] = ip_pow(powers[k], p, nvars);
    IntPoly R = G[i];
    for (unsigned k = 0; k < i; ++k) {
      const cpp_int pk(upow(p, k));
      for (const auto& [e, c] : powers[k]) ip_add_term(R, e, -pk * c);
    }
    const cpp_int pi(upow(p, i));
    IntPoly Si;
    for (const auto& [e, c] : R) {
      if (c % pi != 0) throw Error("Witt polynomial construction: inexact ghost division");
      Si.emplace(e, c / pi);
    }
    S.push_back(Si);
    powers.push_back(std::move(Si));
  }
  return S;
}

WittPolynomial reduce_mod_p(const IntPoly& a, std::uint32_t p) {
  WittPolynomial out;
  for (const auto& [e, c] : a) {
    cpp_int r = c % p;
    if (r < 0) r += p;
    if (r == 0) continue;
    out.push_back({static_cast<std::uint32_t>(r), e});
  }
  std::sort(out.begin(), out.end(), [](const WittMonomial& x, const WittMonomial& y) {
    std::uint32_t dx = 0, dy = 0;
    for (auto v : x.exps) dx += v;
    for (auto v : y.exps) dy += v;
    if (dx != dy) return dx < dy;
    return x.exps > y.exps;
  });
  return out;
}

std::vector<WittPolynomial> build_table(std::uint32_t p, unsigned n, int kind, long long m = 0) {
  // kind: 0 sum, 1 difference, 2 negation, 3 scalar m
  const bool binary = kind <= 1;
  const std::size_t nvars = binary ? 2 * n : n;
  std::vector<IntPoly> G;
  for (unsigned i = 0; i < n; ++i) {
    switch (kind) {
      case 0: {
        IntPoly g = ghost(p, i, 0, nvars, 1);
        for (const auto& [e, c] : ghost(p, i, n, nvars, 1)) ip_add_term(g, e, c);
        G.push_back(std::move(g));
        break;
      }
      case 1: {
        IntPoly g = ghost(p, i, 0, nvars, 1);
        for (const auto& [e, c] : ghost(p, i, n, nvars, -1)) ip_add_term(g, e, c);
        G.push_back(std::move(g));
        break;
      }
      case 2:
        G.push_back(ghost(p, i, 0, nvars, -1));
        break;
      default:
        G.push_back(ghost(p, i, 0, nvars, cpp_int(m)));
        break;
    }
  }
  std::vector<WittPolynomial> out;
  for (const auto& S : solve_ghost(p, G, nvars)) out.push_back(reduce_mod_p(S, p));
  return out;
}

nlohmann::json table_to_json(const std::vector<WittPolynomial>& t) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& poly : t) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& m : poly) terms.push_back({m.coeff, m.exps});
    levels.push_back(std::move(terms));
  }
  return levels;
}

std::vector<WittPolynomial> table_from_json(const nlohmann::json& j) {
  std::vector<WittPolynomial> out;
  for (const auto& level : j) {
    WittPolynomial poly;
    for (const auto& term : level) poly.push_back({term.at(0).get<std::uint32_t>(), term.at(1).get<Exps>()});
    out.push_back(std::move(poly));
  }
  return out;
}

std::unique_ptr<SumPolynomialTable> load_cached(std::uint32_t p, unsigned n, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return nullptr;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("p").get<std::uint32_t>() != p || j.at("n").get<unsigned>() != n) return nullptr;
    auto sum = table_from_json(j.at("sum"));
    auto diff = table_from_json(j.at("difference"));
    auto neg = table_from_json(j.at("negation"));
    if (sum.size() != n || diff.size() != n || neg.size() != n) return nullptr;
    return std::make_unique<SumPolynomialTable>(p, n, std::move(sum), std::move(diff), std::move(neg));
  } catch (const std::exception&) {
    return nullptr;
  }
}

void store_cached(const SumPolynomialTable& t, const std::filesystem::path& file) {
  std::vector<WittPolynomial> sum, diff, neg;
  for (unsigned i = 0; i < t.levels(); ++i) {
    sum.push_back(t.sum(i));
    diff.push_back(t.difference(i));
    neg.push_back(t.negation(i));
  }
  nlohmann::json j{{"p", t.prime()},
                   {"n", t.levels()},
                   {"sum", table_to_json(sum)},
                   {"difference", table_to_json(diff)},
                   {"negation", table_to_json(neg)}};
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump();
  }
  std::filesystem::rename(tmp, file, ec);
}

struct TableRegistry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<SumPolynomialTable>> tables;
};

TableRegistry& table_registry() {
  static TableRegistry r;
  return r;
}

// Evaluate an isobaric table polynomial at level i on rational functions by
// clearing denominators once: with X_v = A_v/B_v of weight p^{j_v}, every
// monomial has exponent a_v <= W_v := p^{i-j_v}, so the product of all
// B_v^{W_v} is a common denominator.
RatFunc eval_level(const WittPolynomial& poly, unsigned i, unsigned n, const std::vector<const RatFunc*>& vars) {
  const Field& f = vars.front()->field();
  const std::uint32_t p = f.characteristic();
  const std::size_t nv = vars.size();
  std::vector<std::uint64_t> W(nv, 0);
  std::vector<std::vector<Poly>> Apow(nv), Bpow(nv);
  Poly L = Poly::constant(FieldValue::one(f));
  for (std::size_t v = 0; v < nv; ++v) {
    const unsigned j = static_cast<unsigned>(v % n);
    if (j > i) continue;
    W[v] = upow(p, i - j);
    const Poly& B = vars[v]->denominator();
    if (B.degree() > 0) L = L * B.pow(static_cast<unsigned>(W[v]));
  }
  auto power = [&](std::vector<std::vector<Poly>>& cache, std::size_t v, const Poly& base, std::uint64_t k) -> const Poly& {
    auto& c = cache[v];
    if (c.empty()) c.push_back(Poly::constant(FieldValue::one(f)));
    while (c.size() <= k) c.push_back(c.back() * base);
    return c[k];
  };
  Poly N(f);
  for (const auto& mono : poly) {
    bool vanishes = false;
    for (std::size_t v = 0; v < nv && !vanishes; ++v)
      if (mono.exps[v] > 0 && vars[v]->is_zero()) vanishes = true;
    if (vanishes) continue;
    Poly term = Poly::constant(FieldValue::from_int(f, mono.coeff));
    for (std::size_t v = 0; v < nv; ++v) {
      const std::uint32_t a = mono.exps[v];
      if (a > W[v]) throw Error("Witt polynomial is not isobaric");
      if (a > 0) term = term * power(Apow, v, vars[v]->numerator(), a);
      const Poly& B = vars[v]->denominator();
      if (B.degree() > 0 && W[v] > a) term = term * power(Bpow, v, B, W[v] - a);
    }
    N = N + term;
  }
  std::vector<FieldValue> hints;
  for (const auto* var : vars) hints.insert(hints.end(), var->hints().begin(), var->hints().end());
  return RatFunc(std::move(N), std::move(L), std::move(hints));
}

FieldValue eval_constants(const WittPolynomial& poly, const std::vector<const FieldValue*>& vars) {
  const Field& f = vars.front()->field();
  FieldValue acc = FieldValue::zero(f);
  for (const auto& mono : poly) {
    FieldValue term = FieldValue::from_int(f, mono.coeff);
    for (std::size_t v = 0; v < vars.size() && !term.is_zero(); ++v)
      if (mono.exps[v] > 0) term *= vars[v]->pow(mono.exps[v]);
    acc += term;
  }
  return acc;
}

std::vector<FieldValue> apply_constants(const std::vector<WittPolynomial>& table,
                                        const std::vector<const FieldValue*>& vars, unsigned n) {
  std::vector<FieldValue> out;
  for (unsigned i = 0; i < n; ++i) out.push_back(eval_constants(table[i], vars));
  return out;
}

}  // namespace

unsigned witt_level_cap() noexcept { return g_level_cap.load(); }
void set_witt_level_cap(unsigned cap) noexcept { g_level_cap.store(cap); }

SumPolynomialTable::SumPolynomialTable(std::uint32_t p, unsigned n)
    : p_(p), n_(n), sum_(build_table(p, n, 0)), diff_(build_table(p, n, 1)), neg_(build_table(p, n, 2)) {}

SumPolynomialTable::SumPolynomialTable(std::uint32_t p, unsigned n, std::vector<WittPolynomial> sum,
                                       std::vector<WittPolynomial> diff, std::vector<WittPolynomial> neg)
    : p_(p), n_(n), sum_(std::move(sum)), diff_(std::move(diff)), neg_(std::move(neg)) {}

const SumPolynomialTable& SumPolynomialTable::get(std::uint32_t p, unsigned n) {
  if (n == 0) throw ShapeError("Witt length must be positive");
  if (n > witt_level_cap())
    throw LimitError("Witt length " + std::to_string(n) + " exceeds the configured cap " +
                     std::to_string(witt_level_cap()));
  auto& reg = table_registry();
  std::lock_guard lock(reg.mu);
  auto& slot = reg.tables[{p, n}];
  if (slot) return *slot;
  std::filesystem::path file;
  if (const char* dir = std::getenv("ASW_MODULI_CACHE"); dir && *dir) {
    file = std::filesystem::path(dir) / ("witt-p" + std::to_string(p) + "-n" + std::to_string(n) + ".json");
    slot = load_cached(p, n, file);
  }
  if (!slot) {
    slot = std::make_unique<SumPolynomialTable>(p, n);
    if (!file.empty()) store_cached(*slot, file);
  }
  return *slot;
}

const std::vector<WittPolynomial>& SumPolynomialTable::scalar(long long m) const {
  const long long modulus = static_cast<long long>(upow(p_, n_));
  m %= modulus;
  if (m < 0) m += modulus;
  std::lock_guard lock(scalar_mu_);
  auto& slot = scalar_[m];
  if (!slot) slot = std::make_unique<const std::vector<WittPolynomial>>(build_table(p_, n_, 3, m));
  return *slot;
}

std::string SumPolynomialTable::to_string(const WittPolynomial& poly, unsigned n, bool binary) {
  if (poly.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& m : poly) {
    if (!first) out << " + ";
    first = false;
    bool wrote = false;
    if (m.coeff != 1) {
      out << m.coeff;
      wrote = true;
    }
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      if (wrote) out << "*";
      out << ((binary && v >= n) ? 'Y' : 'X') << (v % n);
      if (m.exps[v] > 1) out << "^" << m.exps[v];
      wrote = true;
    }
    if (!wrote) out << m.coeff;
  }
  return out.str();
}

const SumPolynomialTable& build_sum_polynomials(std::uint32_t p, unsigned n) { return SumPolynomialTable::get(p, n); }

// ---------------------------------------------------------------------------

WittVector::WittVector(std::vector<RatFunc> entries) : e_(std::move(entries)) {
  if (e_.empty()) throw ShapeError("Witt vector must have positive length");
  for (const auto& r : e_)
    if (r.field() != e_.front().field()) throw FieldMismatchError("Witt vector entries over different fields");
}

WittVector WittVector::zero(const Field& f, unsigned n) { return WittVector(std::vector<RatFunc>(n, RatFunc(f))); }

bool WittVector::is_zero() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](const RatFunc& r) { return r.is_zero(); });
}

void WittVector::check_shape(const WittVector& o) const {
  if (length() != o.length())
    throw ShapeError("Witt length mismatch: " + std::to_string(length()) + " vs " + std::to_string(o.length()));
  if (field() != o.field()) throw FieldMismatchError("Witt vectors over " + field().name() + " and " + o.field().name());
}

namespace {

WittVector apply_table(const std::vector<WittPolynomial>& polys, const WittVector& u, const WittVector* v) {
  const unsigned n = u.length();
  std::vector<const RatFunc*> vars;
  for (unsigned i = 0; i < n; ++i) vars.push_back(&u[i]);
  if (v)
    for (unsigned i = 0; i < n; ++i) vars.push_back(&(*v)[i]);
  std::vector<RatFunc> out;
  out.reserve(n);
  for (unsigned i = 0; i < n; ++i) out.push_back(eval_level(polys[i], i, n, vars));
  return WittVector(std::move(out));
}

}  // namespace

WittVector WittVector::operator+(const WittVector& o) const {
  check_shape(o);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return apply_table(SumPolynomialTable::get(prime(), length()).sums(), *this, &o);
}

WittVector WittVector::operator-(const WittVector& o) const {
  check_shape(o);
  if (o.is_zero()) return *this;
  return apply_table(SumPolynomialTable::get(prime(), length()).differences(), *this, &o);
}

WittVector WittVector::operator-() const {
  return apply_table(SumPolynomialTable::get(prime(), length()).negations(), *this, nullptr);
}

WittVector WittVector::int_mul(long long m) const {
  return apply_table(SumPolynomialTable::get(prime(), length()).scalar(m), *this, nullptr);
}

WittVector WittVector::frobenius() const {
  std::vector<RatFunc> out;
  out.reserve(e_.size());
  for (const auto& r : e_) out.push_back(r.frobenius());
  return WittVector(std::move(out));
}

WittVector WittVector::verschiebung() const {
  std::vector<RatFunc> out;
  out.reserve(e_.size());
  out.emplace_back(field());
  for (std::size_t i = 0; i + 1 < e_.size(); ++i) out.push_back(e_[i]);
  return WittVector(std::move(out));
}

WittVector WittVector::truncate(unsigned i) const {
  if (i == 0 || i > length())
    throw ShapeError("truncation level " + std::to_string(i) + " outside 1.." + std::to_string(length()));
  return WittVector(std::vector<RatFunc>(e_.begin(), e_.begin() + i));
}

WittVector WittVector::specialize(const FieldValue& value) const {
  std::vector<RatFunc> out;
  out.reserve(e_.size());
  for (const auto& r : e_) out.push_back(r.specialize(value));
  return WittVector(std::move(out));
}

WittVector WittVector::embed(const Field& f) const {
  std::vector<RatFunc> out;
  out.reserve(e_.size());
  for (const auto& r : e_) out.push_back(r.embed(f));
  return WittVector(std::move(out));
}

std::string WittVector::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + e_[i].to_pretty_string() + "\"";
  }
  return out + "]";
}

WittVector witt_add(const WittVector& u, const WittVector& v) { return u + v; }
WittVector witt_neg(const WittVector& u) { return -u; }
WittVector witt_int_mul(long long m, const WittVector& u) { return u.int_mul(m); }
WittVector asw_isogeny(const WittVector& u) { return u.frobenius() - u; }

std::vector<FieldValue> witt_add_constants(const std::vector<FieldValue>& u, const std::vector<FieldValue>& v) {
  if (u.size() != v.size() || u.empty()) throw ShapeError("Witt length mismatch");
  const unsigned n = static_cast<unsigned>(u.size());
  std::vector<const FieldValue*> vars;
  for (const auto& x : u) vars.push_back(&x);
  for (const auto& y : v) vars.push_back(&y);
  return apply_constants(SumPolynomialTable::get(u.front().field().characteristic(), n).sums(), vars, n);
}

std::vector<FieldValue> witt_sub_constants(const std::vector<FieldValue>& u, const std::vector<FieldValue>& v) {
  if (u.size() != v.size() || u.empty()) throw ShapeError("Witt length mismatch");
  const unsigned n = static_cast<unsigned>(u.size());
  std::vector<const FieldValue*> vars;
  for (const auto& x : u) vars.push_back(&x);
  for (const auto& y : v) vars.push_back(&y);
  return apply_constants(SumPolynomialTable::get(u.front().field().characteristic(), n).differences(), vars, n);
}

}  // namespace asw
