#include "asw/ramify.hpp"

#include <algorithm>
#include <set>

#include "asw/errors.hpp"

namespace asw {

namespace {

long long ipow(long long b, unsigned e) {
  long long r = 1;
  while (e--) r *= b;
  return r;
}

FieldValue pth_root_or_throw(const FieldValue& c) {
  auto r = c.pth_root();
  if (!r)
    throw UnsupportedError("coefficient " + c.to_string() + " has no " + std::to_string(c.field().characteristic()) +
                           "-th root in " + c.field().name());
  return *r;
}

// Sum of p-th roots of every p-divisible term of f (constant term excluded).
RatFunc pdivisible_root(const RatFunc& f) {
  const std::uint32_t p = f.field().characteristic();
  RatFunc b(f.field());
  if (f.is_zero()) return b;
  const PartialFractions pf = f.partial_fractions();
  const auto& poly = pf.polynomial.coeffs();
  std::vector<FieldValue> bpoly;
  for (std::size_t k = p; k < poly.size(); k += p) {
    if (poly[k].is_zero()) continue;
    if (bpoly.size() < k / p + 1) bpoly.resize(k / p + 1, FieldValue::zero(f.field()));
    bpoly[k / p] = pth_root_or_throw(poly[k]);
  }
  if (!bpoly.empty()) b += RatFunc(Poly(f.field(), std::move(bpoly)));
  for (const auto& [P, cs] : pf.poles) {
    for (std::size_t j = p; j <= cs.size(); j += p) {
      const FieldValue& c = cs[j - 1];
      if (c.is_zero()) continue;
      b += RatFunc::inverse_linear_power(P, static_cast<int>(j / p)).scale(pth_root_or_throw(c));
    }
  }
  return b;
}

}  // namespace

BranchingDatum::BranchingDatum(std::uint32_t p_, std::vector<Row> rows_, std::vector<Place> points_)
    : p(p_), rows(std::move(rows_)), points(std::move(points_)) {
  n = rows.empty() ? 0 : static_cast<unsigned>(rows.front().size());
  for (const auto& r : rows)
    if (r.size() != n) throw ShapeError("branching datum rows of different lengths");
  if (!points.empty() && points.size() != rows.size())
    throw ShapeError("branching datum has " + std::to_string(points.size()) + " points for " +
                     std::to_string(rows.size()) + " rows");
}

std::vector<int> BranchingDatum::conductors() const {
  std::vector<int> d(n, 0);
  for (const auto& r : rows)
    for (unsigned i = 0; i < n; ++i) d[i] += r[i];
  return d;
}

BranchingDatum BranchingDatum::canonical() const {
  BranchingDatum c = *this;
  c.points.clear();
  std::sort(c.rows.begin(), c.rows.end(), std::greater<>());
  return c;
}

BranchingDatum BranchingDatum::truncate(unsigned i) const {
  if (i == 0 || i > n) throw ShapeError("truncation level " + std::to_string(i) + " outside 1.." + std::to_string(n));
  BranchingDatum t;
  t.p = p;
  t.n = i;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    Row r(rows[j].begin(), rows[j].begin() + i);
    if (std::all_of(r.begin(), r.end(), [](int e) { return e == 0; })) continue;
    t.rows.push_back(std::move(r));
    if (has_points()) t.points.push_back(points[j]);
  }
  return t;
}

std::string row_string(const Row& row) {
  std::string s = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(row[i]);
  }
  return s + "]";
}

std::string BranchingDatum::rows_string() const {
  std::string s = "[";
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (j) s += ",";
    s += row_string(rows[j]);
  }
  return s + "]";
}

ReduceResult reduce(const WittVector& u) {
  const unsigned n = u.length();
  WittVector cur = u;
  WittVector h_total = WittVector::zero(u.field(), n);
  for (unsigned i = 0; i < n; ++i) {
    while (true) {
      RatFunc b = pdivisible_root(cur[i]);
      if (b.is_zero()) break;
      std::vector<RatFunc> h_entries(n, RatFunc(u.field()));
      h_entries[i] = b;
      WittVector h(std::move(h_entries));
      cur = cur - asw_isogeny(h);
      h_total = h_total + h;
    }
  }
  return {cur, h_total};
}

bool is_reduced(const WittVector& u) {
  for (const auto& f : u.entries())
    if (!pdivisible_root(f).is_zero()) return false;
  return true;
}

std::vector<int> jumps_of_row(const Row& row) {
  std::vector<int> j;
  j.reserve(row.size());
  for (int e : row) j.push_back(e == 0 ? -1 : e - 1);
  return j;
}

BranchAnalysis analyze_branching(const WittVector& u) {
  BranchAnalysis out;
  out.reduction = reduce(u);
  const WittVector& f = out.reduction.reduced;
  const unsigned n = f.length();
  const std::uint32_t p = f.prime();
  if (f[0].poles().empty()) throw OrderDropError();

  std::vector<Place> points;
  for (unsigned l = 0; l < n; ++l)
    for (const auto& P : f[l].poles()) points.push_back(P);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Row> rows;
  out.profile.swan_total.assign(n, 0);
  for (const auto& P : points) {
    BranchPointProfile prof;
    prof.point = P;
    Row row(n, 0);
    int first_branched = -1;
    for (unsigned i = 0; i < n; ++i) {
      long long jump = -1;
      for (unsigned l = 0; l <= i; ++l) {
        const int ord = f[l].pole_order(P);
        if (ord > 0) jump = std::max(jump, ipow(p, i - l) * ord);
      }
      prof.jumps.push_back(static_cast<int>(jump));
      row[i] = jump < 0 ? 0 : static_cast<int>(jump + 1);
      if (jump >= 0 && first_branched < 0) first_branched = static_cast<int>(i);
    }
    prof.inertia_exponent = static_cast<unsigned>(static_cast<int>(n) - first_branched);
    long long s = 0;
    for (unsigned i = 0; i < n; ++i) {
      s += row[i] * (ipow(p, i + 1) - ipow(p, i));
      prof.swan.push_back(s);
      out.profile.swan_total[i] += s;
    }
    rows.push_back(std::move(row));
    out.profile.points.push_back(std::move(prof));
  }
  out.datum = BranchingDatum(p, std::move(rows), std::move(points));
  return out;
}

BranchingDatum branching_datum(const WittVector& u) { return analyze_branching(u).datum; }

std::vector<long long> genus_vector(const BranchingDatum& d, long long base_genus) {
  if (base_genus < 0) throw InvalidDatumError("base genus must be nonnegative");
  const auto cond = d.conductors();
  std::vector<long long> g;
  long long acc = 0;
  for (unsigned i = 1; i <= d.n; ++i) {
    acc += cond[i - 1] * (ipow(d.p, i) - ipow(d.p, i - 1));
    const long long twice = 2 + 2 * ipow(d.p, i) * (base_genus - 1) + acc;
    if (twice < 0 || twice % 2 != 0)
      throw InvalidDatumError("datum " + d.rows_string() + " gives a non-integral or negative genus at level " +
                              std::to_string(i));
    g.push_back(twice / 2);
  }
  return g;
}

PRankReport p_rank_vector(const BranchingDatum& d) {
  PRankReport rep;
  const unsigned n = d.n;
  auto first_nonzero = [](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0) return static_cast<int>(i) + 1;
    return 0;
  };
  for (unsigned i = 1; i <= n; ++i) {
    long long sigma = 1 - ipow(d.p, i);
    for (const auto& r : d.rows) {
      const int f = first_nonzero(r);
      if (f == 0 || f > static_cast<int>(i)) continue;
      const unsigned k = i - static_cast<unsigned>(f) + 1;
      sigma += ipow(d.p, i - k) * (ipow(d.p, k) - 1);
    }
    rep.sigma.push_back(sigma);
  }
  rep.inertia_counts.assign(n, 0);
  rep.column_support.assign(n, 0);
  for (const auto& r : d.rows) {
    const int f = first_nonzero(r);
    if (f == 0) continue;
    rep.inertia_counts[n - static_cast<unsigned>(f)]++;  // exponent k = n - f + 1
    for (unsigned i = 0; i < n; ++i)
      if (r[i] != 0) rep.column_support[i]++;
  }
  for (unsigned i = 1; i <= n; ++i) {
    int s = 0;
    for (unsigned k = n - i + 1; k <= n; ++k) s += rep.inertia_counts[k - 1];
    if (s != rep.column_support[i - 1])
      throw InvalidDatumError("datum " + d.rows_string() + " has a nonzero entry after a zero in some row");
  }
  return rep;
}

long long swan(const BranchingDatum& d, std::size_t row, unsigned level) {
  if (row >= d.rows.size()) throw ShapeError("row index out of range");
  if (level == 0 || level > d.n) throw ShapeError("level out of range");
  long long s = 0;
  for (unsigned l = 1; l <= level; ++l) s += d.rows[row][l - 1] * (ipow(d.p, l) - ipow(d.p, l - 1));
  return s;
}

std::vector<Place> default_points(const Field& field, std::size_t r) {
  const std::size_t q = field.base_order();
  if (r > q + 1)
    throw Error("need " + std::to_string(r) + " branch points but " + field.name() + " offers only " +
                std::to_string(q + 1));
  std::vector<Place> pts;
  for (std::size_t i = 0; i < r && i < q; ++i)
    pts.push_back(Place::finite(FieldValue::from_index(field, static_cast<GfIndex>(i))));
  if (r == q + 1) pts.push_back(Place::infinity());
  return pts;
}

WittVector construct_cover(const BranchingDatum& d, const Field& field) {
  if (field.characteristic() != d.p) throw FieldMismatchError("field characteristic differs from the datum's prime");
  if (d.rows.empty() || d.n == 0) throw InvalidDatumError("empty branching datum");
  const std::vector<Place> points = d.has_points() ? d.points : default_points(field, d.rows.size());
  {
    std::vector<Place> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidDatumError("branch points are not distinct");
  }
  std::vector<RatFunc> f(d.n, RatFunc(field));
  for (std::size_t j = 0; j < d.rows.size(); ++j) {
    for (unsigned i = 0; i < d.n; ++i) {
      const int e = d.rows[j][i];
      if (e < 2 || e % static_cast<int>(d.p) == 1) continue;
      const int u = e - 1;
      if (points[j].is_infinity()) {
        f[i] += RatFunc(Poly::monomial(FieldValue::one(field), u));
      } else {
        FieldValue P = points[j].value();
        if (P.field() != field) P = FieldValue::embed(field, P);
        f[i] += RatFunc::inverse_linear_power(P, u);
      }
    }
  }
  return WittVector(std::move(f));
}

bool same_cover(const WittVector& u, const WittVector& v) {
  if (u.length() != v.length()) throw ShapeError("Witt length mismatch");
  if (u.field() != v.field()) throw FieldMismatchError("Witt vectors over different fields");
  const Field& f = u.field();
  if (f.is_parametric()) throw UnsupportedError("same_cover needs a finite coefficient field, got " + f.name());
  const unsigned n = u.length();
  const std::uint32_t p = f.characteristic();
  if (reduce(u).reduced[0].poles().empty() || reduce(v).reduced[0].poles().empty()) throw OrderDropError();

  // The image of the isogeny on constant vectors, by enumeration.
  const std::uint64_t q = f.base_order();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) {
    total *= q;
    if (total > 1'000'000) throw LimitError("constant class enumeration too large for " + f.name());
  }
  std::set<std::vector<GfIndex>> image;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<FieldValue> c, fc;
    std::uint64_t rest = code;
    for (unsigned i = 0; i < n; ++i) {
      c.push_back(FieldValue::from_index(f, static_cast<GfIndex>(rest % q)));
      fc.push_back(c.back().frobenius());
      rest /= q;
    }
    std::vector<GfIndex> key;
    for (const auto& x : witt_sub_constants(fc, c)) key.push_back(x.index());
    image.insert(std::move(key));
  }

  const long long order = ipow(p, n);
  for (long long m = 1; m < order; ++m) {
    if (m % p == 0) continue;
    const WittVector w = reduce(u - v.int_mul(m)).reduced;
    std::vector<GfIndex> key;
    bool constant = true;
    for (const auto& e : w.entries()) {
      if (!e.is_constant()) {
        constant = false;
        break;
      }
      key.push_back(e.is_zero() ? 0 : e.constant_value().index());
    }
    if (constant && image.count(key)) return true;
  }
  return false;
}

BranchingDatum truncate(const BranchingDatum& d, unsigned i) { return d.truncate(i); }
WittVector truncate(const WittVector& u, unsigned i) { return u.truncate(i); }

}  // namespace asw
