#include "asw/deform.hpp"

#include <algorithm>

#include "asw/errors.hpp"

namespace asw {

namespace {

long long ipow(long long b, unsigned e) {
  long long r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<long long> row_swan(const Row& row, std::uint32_t p) {
  std::vector<long long> s(row.size(), 0);
  long long acc = 0;
  for (std::size_t l = 0; l < row.size(); ++l) {
    acc += row[l] * (ipow(p, static_cast<unsigned>(l + 1)) - ipow(p, static_cast<unsigned>(l)));
    s[l] = acc;
  }
  return s;
}

bool is_monomial(const GfPoly& g) {
  return std::count_if(g.begin(), g.end(), [](GfIndex c) { return c != 0; }) == 1;
}

// Substitute t -> t^p in every coefficient.
FieldValue inflate(const FieldValue& c, std::uint32_t p) {
  if (c.is_zero()) return c;
  auto spread = [p](const GfPoly& a) {
    GfPoly r((a.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i * p] = a[i];
    return r;
  };
  return FieldValue::fraction(c.field(), spread(c.numerator()), spread(c.denominator()));
}

Poly inflate(const Poly& f, std::uint32_t p) {
  std::vector<FieldValue> cs;
  for (const auto& c : f.coeffs()) cs.push_back(inflate(c, p));
  return Poly(f.field(), std::move(cs));
}

WittVector inflate(const WittVector& u) {
  const std::uint32_t p = u.prime();
  std::vector<RatFunc> out;
  for (const auto& f : u.entries()) {
    std::vector<FieldValue> hints;
    for (const auto& h : f.hints()) hints.push_back(inflate(h, p));
    out.push_back(RatFunc(inflate(f.numerator(), p), inflate(f.denominator(), p)).with_hints(std::move(hints)));
  }
  return WittVector(std::move(out));
}

// Inverse of `inflate` by p^k steps when every exponent of t is divisible.
std::optional<FieldValue> deflate(const FieldValue& c, long long power) {
  if (c.is_zero() || power == 1) return c;
  auto shrink = [power](const GfPoly& a) -> std::optional<GfPoly> {
    GfPoly r((a.size() - 1) / static_cast<std::size_t>(power) + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (i % static_cast<std::size_t>(power) != 0) return std::nullopt;
      r[i / static_cast<std::size_t>(power)] = a[i];
    }
    return r;
  };
  auto num = shrink(c.numerator());
  auto den = shrink(c.denominator());
  if (!num || !den) return std::nullopt;
  return FieldValue::fraction(c.field(), std::move(*num), std::move(*den));
}

}  // namespace

BranchingDatum pop_split(const Row& row, std::uint32_t p) {
  if (!valid_row(row, p)) throw InvalidDatumError("row " + row_string(row) + " is not valid for p = " + std::to_string(p));
  const int ip = static_cast<int>(p);
  const std::size_t n = row.size();
  const EssentialParts ep = essential_parts(row, p);
  std::vector<Row> rows;
  Row first(n, 0);
  int jump = 0;
  bool started = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] == 0) continue;
    jump = started ? ip * jump + ep.eps[i] : ep.eps[i];
    started = true;
    first[i] = jump + 1;
  }
  rows.push_back(first);
  for (std::size_t j = 0; j < n; ++j)
    for (int k = 0; k < ep.q[j]; ++k) {
      Row extra(n, 0);
      int v = ip;
      for (std::size_t i = j; i < n; ++i, v *= ip) extra[i] = v;
      rows.push_back(std::move(extra));
    }
  return BranchingDatum(p, std::move(rows));
}

WittVector split_family(const WittVector& special, const BranchingDatum& target, const std::vector<FieldValue>& points,
                        std::size_t anchor, const Field& family_field) {
  const unsigned n = special.length();
  if (target.n != n) throw ShapeError("target datum has " + std::to_string(target.n) + " levels, vector " + std::to_string(n));
  if (points.size() != target.rows.size())
    throw ShapeError(std::to_string(points.size()) + " points for " + std::to_string(target.rows.size()) + " rows");
  if (anchor >= points.size()) throw ShapeError("anchor row out of range");
  if (!family_field.is_parametric() || family_field.base() != special.field())
    throw FieldMismatchError("family field " + family_field.name() + " is not a parametric field over " +
                             special.field().name());
  std::vector<FieldValue> pts;
  for (const auto& P : points) pts.push_back(P.field() == family_field ? P : FieldValue::embed(family_field, P));

  std::vector<RatFunc> entries;
  for (unsigned i = 0; i < n; ++i) {
    const RatFunc& f = special[i];
    if (f.is_zero()) {
      entries.emplace_back(family_field);
      continue;
    }
    const Poly& den = f.denominator();
    const int D = den.degree();
    if (den != Poly::monomial(FieldValue::one(f.field()), D) || f.numerator().degree() >= std::max(D, 1))
      throw InvalidDatumError("entry " + std::to_string(i + 1) + " = " + f.to_string() + " is not supported at x = 0 alone");
    Poly split = Poly::constant(FieldValue::one(family_field));
    int total = 0;
    for (std::size_t r = 0; r < pts.size(); ++r) {
      const int e = target.rows[r][i];
      if (e == 0) continue;
      const int k = r == anchor ? e - 1 : e;
      total += k;
      split = split * Poly::linear(pts[r]).pow(static_cast<unsigned>(k));
    }
    if (total != D)
      throw InvalidDatumError("level " + std::to_string(i + 1) + ": split exponents sum to " + std::to_string(total) +
                              " but the special entry has a pole of order " + std::to_string(D));
    entries.push_back(RatFunc(f.numerator().embed(family_field), split).with_hints(pts));
  }
  return WittVector(std::move(entries));
}

WittVector pop_family(const WittVector& special, const std::vector<FieldValue>& new_points) {
  const BranchingDatum d = branching_datum(special);
  if (d.rows.size() != 1 || d.points.front() != Place::finite(FieldValue::zero(special.field())))
    throw InvalidDatumError("pop family needs a cover branched only at x = 0");
  const BranchingDatum target = pop_split(d.rows.front(), d.p);
  if (target.rows.size() == 1) return special;
  if (new_points.size() != target.rows.size() - 1)
    throw ShapeError("pop split has " + std::to_string(target.rows.size() - 1) + " new rows but " +
                     std::to_string(new_points.size()) + " points were planned");
  const Field family_field = new_points.front().field();
  std::vector<FieldValue> points{FieldValue::zero(family_field)};
  points.insert(points.end(), new_points.begin(), new_points.end());
  WittVector family = split_family(special, target, points, 0, family_field);
  const DeformationCertificate cert = verify_deformation(special, family, d.canonical(), target.canonical());
  if (!cert.valid)
    throw ConstructionError("pop family construction failed: " + cert.failure + "; generic datum " +
                            cert.generic_datum.rows_string());
  return family;
}

std::string type_matrix_string(const BranchingDatum& d) {
  return d.rows.size() == 1 ? row_string(d.rows.front()) : d.rows_string();
}

std::string DeformationCertificate::type_string() const {
  return type_matrix_string(m) + " -> " + type_matrix_string(n_type);
}

Place limit_point(const Place& generic, const Field& special_field) {
  if (generic.is_infinity()) return generic;
  const FieldValue& v = generic.value();
  if (!v.field().is_parametric()) return generic;
  if (v.t_valuation() < 0) return Place::infinity();
  return Place::finite(v.specialize(FieldValue::zero(special_field)));
}

DeformationCertificate verify_deformation(const WittVector& special, const WittVector& family,
                                          const std::optional<BranchingDatum>& claimed_m,
                                          const std::optional<BranchingDatum>& claimed_n) {
  DeformationCertificate c;
  c.p = special.prime();
  c.n = special.length();
  c.special = special;
  c.family = family;
  const Field& sf = special.field();
  if (sf.is_parametric()) throw UnsupportedError("special fiber must live over a finite field");
  if (family.prime() != c.p || family.length() != c.n) throw ShapeError("special vector and family differ in shape");
  const Field& ff = family.field();
  if (ff != sf && !(ff.is_parametric() && ff.base() == sf))
    throw FieldMismatchError("family field " + ff.name() + " does not specialize to " + sf.name());

  auto fail = [&](std::string why) {
    if (c.failure.empty()) c.failure = std::move(why);
  };

  const BranchAnalysis sa = analyze_branching(special);
  c.special_datum = sa.datum;
  c.m = sa.datum.canonical();

  // Special fiber.
  WittVector fiber;
  bool have_fiber = true;
  try {
    fiber = family.specialize(FieldValue::zero(sf));
  } catch (const SpecializationPoleError& e) {
    have_fiber = false;
    fail(std::string("special fiber undefined: ") + e.what());
  }
  if (have_fiber) {
    try {
      c.fiber_check = "same_cover";
      c.fiber_matches = same_cover(fiber, special);
    } catch (const LimitError&) {
      c.fiber_check = "branching datum";
      c.fiber_matches = branching_datum(fiber) == c.special_datum;
    } catch (const OrderDropError&) {
      c.fiber_matches = false;
    }
    if (!c.fiber_matches) fail("special fiber of the family is not the special cover (" + c.fiber_check + ")");
  }

  WittVector generic = family;
  std::optional<BranchAnalysis> ga;
  for (unsigned k = 0; !ga; ++k) {
    try {
      ga = analyze_branching(generic);
    } catch (const UnsupportedError&) {
      if (!ff.is_parametric() || k > 2 * c.n) throw;
      generic = inflate(generic);
      c.parameter_power *= c.p;
    }
  }
  c.generic_datum = ga->datum;
  if (c.parameter_power > 1) {
    std::vector<Place> pts;
    for (const auto& P : c.generic_datum.points) {
      if (P.is_infinity()) {
        pts.push_back(P);
        continue;
      }
      if (auto v = deflate(P.value(), c.parameter_power)) pts.push_back(Place::finite(*v));
    }
    if (pts.size() == c.generic_datum.points.size()) {
      c.generic_datum.points = std::move(pts);
      c.parameter_power = 1;
    }
  }
  c.n_type = ga->datum.canonical();

  if (claimed_m && claimed_m->canonical().rows != c.m.rows)
    fail("special datum " + c.m.rows_string() + " differs from claimed " + claimed_m->canonical().rows_string());
  if (claimed_n && claimed_n->canonical().rows != c.n_type.rows)
    fail("generic datum " + c.n_type.rows_string() + " differs from claimed " + claimed_n->canonical().rows_string());

  // Clusters by specialization of the generic branch points.
  for (std::size_t j = 0; j < c.special_datum.rows.size(); ++j) {
    Cluster cl;
    cl.special_point = c.special_datum.points[j];
    cl.special_row = c.special_datum.rows[j];
    c.clusters.push_back(std::move(cl));
  }
  for (std::size_t j = 0; j < c.generic_datum.rows.size(); ++j) {
    const Place lim = limit_point(c.generic_datum.points[j], sf);
    auto it = std::find_if(c.clusters.begin(), c.clusters.end(), [&](const Cluster& cl) { return cl.special_point == lim; });
    if (it == c.clusters.end()) {
      Cluster cl;
      cl.special_point = lim;
      cl.special_row = Row(c.n, 0);
      c.clusters.push_back(std::move(cl));
      it = std::prev(c.clusters.end());
    }
    it->generic_points.push_back(c.generic_datum.points[j]);
    it->generic_rows.push_back(c.generic_datum.rows[j]);
  }
  for (auto& cl : c.clusters) {
    cl.special_swan = row_swan(cl.special_row, c.p);
    cl.generic_swan.assign(c.n, 0);
    for (const auto& r : cl.generic_rows) {
      const auto s = row_swan(r, c.p);
      for (unsigned i = 0; i < c.n; ++i) cl.generic_swan[i] += s[i];
    }
    cl.swan_ok = cl.special_swan == cl.generic_swan;
    if (!cl.swan_ok) {
      std::string lv;
      for (unsigned i = 0; i < c.n; ++i)
        if (cl.special_swan[i] != cl.generic_swan[i]) {
          lv = std::to_string(i + 1);
          break;
        }
      fail("Swan conductor at level " + lv + " not conserved at " + cl.special_point.to_string() + ": special " +
           std::to_string(cl.special_swan[std::stoul(lv) - 1]) + ", generic " +
           std::to_string(cl.generic_swan[std::stoul(lv) - 1]));
    }
  }

  c.refines_ok = refines(c.m, c.n_type);
  if (!c.refines_ok) fail("generic datum " + c.n_type.rows_string() + " does not refine " + c.m.rows_string());
  c.valid = c.failure.empty();
  return c;
}

ExactnessReport exactness(const RatFunc& f) {
  ExactnessReport r;
  const std::uint32_t p = f.field().characteristic();
  const PartialFractions pf = f.partial_fractions();
  for (const auto& [P, cs] : pf.poles)
    for (std::size_t l = 1; l <= cs.size(); ++l)
      if (l % p == 1 % p && !cs[l - 1].is_zero()) r.obstructions.push_back({Place::finite(P), static_cast<int>(l), cs[l - 1]});
  const auto& poly = pf.polynomial.coeffs();
  for (std::size_t i = 0; i < poly.size(); ++i)
    if ((i + 1) % p == 0 && !poly[i].is_zero()) r.obstructions.push_back({Place::infinity(), static_cast<int>(i), poly[i]});
  r.exact = r.obstructions.empty();
  return r;
}

std::string ExactnessSearch::verdict() const {
  if (closure_certified) return "no a; closure-certified";
  if (all_nonzero) return "all a != 0";
  if (roots.empty()) return "no a in F_" + std::to_string(p) + "^m for m <= " + std::to_string(max_degree) + "; closure open";
  std::string s = "a in {";
  for (std::size_t i = 0; i < roots.size(); ++i) s += (i ? ", " : "") + roots[i];
  return s + "}; closure open";
}

ExactnessSearch exactness_search(int u, int v, std::uint32_t p, unsigned max_degree) {
  if (u < 1 || v < 1) throw InvalidDatumError("exponents must be positive");
  ExactnessSearch s;
  s.p = p;
  s.u = u;
  s.v = v;
  s.max_degree = max_degree;
  const Field base = Field::prime(p);
  const Field k = Field::parametric(base, 'a');
  const FieldValue a = FieldValue::parameter(k);
  const RatFunc f = RatFunc::inverse_linear_power(FieldValue::zero(k), u) * RatFunc::inverse_linear_power(a, v);
  const ExactnessReport rep = exactness(f);
  const FieldDescriptor& bd = base.descriptor();
  GfPoly g;
  for (const auto& ob : rep.obstructions) {
    const GfPoly& num = ob.coefficient.numerator();
    s.obstruction_polynomials.push_back(gf::to_string(bd, num, 'a'));
    g = g.empty() ? gf::monic(bd, num) : gf::gcd(bd, g, num);
  }
  if (rep.obstructions.empty()) {
    s.all_nonzero = true;
    s.gcd = "0";
    return s;
  }
  s.gcd = gf::to_string(bd, g, 'a');
  if (is_monomial(g)) {
    s.closure_certified = true;
    return s;
  }
  for (unsigned m = 1; m <= max_degree; ++m) {
    const Field fm = Field::finite(p, m);
    for (GfIndex z = 1; z < fm.base_order(); ++z) {
      const FieldValue zv = FieldValue::from_index(fm, z);
      // Report each root once, in its smallest field.
      unsigned min_deg = 1;
      for (FieldValue w = zv.frobenius(); w != zv; w = w.frobenius()) ++min_deg;
      if (min_deg != m) continue;
      FieldValue acc = FieldValue::zero(fm);
      for (std::size_t i = g.size(); i-- > 0;) acc = acc * zv + FieldValue::from_int(fm, g[i]);
      if (acc.is_zero()) s.roots.push_back(zv.to_string() + " in " + fm.name());
    }
  }
  return s;
}

}  // namespace asw
