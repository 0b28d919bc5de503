#include <asw/errors.hpp>
#include <asw/parse.hpp>
#include <asw/ramify.hpp>
#include <gtest/gtest.h>

#include <map>

#include "generators.hpp"
#include "oracles.hpp"

using namespace asw;
using asw::testing::Rng;

namespace {

WittVector wv(const Field& f, std::initializer_list<const char*> entries) {
  std::vector<RatFunc> e;
  for (const char* s : entries) e.push_back(parse_ratfunc(s, f));
  return WittVector(std::move(e));
}

Place pt(const Field& f, const char* s) { return parse_place(s, f); }

using asw::testing::deuring_shafarevich;
using asw::testing::ipow;

// Random valid row of length n: zero prefix, then conductors obeying the
// level-to-level growth rules.
Row random_row(std::uint32_t p, unsigned n, Rng& rng) {
  const int p_ = static_cast<int>(p);
  Row row(n, 0);
  const unsigned start = static_cast<unsigned>(asw::testing::uniform(rng, 0, static_cast<int>(n) - 1));
  int e = 0;
  do e = asw::testing::uniform(rng, 2, 3 * p_ + 2);
  while (e % p_ == 1);
  row[start] = e;
  for (unsigned i = start + 1; i < n; ++i) {
    const int low = p_ * row[i - 1] - p_ + 1;
    if (asw::testing::uniform(rng, 0, 2) == 0) {
      row[i] = low;
    } else {
      int v = 0;
      do v = low + asw::testing::uniform(rng, 1, 2 * p_);
      while (v % p_ == 1);
      row[i] = v;
    }
  }
  return row;
}

BranchingDatum random_datum(std::uint32_t p, unsigned n, Rng& rng, int max_rows) {
  const int r = asw::testing::uniform(rng, 1, max_rows);
  std::vector<Row> rows;
  bool full = false;
  for (int j = 0; j < r; ++j) {
    rows.push_back(random_row(p, n, rng));
    full = full || rows.back()[0] != 0;
  }
  while (!full) {
    rows[0] = random_row(p, n, rng);
    full = rows[0][0] != 0;
  }
  return BranchingDatum(p, rows);
}

}  // namespace

TEST(Reduce, AlreadyReducedIsUnchanged) {
  const Field f5 = Field::prime(5);
  const WittVector u = wv(f5, {"1/x + 1/(x-1)", "1/(x-1)^7 + 1/(x-2)^12"});
  EXPECT_TRUE(is_reduced(u));
  const ReduceResult r = reduce(u);
  EXPECT_EQ(r.reduced, u);
  EXPECT_TRUE(r.correction.is_zero());
}

TEST(Reduce, CubeAtCharThree) {
  const Field f3 = Field::prime(3);
  const ReduceResult r = reduce(wv(f3, {"x^3 + x"}));
  EXPECT_EQ(r.reduced, wv(f3, {"2*x"}));
  EXPECT_EQ(r.correction, wv(f3, {"x"}));
  EXPECT_EQ(r.reduced + asw_isogeny(r.correction), wv(f3, {"x^3 + x"}));
}

TEST(Reduce, PoleOrderDivisibleByP) {
  const Field f2 = Field::prime(2);
  const WittVector u = wv(f2, {"1/x^2 + 1/(x-1)"});
  const ReduceResult r = reduce(u);
  EXPECT_TRUE(is_reduced(r.reduced));
  EXPECT_EQ(r.reduced, wv(f2, {"1/x + 1/(x-1)"}));
}

TEST(Reduce, CertificateAndIdempotence) {
  Rng rng(31);
  for (const char* name : {"F2", "F3", "F4", "F5", "F9"}) {
    const Field f = Field::parse(name);
    for (int it = 0; it < 40; ++it) {
      const unsigned n = static_cast<unsigned>(asw::testing::uniform(rng, 1, 3));
      const WittVector u = asw::testing::random_witt(f, n, rng, 2, 2 * static_cast<int>(f.characteristic()), 3);
      const ReduceResult r = reduce(u);
      ASSERT_TRUE(is_reduced(r.reduced)) << u.to_string();
      ASSERT_EQ(r.reduced + asw_isogeny(r.correction), u) << u.to_string();
      const ReduceResult again = reduce(r.reduced);
      ASSERT_EQ(again.reduced, r.reduced);
      ASSERT_TRUE(again.correction.is_zero());
    }
  }
}

TEST(Reduce, ParametricFamilyCharTwo) {
  const Field k = Field::parse("F2(t)");
  const WittVector u = wv(k, {"1/(x^2*(x - t^4))", "1/(x^3*(x - t^4)^2*(x - t^2)^2)"});
  const ReduceResult r = reduce(u);
  EXPECT_TRUE(is_reduced(r.reduced));
  EXPECT_EQ(r.reduced + asw_isogeny(r.correction), u);
  const BranchAnalysis a = analyze_branching(u);
  std::map<Place, Row> rows;
  std::map<Place, std::vector<int>> jumps;
  for (std::size_t j = 0; j < a.datum.rows.size(); ++j) rows[a.datum.points[j]] = a.datum.rows[j];
  for (const auto& bp : a.profile.points) jumps[bp.point] = bp.jumps;
  EXPECT_EQ(rows, (std::map<Place, Row>{{pt(k, "0"), {2, 3}}, {pt(k, "t^4"), {2, 3}}, {pt(k, "t^2"), {0, 2}}}));
  EXPECT_EQ(jumps[pt(k, "t^2")], (std::vector<int>{-1, 1}));
  EXPECT_EQ(jumps[pt(k, "t^4")], (std::vector<int>{1, 2}));
  EXPECT_EQ(a.datum.conductors(), (std::vector<int>{4, 8}));
}

TEST(BranchingDatum, CyclicOrderTwentyFive) {
  const Field f5 = Field::prime(5);
  const WittVector u = wv(f5, {"1/x + 1/(x-1)", "1/(x-1)^7 + 1/(x-2)^12"});
  const BranchAnalysis a = analyze_branching(u);
  EXPECT_EQ(a.datum.rows, (std::vector<Row>{{2, 6}, {2, 8}, {0, 13}}));
  EXPECT_EQ(a.datum.points, (std::vector<Place>{pt(f5, "0"), pt(f5, "1"), pt(f5, "2")}));
  EXPECT_EQ(a.datum.conductors(), (std::vector<int>{4, 27}));
  EXPECT_EQ(a.profile.points[2].jumps, (std::vector<int>{-1, 12}));
  EXPECT_EQ(a.profile.points[2].inertia_exponent, 1u);
  EXPECT_EQ(a.profile.points[0].inertia_exponent, 2u);
  EXPECT_EQ(a.profile.points[0].swan, (std::vector<long long>{8, 128}));
}

TEST(BranchingDatum, CharThreeExamples) {
  const Field f3 = Field::prime(3);
  const BranchingDatum m = branching_datum(wv(f3, {"x + 1/x^2", "0"}));
  EXPECT_EQ(m.rows, (std::vector<Row>{{3, 7}, {2, 4}}));
  EXPECT_EQ(m.points, (std::vector<Place>{pt(f3, "0"), Place::infinity()}));
  EXPECT_EQ(m.canonical().rows, (std::vector<Row>{{3, 7}, {2, 4}}));

  const BranchingDatum n = branching_datum(wv(f3, {"x", "x^5 + 1/x^5"}));
  EXPECT_EQ(n.rows, (std::vector<Row>{{0, 6}, {2, 6}}));
  EXPECT_EQ(n.points, (std::vector<Place>{pt(f3, "0"), Place::infinity()}));
}

TEST(BranchingDatum, OrderDrop) {
  const Field f3 = Field::prime(3);
  EXPECT_THROW(branching_datum(wv(f3, {"x^3 - x + 2", "1/x"})), OrderDropError);
}

TEST(BranchingDatum, InvariantUnderIsogenyShiftsAndUnits) {
  Rng rng(41);
  for (const char* name : {"F2", "F3", "F4", "F5"}) {
    const Field f = Field::parse(name);
    const std::uint32_t p = f.characteristic();
    for (int it = 0; it < 30; ++it) {
      const unsigned n = static_cast<unsigned>(asw::testing::uniform(rng, 1, 3));
      const WittVector u = asw::testing::random_witt(f, n, rng, 2, 2 * static_cast<int>(p), 2);
      if (reduce(u).reduced[0].poles().empty()) continue;
      const BranchingDatum d = branching_datum(u);
      const WittVector h = asw::testing::random_witt(f, n, rng, 2, 3, 2);
      ASSERT_EQ(branching_datum(u + asw_isogeny(h)), d);
      long long m = 0;
      do m = asw::testing::uniform(rng, 1, 200);
      while (m % p == 0);
      ASSERT_EQ(branching_datum(u.int_mul(m)), d) << m;
    }
  }
}

TEST(Genus, Examples) {
  EXPECT_EQ(genus_vector(BranchingDatum(3, {{2, 4}, {3, 7}})), (std::vector<long long>{3, 30}));
  EXPECT_EQ(genus_vector(BranchingDatum(3, {{2, 6}, {0, 6}})), (std::vector<long long>{0, 30}));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) EXPECT_EQ(genus_vector(BranchingDatum(p, {{2}})), (std::vector<long long>{0}));
  EXPECT_EQ(genus_vector(BranchingDatum(5, {{2, 6}, {2, 8}, {0, 13}})), (std::vector<long long>{4, 254}));
}

TEST(Genus, RejectsImpossibleData) {
  EXPECT_THROW(genus_vector(BranchingDatum(2, {{3}})), InvalidDatumError);
}

TEST(Genus, MatchesRiemannHurwitz) {
  Rng rng(43);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int it = 0; it < 80; ++it) {
      const unsigned n = static_cast<unsigned>(asw::testing::uniform(rng, 1, 3));
      const BranchingDatum d = random_datum(p, n, rng, 3);
      const long long gx = asw::testing::uniform(rng, 0, 2);
      const auto g = genus_vector(d, gx);
      for (unsigned i = 1; i <= n; ++i) {
        long long ram = 0;
        for (std::size_t j = 0; j < d.rows.size(); ++j) ram += swan(d, j, i);
        ASSERT_EQ(2 * g[i - 1] - 2, ipow(p, i) * (2 * gx - 2) + ram) << d.rows_string();
        ASSERT_EQ(g[i - 1], asw::testing::riemann_hurwitz_genus(d, i, gx)) << d.rows_string();
      }
    }
  }
}

TEST(Swan, Examples) {
  const BranchingDatum d(5, {{2, 6}, {2, 8}, {0, 13}});
  EXPECT_EQ(swan(d, 0, 2), 128);
  EXPECT_EQ(swan(d, 2, 1), 0);
  const BranchingDatum m(3, {{2, 4}, {3, 7}});
  EXPECT_EQ(swan(m, 0, 2) + swan(m, 1, 2), 76);
}

TEST(PRank, Examples) {
  const PRankReport r = p_rank_vector(BranchingDatum(5, {{2, 6}, {2, 8}, {0, 13}}));
  EXPECT_EQ(r.sigma.back(), 44);
  EXPECT_EQ(r.sigma.front(), 4);
  EXPECT_EQ(r.inertia_counts, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.column_support, (std::vector<int>{2, 3}));
  for (std::uint32_t p : {2u, 3u, 5u}) EXPECT_EQ(p_rank_vector(BranchingDatum(p, {{4}})).sigma, (std::vector<long long>{0}));
}

TEST(PRank, MatchesDeuringShafarevich) {
  Rng rng(47);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int it = 0; it < 80; ++it) {
      const unsigned n = static_cast<unsigned>(asw::testing::uniform(rng, 1, 3));
      const BranchingDatum d = random_datum(p, n, rng, 4);
      const PRankReport r = p_rank_vector(d);
      ASSERT_EQ(r.sigma.size(), n);
      for (unsigned i = 1; i <= n; ++i) ASSERT_EQ(r.sigma[i - 1], deuring_shafarevich(d, i)) << d.rows_string();
      ASSERT_EQ(r.column_support.back(), static_cast<int>(d.rows.size()));
    }
  }
}

TEST(Construct, Examples) {
  const Field f5 = Field::prime(5);
  const BranchingDatum d(5, {{2, 6}, {2, 8}, {0, 13}}, {pt(f5, "0"), pt(f5, "1"), pt(f5, "2")});
  EXPECT_EQ(branching_datum(construct_cover(d, f5)), d);

  const BranchingDatum one(5, {{2}}, {pt(f5, "0")});
  EXPECT_EQ(construct_cover(one, f5), wv(f5, {"1/x"}));

  const Field f2 = Field::prime(2);
  const BranchingDatum two(2, {{2, 4}, {2, 4}}, {pt(f2, "0"), pt(f2, "1")});
  EXPECT_EQ(branching_datum(construct_cover(two, f2)), two);
}

TEST(Construct, RoundTripOnRandomData) {
  Rng rng(53);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Field f = Field::finite(p, p == 5 ? 1u : 2u);
    for (int it = 0; it < 70; ++it) {
      const unsigned n = static_cast<unsigned>(asw::testing::uniform(rng, 1, 3));
      BranchingDatum d = random_datum(p, n, rng, 3);
      d.points = default_points(f, d.rows.size());
      const WittVector u = construct_cover(d, f);
      BranchingDatum back = branching_datum(u);
      // Compare as (point, row) sets.
      std::vector<std::pair<Place, Row>> a, b;
      for (std::size_t j = 0; j < d.rows.size(); ++j) a.emplace_back(d.points[j], d.rows[j]);
      for (std::size_t j = 0; j < back.rows.size(); ++j) b.emplace_back(back.points[j], back.rows[j]);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      ASSERT_EQ(a, b) << d.rows_string();
    }
  }
}

TEST(Truncate, Examples) {
  const Field f5 = Field::prime(5);
  const BranchingDatum d(5, {{2, 6}, {2, 8}, {0, 13}}, {pt(f5, "0"), pt(f5, "1"), pt(f5, "2")});
  const BranchingDatum t = truncate(d, 1);
  EXPECT_EQ(t.rows, (std::vector<Row>{{2}, {2}}));
  EXPECT_EQ(t.points, (std::vector<Place>{pt(f5, "0"), pt(f5, "1")}));
  EXPECT_EQ(truncate(d, 2), d);
  const WittVector u = wv(f5, {"1/x + 1/(x-1)", "1/(x-1)^7 + 1/(x-2)^12"});
  EXPECT_EQ(truncate(branching_datum(u), 1), branching_datum(truncate(u, 1)));
}

TEST(Truncate, CommutesWithDatum) {
  Rng rng(59);
  for (const char* name : {"F2", "F3", "F5"}) {
    const Field f = Field::parse(name);
    for (int it = 0; it < 30; ++it) {
      const WittVector u = asw::testing::random_witt(f, 3, rng, 2, 6, 2);
      if (reduce(u).reduced[0].poles().empty()) continue;
      const BranchingDatum d = branching_datum(u);
      for (unsigned i = 1; i <= 3; ++i) ASSERT_EQ(truncate(d, i), branching_datum(truncate(u, i)));
    }
  }
}

TEST(DefaultPoints, Order) {
  const Field f2 = Field::prime(2);
  EXPECT_EQ(default_points(f2, 3), (std::vector<Place>{pt(f2, "0"), pt(f2, "1"), Place::infinity()}));
  EXPECT_THROW(default_points(f2, 4), Error);
}
