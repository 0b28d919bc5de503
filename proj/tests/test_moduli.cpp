#include <asw/errors.hpp>
#include <asw/moduli.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"

using namespace asw;

namespace {

using Matrix = std::vector<Row>;

// The partition conditions read literally, plus "row is nonzero".
bool literal_row_ok(const Row& row, int p) {
  if (std::all_of(row.begin(), row.end(), [](int e) { return e == 0; })) return false;
  if (row[0] % p == 1) return false;
  for (std::size_t j = 1; j < row.size(); ++j) {
    const int low = p * row[j - 1] - p + 1;
    if (row[j] < low) return false;
    if (row[j] > low && std::gcd(row[j] - low, p) != 1) return false;
  }
  return true;
}

void box_rows(const std::vector<int>& d, std::size_t i, Row& cur, std::vector<Row>& out) {
  if (i == d.size()) {
    if (std::any_of(cur.begin(), cur.end(), [](int e) { return e != 0; })) out.push_back(cur);
    return;
  }
  for (int e = 0; e <= d[i]; ++e) {
    cur[i] = e;
    box_rows(d, i + 1, cur, out);
  }
}

void compositions(const std::vector<Row>& rows, std::size_t start, std::vector<int>& rem, Matrix& cur,
                  std::vector<Matrix>& out) {
  if (std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; })) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = start; k < rows.size(); ++k) {
    bool fits = true;
    for (std::size_t i = 0; i < rem.size(); ++i) fits = fits && rows[k][i] <= rem[i];
    if (!fits) continue;
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= rows[k][i];
    cur.push_back(rows[k]);
    compositions(rows, k, rem, cur, out);
    cur.pop_back();
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] += rows[k][i];
  }
}

// Generate every multiset of nonzero vectors bounded by d with column sums d,
// then keep those whose rows all satisfy the literal conditions.
std::set<Matrix> brute_force_omega(const std::vector<int>& d, int p) {
  std::vector<Row> rows;
  Row cur(d.size(), 0);
  box_rows(d, 0, cur, rows);
  std::vector<int> rem = d;
  Matrix m;
  std::vector<Matrix> all;
  compositions(rows, 0, rem, m, all);
  std::set<Matrix> out;
  for (auto& mat : all) {
    if (!std::all_of(mat.begin(), mat.end(), [&](const Row& r) { return literal_row_ok(r, p); })) continue;
    std::sort(mat.begin(), mat.end(), std::greater<>());
    out.insert(mat);
  }
  return out;
}

std::set<Matrix> as_set(const std::vector<BranchingDatum>& data) {
  std::set<Matrix> s;
  for (const auto& m : data) s.insert(m.rows);
  return s;
}

using asw::testing::coefficient_count;

std::vector<std::vector<int>> corpus(std::uint32_t p, int bound) { return asw::testing::tuple_corpus(p, bound); }

const BranchingDatum kM(2, {{4, 8}});
const BranchingDatum kN(2, {{2, 3}, {2, 3}, {0, 2}});
const BranchingDatum kQ(2, {{2, 4}, {2, 4}});

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate_datum(kN).valid);
  EXPECT_TRUE(validate_datum(kN, std::vector<int>{4, 8}).valid);
  const Validation bad = validate_datum(BranchingDatum(2, {{3, 4}}));
  EXPECT_FALSE(bad.valid);
  EXPECT_TRUE(bad.violates(2));
  EXPECT_TRUE(validate_datum(BranchingDatum(5, {{5, 25}})).valid);
}

TEST(Validate, NamesFirstViolatedCondition) {
  EXPECT_EQ(validate_datum(BranchingDatum(3, {{4, 10}})).first_condition, 1);
  EXPECT_EQ(validate_datum(BranchingDatum(3, {{2, 3}})).first_condition, 2);
  EXPECT_EQ(validate_datum(BranchingDatum(3, {{2, 7}})).first_condition, 3);
  EXPECT_EQ(validate_datum(BranchingDatum(3, {{2, 5}}), std::vector<int>{2, 6}).first_condition, 4);
  EXPECT_EQ(validate_datum(BranchingDatum(3, {{0, 0}})).first_condition, 5);
  EXPECT_EQ(validate_datum(BranchingDatum(3, {{2, 6}}), std::vector<int>{2, 6}).first_condition, 0);
  const Validation v = validate_datum(BranchingDatum(2, {{3, 4}}));
  EXPECT_EQ(v.first_condition, 1);
  EXPECT_EQ(v.diagnostics.front().rfind("condition 1:", 0), 0u);
}

TEST(Validate, AgreesWithLiteralConditionsOnBox) {
  for (int p : {2, 3, 5})
    for (int a = 0; a <= 12; ++a)
      for (int b = 0; b <= 40; ++b) {
        const Row r{a, b};
        EXPECT_EQ(valid_row(r, static_cast<std::uint32_t>(p)), literal_row_ok(r, p)) << p << " " << a << "," << b;
      }
}

TEST(Enumerate, FourEightAtTwo) {
  const auto omega = enumerate_partitions({4, 8}, 2);
  EXPECT_EQ(as_set(omega), (std::set<Matrix>{kM.rows, kN.rows, kQ.rows}));
  EXPECT_EQ(omega.front().rows, kM.rows);
}

TEST(Enumerate, SmallestTuple) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) EXPECT_EQ(as_set(enumerate_partitions({2}, p)), (std::set<Matrix>{{{2}}}));
}

TEST(Enumerate, InadmissibleTuple) {
  EXPECT_THROW(enumerate_partitions({0}, 3), InadmissibleError);
  EXPECT_THROW(enumerate_partitions({4, 5}, 3), InadmissibleError);
  EXPECT_NO_THROW(enumerate_partitions({4, 9}, 3));
}

TEST(Enumerate, SevenAtThreeMatchesBruteForce) {
  EXPECT_EQ(as_set(enumerate_partitions({7}, 3)), brute_force_omega({7}, 3));
}

TEST(Enumerate, MatchesBruteForceExhaustively) {
  int checked = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const auto& d : corpus(p, 16)) {
      ASSERT_EQ(as_set(enumerate_partitions(d, p)), brute_force_omega(d, static_cast<int>(p))) << p;
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
}

TEST(Enumerate, EveryVertexValidWithCorrectSums) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 24))
      for (const auto& m : enumerate_partitions(d, p)) {
        const Validation v = validate_datum(m, d);
        ASSERT_TRUE(v.valid) << m.rows_string() << " " << (v.diagnostics.empty() ? "" : v.diagnostics.front());
      }
}

TEST(Refines, Examples) {
  EXPECT_TRUE(refines(BranchingDatum(3, {{7, 21}, {3, 8}}), BranchingDatum(3, {{4, 10}, {3, 11}, {3, 8}})));
  EXPECT_TRUE(refines(kN, kN));
  EXPECT_FALSE(refines(kQ, kN));
  EXPECT_FALSE(refines(kN, kQ));
  EXPECT_TRUE(refines(kM, kN));
  EXPECT_TRUE(refines(kM, kQ));
  EXPECT_FALSE(refines(kN, kM));
}

TEST(Refines, ConsistentImpliesPerColumn) {
  const BranchingDatum coarse(3, {{3, 8}, {3, 8}});
  const BranchingDatum fine(3, {{3, 6}, {3, 10}});
  EXPECT_FALSE(refines(coarse, fine));
  EXPECT_FALSE(refines(coarse, fine, RefineMode::per_column));
  const BranchingDatum coarse2(3, {{5, 14}, {2, 6}});
  const BranchingDatum fine2(3, {{3, 8}, {2, 6}, {2, 6}});
  EXPECT_EQ(refines(coarse2, fine2), refines(coarse2, fine2, RefineMode::per_column));
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 14)) {
      const auto omega = enumerate_partitions(d, p);
      for (const auto& a : omega)
        for (const auto& b : omega)
          if (refines(a, b)) ASSERT_TRUE(refines(a, b, RefineMode::per_column));
    }
}

TEST(Refines, ModesDivergeOnRegrouping) {
  // Column by column [[2,6],[0,2],[0,2]] splits [[2,4],[0,6]], but the row
  // (2,6) does not fit under either coarse row.
  const BranchingDatum coarse(2, {{2, 4}, {0, 6}});
  const BranchingDatum fine(2, {{2, 6}, {0, 2}, {0, 2}});
  EXPECT_FALSE(refines(coarse, fine));
  EXPECT_TRUE(refines(coarse, fine, RefineMode::per_column));
  const PartitionGraph g = build_graph({2, 10}, 2);
  EXPECT_FALSE(g.refine_divergences.empty());
}

TEST(Refines, IsPartialOrder) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 13)) {
      const auto omega = enumerate_partitions(d, p);
      const std::size_t V = omega.size();
      std::vector<std::vector<bool>> r(V, std::vector<bool>(V));
      for (std::size_t i = 0; i < V; ++i)
        for (std::size_t j = 0; j < V; ++j) r[i][j] = refines(omega[i], omega[j]);
      for (std::size_t i = 0; i < V; ++i) {
        ASSERT_TRUE(r[i][i]);
        for (std::size_t j = 0; j < V; ++j) {
          if (i != j) ASSERT_FALSE(r[i][j] && r[j][i]);
          if (!r[i][j]) continue;
          for (std::size_t k = 0; k < V; ++k)
            if (r[j][k]) ASSERT_TRUE(r[i][k]);
        }
      }
    }
}

TEST(Graph, FourEightAtTwo) {
  const PartitionGraph g = build_graph({4, 8}, 2);
  ASSERT_EQ(g.vertices.size(), 3u);
  std::set<std::pair<Matrix, Matrix>> edges;
  for (const auto& [a, b] : g.edges) edges.emplace(g.vertices[a].datum.rows, g.vertices[b].datum.rows);
  EXPECT_EQ(edges, (std::set<std::pair<Matrix, Matrix>>{{kM.rows, kN.rows}, {kM.rows, kQ.rows}}));
  EXPECT_TRUE(g.graph_connected());
  EXPECT_TRUE(g.refine_divergences.empty());
}

TEST(Graph, SingleVertex) {
  const PartitionGraph g = build_graph({2}, 3);
  EXPECT_EQ(g.vertices.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
}

TEST(Graph, TransitiveClosureEqualsRefines) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 20)) {
      const PartitionGraph g = build_graph(d, p);
      const std::size_t V = g.vertices.size();
      for (std::size_t i = 0; i < V; ++i)
        for (std::size_t j = 0; j < V; ++j)
          ASSERT_EQ(g.reachable(i, j), refines(g.vertices[i].datum, g.vertices[j].datum))
              << g.vertices[i].datum.rows_string() << " " << g.vertices[j].datum.rows_string();
    }
}

TEST(Graph, JobsDoNotChangeOutput) {
  for (std::uint32_t p : {2u, 3u}) {
    const std::vector<int> d = p == 2 ? std::vector<int>{6, 14} : std::vector<int>{5, 16};
    const PartitionGraph a = build_graph(d, p, 1), b = build_graph(d, p, 4);
    EXPECT_EQ(a.edges, b.edges);
    EXPECT_EQ(a.refine_divergences, b.refine_divergences);
    EXPECT_EQ(to_dot(a), to_dot(b));
  }
}

TEST(Graph, EssentialVerticesReachComponents) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 16)) {
      const PartitionGraph g = build_graph(d, p);
      const auto comps = g.component_indices();
      for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (g.vertices[i].component) continue;
        ASSERT_TRUE(std::any_of(comps.begin(), comps.end(), [&](std::size_t c) { return g.reachable(i, c); }))
            << g.vertices[i].datum.rows_string();
      }
    }
}

TEST(Graph, DotMarksComponents) {
  const std::string dot = to_dot(build_graph({4, 8}, 2));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 2);
  std::size_t count = 0;
  for (std::size_t at = dot.find("doublecircle"); at != std::string::npos; at = dot.find("doublecircle", at + 1)) ++count;
  EXPECT_EQ(count, 2u);
  EXPECT_NE(dot.find("strata=\"(2,3)\""), std::string::npos);
}

TEST(EssentialParts, Examples) {
  const EssentialParts a = essential_parts({9, 53}, 5);
  EXPECT_EQ(a.q, (std::vector<int>{1, 2}));
  EXPECT_EQ(a.eps, (std::vector<int>{3, 2}));
  EXPECT_EQ(essential_parts({2, 3}, 2).q, (std::vector<int>{0, 0}));
  EXPECT_EQ(essential_parts({4, 8}, 2).q[0], 1);
  EXPECT_EQ(essential_parts({0, 5}, 5).total(), 0);
  EXPECT_EQ(essential_parts({0, 0, 5, 25}, 5).total(), 0);
}

TEST(EssentialParts, RemainderBounds) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& r : valid_rows({12, 60}, p)) {
      const EssentialParts e = essential_parts(r, p);
      for (std::size_t i = 0; i < r.size(); ++i) {
        ASSERT_GE(e.q[i], 0);
        ASSERT_GE(e.eps[i], 0);
        ASSERT_LT(e.eps[i], static_cast<int>(p));
      }
    }
}

TEST(Components, FourEightAtTwo) {
  const auto comps = components({4, 8}, 2);
  EXPECT_EQ(as_set(comps), (std::set<Matrix>{kN.rows, kQ.rows}));
  EXPECT_EQ(dim_cov(kN), 8);
  EXPECT_EQ(dim_cov(kQ), 8);
  EXPECT_EQ(dim_curve(kN), 5);
  EXPECT_EQ(dim_cov(BranchingDatum(3, {{2}})), 2);
}

TEST(Components, PopSplitIsAComponent) {
  const auto comps = as_set(components({9, 53}, 5));
  EXPECT_TRUE(comps.count(Matrix{{5, 25}, {4, 18}, {0, 5}, {0, 5}}));
}

TEST(Components, MatchGraphFlags) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 16)) {
      const PartitionGraph g = build_graph(d, p);
      std::set<Matrix> flagged;
      for (const auto i : g.component_indices()) flagged.insert(g.vertices[i].datum.rows);
      ASSERT_EQ(flagged, as_set(components(d, p)));
    }
}

TEST(Dimension, MatchesCoefficientCount) {
  int checked = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 22))
      for (const auto& m : enumerate_partitions(d, p)) {
        ASSERT_EQ(dim_cov(m), coefficient_count(m)) << m.rows_string();
        ASSERT_GE(dim_cov(m), 1);
        ++checked;
      }
  EXPECT_GE(checked, 200);
}

TEST(Dimension, IncreasesWithEntry) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& r : valid_rows({10, 45}, p))
      for (std::size_t i = 0; i < r.size(); ++i) {
        Row s = r;
        ++s[i];
        if (s[i] % static_cast<int>(p) == 1 || !valid_row(s, p)) continue;
        ASSERT_GT(dim_cov(BranchingDatum(p, {s})), dim_cov(BranchingDatum(p, {r}))) << row_string(r);
      }
}

TEST(Irreducible, Examples) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) EXPECT_TRUE(irreducible({2}, p));
  EXPECT_FALSE(irreducible({4, 8}, 2));
  EXPECT_TRUE(irreducible({3, 8}, 3));
  EXPECT_EQ(components({3, 8}, 3).size(), 1u);
}

TEST(Irreducible, AgreesWithComponentCountAtFive) {
  for (const auto& d : corpus(5, 30)) ASSERT_EQ(irreducible(d, 5), components(d, 5).size() == 1);
}

TEST(Irreducible, ClosedFormDisagreesAtSmallPrimes) {
  // At p = 2 and p = 3 the closed form and the count of essential-free
  // vertices differ on a fixed set of tuples; pin that set.
  std::vector<std::vector<int>> p3;
  int p2 = 0;
  for (const auto& d : corpus(3, 30))
    if (irreducible(d, 3) != (components(d, 3).size() == 1)) p3.push_back(d);
  for (const auto& d : corpus(2, 30))
    if (irreducible(d, 2) != (components(d, 2).size() == 1)) ++p2;
  EXPECT_EQ(p3, (std::vector<std::vector<int>>{{4}, {4, 9}, {5}, {7}}));
  EXPECT_EQ(p2, 57);
  // Omega_(2,5) at p = 2 has a single, essential-free vertex.
  EXPECT_EQ(as_set(enumerate_partitions({2, 5}, 2)), (std::set<Matrix>{{{2, 3}, {0, 2}}}));
  EXPECT_FALSE(irreducible({2, 5}, 2));
}

TEST(Strata, Examples) {
  EXPECT_EQ(as_set(strata({4, 8}, {2, 3}, 2)), (std::set<Matrix>{kN.rows}));
  for (const auto& m : strata({4, 14}, {1, 1}, 3)) EXPECT_EQ(m.rows.size(), 1u);
  EXPECT_TRUE(disconnected_criterion(7, 5));
  EXPECT_FALSE(disconnected_criterion(9, 5));
  EXPECT_FALSE(disconnected_criterion(2, 5));
  EXPECT_FALSE(disconnected_criterion(3, 3));
}

TEST(Strata, PartitionOmega) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 14)) {
      std::size_t total = 0;
      std::set<std::vector<int>> labels;
      for (const auto& m : enumerate_partitions(d, p)) labels.insert(column_support(m));
      for (const auto& s : labels) total += strata(d, s, p).size();
      ASSERT_EQ(total, enumerate_partitions(d, p).size());
    }
}

TEST(Truncation, LandsInLowerOmega) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (const auto& d : corpus(p, 30)) {
      if (d.size() < 2) continue;
      const auto lower = as_set(enumerate_partitions({d[0]}, p));
      for (const auto& m : enumerate_partitions(d, p)) {
        BranchingDatum t = m.truncate(1).canonical();
        ASSERT_TRUE(lower.count(t.rows)) << m.rows_string();
      }
    }
}
