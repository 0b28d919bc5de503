#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asw/witt.hpp"

namespace asw {

using Row = std::vector<int>;

// r x n matrix of conductors e_{j,i}, optionally with one branch point per row.
struct BranchingDatum {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::vector<Row> rows;
  std::vector<Place> points;  // empty or aligned with rows

  BranchingDatum() = default;
  BranchingDatum(std::uint32_t p_, std::vector<Row> rows_, std::vector<Place> points_ = {});

  bool has_points() const noexcept { return !points.empty(); }
  // Column sums d_1..d_n.
  std::vector<int> conductors() const;
  // Rows sorted in descending lexicographic order; points dropped.
  BranchingDatum canonical() const;
  // First i columns; all-zero rows dropped together with their points.
  BranchingDatum truncate(unsigned i) const;
  // "[[2,6],[2,8],[0,13]]"
  std::string rows_string() const;

  friend bool operator==(const BranchingDatum& a, const BranchingDatum& b) noexcept {
    return a.p == b.p && a.n == b.n && a.rows == b.rows && a.points == b.points;
  }
};

std::string row_string(const Row& row);

struct BranchPointProfile {
  Place point;
  std::vector<int> jumps;   // upper jumps, -1 at unbranched levels
  unsigned inertia_exponent = 0;  // inertia group Z/p^m at the top level
  std::vector<long long> swan;    // per level
};

struct RamificationProfile {
  std::vector<BranchPointProfile> points;
  std::vector<long long> swan_total;  // per level, summed over points
};

struct ReduceResult {
  WittVector reduced;
  WittVector correction;  // input = reduced + F(correction) - correction
};

// Bring u into reduced form: no partial-fraction term of any entry has pole
// order divisible by p (the polynomial part counting as the pole at
// infinity; constant terms are left alone).
ReduceResult reduce(const WittVector& u);
bool is_reduced(const WittVector& u);

struct BranchAnalysis {
  BranchingDatum datum;  // with points, in Place order
  RamificationProfile profile;
  ReduceResult reduction;
};

// Reduces first.  Throws OrderDropError when the reduced first entry has no pole.
BranchAnalysis analyze_branching(const WittVector& u);
BranchingDatum branching_datum(const WittVector& u);

// Conductors of a row as upper jumps (-1 where the entry is 0).
std::vector<int> jumps_of_row(const Row& row);

std::vector<long long> genus_vector(const BranchingDatum& d, long long base_genus = 0);

struct PRankReport {
  std::vector<long long> sigma;          // p-rank at levels 1..n
  std::vector<int> inertia_counts;       // m_k: points with inertia exactly p^k, k = 1..n
  std::vector<int> column_support;       // s_i: nonzero entries in column i
};
PRankReport p_rank_vector(const BranchingDatum& d);

// 0-based row, 1-based level.
long long swan(const BranchingDatum& d, std::size_t row, unsigned level);

// f_i = sum_j c_{j,i} / (x - P_j)^{u_{j,i}} (x^{u} at infinity).
WittVector construct_cover(const BranchingDatum& d, const Field& field);

// r distinct points of `field`: 0, 1, ... by element index, with infinity
// used only once the finite points are exhausted.
std::vector<Place> default_points(const Field& field, std::size_t r);

BranchingDatum truncate(const BranchingDatum& d, unsigned i);
WittVector truncate(const WittVector& u, unsigned i);

}  // namespace asw
