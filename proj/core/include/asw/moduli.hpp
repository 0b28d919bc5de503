#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asw/ramify.hpp"

namespace asw {

struct Validation {
  bool valid = true;
  // Lowest-numbered violated condition: 1..4 for the partition conditions,
  // 5 for shape problems (ragged, empty, all-zero row, nonzero entry before a zero).
  int first_condition = 0;
  std::vector<std::string> diagnostics;
  bool violates(int condition) const;
};

// Conditions 1-3 on every row, condition 4 against `d` when given.
Validation validate_datum(const BranchingDatum& m, const std::optional<std::vector<int>>& d = std::nullopt);
bool valid_row(const Row& row, std::uint32_t p);

// d_1 >= 1 and d_i >= p d_{i-1} - p.
bool admissible(const std::vector<int>& d, std::uint32_t p);
void require_admissible(const std::vector<int>& d, std::uint32_t p);

// Valid rows bounded componentwise by d, in descending lexicographic order.
std::vector<Row> valid_rows(const std::vector<int>& d, std::uint32_t p);

// Omega_d: canonical data (rows descending), ordered by row count, then rows.
std::vector<BranchingDatum> enumerate_partitions(const std::vector<int>& d, std::uint32_t p);

enum class RefineMode {
  consistent,  // one grouping of the rows of N works for every column
  per_column,  // each column grouped independently
};

// M < N (or M = N): the rows of N group into blocks summing to the rows of M.
bool refines(const BranchingDatum& m, const BranchingDatum& n, RefineMode mode = RefineMode::consistent);

struct EssentialParts {
  std::vector<int> q;    // per level, 0 at unbranched levels
  std::vector<int> eps;  // per level, 0 at unbranched levels
  int total() const;
};
// Jumps measured from the first branched level, with iota_0 = 0 there.
EssentialParts essential_parts(const Row& row, std::uint32_t p);
bool essential_free(const BranchingDatum& m);

// s_n + sum (e - 1 - floor((e - 1) / p)), zero entries contributing 0.
long long dim_cov(const BranchingDatum& m);
long long dim_curve(const BranchingDatum& m);

struct PartitionVertex {
  BranchingDatum datum;
  std::vector<int> strata;  // column supports s_1..s_n
  int essential_total = 0;
  long long dim_cov = 0;
  long long dim_curve = 0;
  bool component = false;
};

struct PartitionGraph {
  std::uint32_t p = 0;
  std::vector<int> d;
  std::vector<PartitionVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // cover relations, coarse -> fine
  // Pairs (M, N), M != N, on which the two refinement modes disagree.
  std::vector<std::pair<std::size_t, std::size_t>> refine_divergences;

  std::vector<std::size_t> component_indices() const;
  bool graph_connected() const;  // as an undirected graph
  // True when vertex j is reachable from vertex i along edges (i == j included).
  bool reachable(std::size_t i, std::size_t j) const;
};

// Cover edges by exhaustive betweenness scan; `jobs` worker threads for the
// pairwise refinement table.  Output is independent of `jobs`.
PartitionGraph build_graph(const std::vector<int>& d, std::uint32_t p, unsigned jobs = 1);

std::vector<BranchingDatum> components(const std::vector<int>& d, std::uint32_t p);

// Closed-form irreducibility predicate on the conductor tuple.
bool irreducible(const std::vector<int>& d, std::uint32_t p);

// Vertices whose column supports equal s.
std::vector<BranchingDatum> strata(const std::vector<int>& d, const std::vector<int>& s, std::uint32_t p);

// p >= 5 and 3 <= d_1 <= 2p - 2.
bool disconnected_criterion(int d1, std::uint32_t p);

std::vector<int> column_support(const BranchingDatum& m);

// Graphviz digraph; component vertices drawn as double circles.
std::string to_dot(const PartitionGraph& g);

}  // namespace asw
