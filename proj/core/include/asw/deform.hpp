#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asw/moduli.hpp"

namespace asw {

// Pop-type refinement of a single row: first row with jumps p u_{i-1} + eps_i,
// then q_j rows (0, ..., 0, p, p^2, ...) for each essential level j.  Rows are
// returned in construction order (first row, then extra rows by level).
BranchingDatum pop_split(const Row& row, std::uint32_t p);

// Denominator splitting of a one-point vector (pole only at x = 0) over F_q(t):
// entry i becomes c_i(x) / prod_r (x - P_r)^{k_{r,i}}, where c_i(x) / x^{u_i} is
// the special entry, k = conductor for every row except `anchor`, which gets
// its jump, and rows with conductor 0 at level i are skipped.  Points live in
// `family_field` (parametric, over the special field).
WittVector split_family(const WittVector& special, const BranchingDatum& target, const std::vector<FieldValue>& points,
                        std::size_t anchor, const Field& family_field);

// split_family with target pop_split(row of special), the first row anchored
// at 0 and `new_points` assigned to the extra rows in order.  The result is
// verified; a failing certificate raises ConstructionError naming the
// computed generic datum.
WittVector pop_family(const WittVector& special, const std::vector<FieldValue>& new_points);

struct Cluster {
  Place special_point;
  Row special_row;
  std::vector<Place> generic_points;
  std::vector<Row> generic_rows;
  std::vector<long long> special_swan;  // per level
  std::vector<long long> generic_swan;  // per level, summed over the cluster
  bool swan_ok = false;
};

struct DeformationCertificate {
  std::uint32_t p = 0;
  unsigned n = 0;
  WittVector special;
  WittVector family;
  BranchingDatum special_datum;  // with points
  // Generic points are written in s with t = s^parameter_power: coefficients
  // of F_q(t) without p-th roots are handled by passing to F_q(t^(1/p^k)).
  BranchingDatum generic_datum;
  long long parameter_power = 1;
  BranchingDatum m;              // canonical special type
  BranchingDatum n_type;         // canonical generic type
  std::vector<Cluster> clusters;
  bool fiber_matches = false;  // special fiber of the family is the special cover
  std::string fiber_check;     // "same_cover" or "branching datum"
  bool refines_ok = false;
  bool valid = false;
  std::string failure;  // first failing comparison, empty when valid

  // "[4,8] -> [[2,3],[2,3],[0,2]]"
  std::string type_string() const;
};

// Limit of a generic branch point as t -> 0; negative valuation goes to infinity.
Place limit_point(const Place& generic, const Field& special_field);

DeformationCertificate verify_deformation(const WittVector& special, const WittVector& family,
                                          const std::optional<BranchingDatum>& claimed_m = std::nullopt,
                                          const std::optional<BranchingDatum>& claimed_n = std::nullopt);

// "[4,8]" for one row, "[[2,3],[0,2]]" otherwise.
std::string type_matrix_string(const BranchingDatum& d);

struct Obstruction {
  Place point;          // finite pole, or infinity for the polynomial part
  int order = 0;        // pole order l (finite) or exponent i of x^i (infinity)
  FieldValue coefficient;
};

struct ExactnessReport {
  bool exact = false;
  std::vector<Obstruction> obstructions;  // nonzero obstruction coefficients
};

// f dx is exact iff every term c/(x-P)^l with l = 1 mod p and every monomial
// c x^i with i = -1 mod p vanishes.
ExactnessReport exactness(const RatFunc& f);

struct ExactnessSearch {
  std::uint32_t p = 0;
  int u = 0, v = 0;
  std::vector<std::string> obstruction_polynomials;  // numerators in a
  std::string gcd;                                   // gcd of the numerators ("0" if none)
  bool all_nonzero = false;        // no obstruction numerator at all
  bool closure_certified = false;  // gcd is a nonzero monomial: no a != 0 in the closure
  // Nonzero roots of the gcd in F_{p^m}, m = 1..max_degree, as "value in Fq".
  std::vector<std::string> roots;
  unsigned max_degree = 0;

  // "no a; closure-certified", "all a != 0", or the root list.
  std::string verdict() const;
};

// Nonzero a making dx / (x^u (x - a)^v) exact, computed over F_p(a).
ExactnessSearch exactness_search(int u, int v, std::uint32_t p, unsigned max_degree = 3);

}  // namespace asw
