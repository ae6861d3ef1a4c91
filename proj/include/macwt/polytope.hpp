#pragma once
// H-representation polytopes over named variables with integer coefficients:
// Fourier-Motzkin elimination, LP-certified redundancy removal, vertex
// enumeration by basis subsets, membership and inclusion tests, and the
// JSON/CSV forms used by the CLI.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "macwt/simplex.hpp"

namespace macwt {

struct LinearInequality {
  std::vector<long long> coeffs;  // sense: coeffs . x <= rhs
  double rhs = 0.0;

  bool operator==(const LinearInequality&) const = default;
};

struct Polytope {
  std::vector<std::string> vars;
  std::vector<LinearInequality> ineqs;

  int dim() const { return static_cast<int>(vars.size()); }
  int var_index(std::string_view name) const;  // -1 when absent

  // Drops all-zero rows with rhs >= 0 and deduplicates identical coefficient
  // vectors whose rhs differ by < 1e-12, keeping the smaller rhs. All-zero
  // rows with negative rhs stay as contradiction markers. Order preserved.
  void normalize();
};

double evaluate_row(const LinearInequality& row, const std::vector<double>& point);

struct FMStats {
  int upper = 0;     // rows where the eliminated variable has coefficient > 0
  int lower = 0;     // rows where it has coefficient < 0
  int pairings = 0;  // combined rows emitted
  int carried = 0;   // rows copied through unchanged
};

Polytope fm_eliminate(const Polytope& p, const std::string& var, FMStats* stats = nullptr);

// Sequential fm_eliminate in the given order; redundancy removal runs between
// steps once the intermediate row count exceeds reduce_threshold.
Polytope fm_eliminate_all(Polytope p, const std::vector<std::string>& vars,
                          std::size_t reduce_threshold = 512,
                          std::size_t hard_cap = 1000000);

// Keeps a row only when maximizing its left side subject to the remaining
// rows exceeds rhs + 1e-8. An infeasible rest system removes the row.
Polytope remove_redundant(const Polytope& p);

struct Vertex {
  std::vector<double> coords;
  std::vector<int> active;  // indices of tight inequalities in the input
};

// Requires the polytope bounded in every coordinate (callers box rate
// variables first); raises an unbounded error when a coordinate LP detects a
// ray. Empty polytope yields an empty list. Output sorted lexicographically.
std::vector<Vertex> vertices(const Polytope& p);

bool contains(const Polytope& p, const std::vector<double>& point, double tol = 1e-9);
bool polytope_equal(const Polytope& a, const Polytope& b, double tol = 1e-7);
bool union_contains(const std::vector<Polytope>& members,
                    const std::vector<double>& point, double tol = 1e-9);

struct InclusionReport {
  bool included = true;
  std::vector<double> witness;  // point of a member of A outside union B
};

// Checks every vertex of every member of A plus boundary_samples random
// boundary points per member for membership in union B.
InclusionReport union_included(const std::vector<Polytope>& a,
                               const std::vector<Polytope>& b,
                               int boundary_samples = 200,
                               std::uint64_t seed = 1, double tol = 1e-9);

// Maximize objective . x over p with all variables free (bound rows must be
// part of the system). Used for redundancy certificates and face maxima.
LPSolution lp_over_polytope(const Polytope& p, const std::vector<double>& objective);

// Copy of p with 0 <= var <= hi added for every variable.
Polytope with_box(const Polytope& p, double hi);

std::string polytope_to_json(const Polytope& p);
Polytope polytope_from_json(std::string_view text);
std::string vertices_to_csv(const Polytope& p, const std::vector<Vertex>& verts);

}  // namespace macwt
