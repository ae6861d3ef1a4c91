#pragma once
// Dense two-phase tableau simplex for the small LPs used by redundancy
// certification, garbage-rate search, and vertex filtering. Maximization over
// inequality rows with per-variable bounds. Deterministic pivoting: Dantzig
// pricing with a Bland fallback once degeneracy threatens to cycle.

#include <optional>
#include <vector>

namespace macwt {

enum class LPStatus { optimal, infeasible, unbounded };

struct LPRow {
  std::vector<double> coeffs;  // sense: coeffs . x <= rhs
  double rhs = 0.0;
};

struct LPProblem {
  int n_vars = 0;
  std::vector<double> objective;             // maximize objective . x
  std::vector<LPRow> rows;
  std::vector<double> lower;                 // per variable, default 0
  std::vector<std::optional<double>> upper;  // per variable, nullopt = unbounded

  static LPProblem with_vars(int n) {
    LPProblem p;
    p.n_vars = n;
    p.objective.assign(n, 0.0);
    p.lower.assign(n, 0.0);
    p.upper.assign(n, std::nullopt);
    return p;
  }
};

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> point;  // populated when optimal
  double objective = 0.0;
};

LPSolution solve(const LPProblem& lp);

// Phase 1 only: any point satisfying the rows. Variables flagged in nonneg
// are constrained >= 0; the rest are free.
LPSolution feasible_point(int n_vars, const std::vector<LPRow>& rows,
                          const std::vector<bool>& nonneg);

}  // namespace macwt
