#include "macwt/simplex.hpp"

#include <cmath>
#include <cstddef>

#include "macwt/error.hpp"
#include "macwt/kernels.hpp"

namespace macwt {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;
constexpr long long kIterationCap = 100000;
constexpr int kPricingBlock = 64;

// Standard form: maximize c.x subject to A x <= b, x >= 0. Rows with b < 0
// are negated and given an artificial variable for phase 1.
class StandardSimplex {
 public:
  StandardSimplex(const std::vector<double>& c, const std::vector<LPRow>& rows)
      : m_(static_cast<int>(rows.size())), n_struct_(static_cast<int>(c.size())) {
    std::vector<int> art_of_row(m_, -1);
    int n_art = 0;
    for (int i = 0; i < m_; ++i)
      if (rows[i].rhs < 0.0) art_of_row[i] = n_art++;
    n_slack_ = m_;
    n_cols_ = n_struct_ + n_slack_ + n_art;
    width_ = n_cols_ + 1;
    t_.assign(static_cast<std::size_t>(m_ + 2) * width_, 0.0);
    basis_.resize(m_);
    enterable_.assign(n_cols_, 1);

    for (int i = 0; i < m_; ++i) {
      double* r = row(i);
      const double sgn = art_of_row[i] < 0 ? 1.0 : -1.0;
      for (int j = 0; j < n_struct_; ++j) r[j] = sgn * rows[i].coeffs[j];
      r[n_struct_ + i] = sgn;  // slack
      r[width_ - 1] = sgn * rows[i].rhs;
      if (art_of_row[i] < 0) {
        basis_[i] = n_struct_ + i;
      } else {
        const int col = n_struct_ + n_slack_ + art_of_row[i];
        r[col] = 1.0;
        basis_[i] = col;
        enterable_[col] = 0;
      }
    }

    double* obj = row(m_);
    for (int j = 0; j < n_struct_; ++j) obj[j] = c[j];

    need_phase1_ = n_art > 0;
    if (need_phase1_) {
      double* p1 = row(m_ + 1);
      for (int i = 0; i < m_; ++i) {
        if (art_of_row[i] < 0) continue;
        const double* r = row(i);
        for (int j = 0; j < n_struct_ + n_slack_; ++j) p1[j] += r[j];
        p1[width_ - 1] += r[width_ - 1];
      }
    }
  }

  LPStatus run(std::vector<double>& point) {
    if (need_phase1_) {
      if (!optimize(m_ + 1))
        throw Error(errc::internal, "phase-1 objective cannot be unbounded");
      if (row(m_ + 1)[width_ - 1] > kFeasTol) return LPStatus::infeasible;
      drive_out_artificials();
      for (int j = n_struct_ + n_slack_; j < n_cols_; ++j) enterable_[j] = 0;
    }
    if (!optimize(m_)) return LPStatus::unbounded;
    point.assign(n_struct_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_struct_) point[basis_[i]] = row(i)[width_ - 1];
    return LPStatus::optimal;
  }

 private:
  double* row(int i) { return t_.data() + static_cast<std::size_t>(i) * width_; }

  void pivot(int pr, int pc) {
    double* prow = row(pr);
    kernels::scale(prow, 1.0 / prow[pc], width_);
    prow[pc] = 1.0;
    for (int r = 0; r < m_ + 2; ++r) {
      if (r == pr) continue;
      const double f = row(r)[pc];
      if (f != 0.0) {
        kernels::axpy(-f, prow, row(r), width_);
        row(r)[pc] = 0.0;
      }
    }
    basis_[pr] = pc;
  }

  int choose_entering(int obj, bool bland) {
    const double* orow = row(obj);
    if (bland) {
      for (int j = 0; j < n_cols_; ++j)
        if (enterable_[j] && orow[j] > kPivotTol) return j;
      return -1;
    }
    // Partial pricing: take the best candidate from the first cyclic block
    // that has one; the cursor persists across iterations.
    int scanned = 0;
    while (scanned < n_cols_) {
      int best = -1;
      double bestv = kPivotTol;
      for (int blk = 0; blk < kPricingBlock && scanned < n_cols_; ++blk, ++scanned) {
        const int j = cursor_;
        cursor_ = (cursor_ + 1 == n_cols_) ? 0 : cursor_ + 1;
        if (enterable_[j] && orow[j] > bestv) {
          bestv = orow[j];
          best = j;
        }
      }
      if (best >= 0) return best;
    }
    return -1;
  }

  int choose_leaving(int pc) {
    int best = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = row(i)[pc];
      if (a <= kPivotTol) continue;
      const double ratio = row(i)[width_ - 1] / a;
      if (best < 0 || ratio < best_ratio - tie_tol(best_ratio)) {
        best = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + tie_tol(best_ratio) && basis_[i] < basis_[best]) {
        best = i;  // degenerate tie: smallest basic index, keeps Bland honest
      }
    }
    return best;
  }

  static double tie_tol(double ratio) { return 1e-12 * (1.0 + std::fabs(ratio)); }

  // Returns false when the objective is unbounded above.
  bool optimize(int obj) {
    long long phase_iters = 0;
    const long long bland_after = 2LL * (m_ + n_cols_);
    for (;;) {
      const int pc = choose_entering(obj, phase_iters >= bland_after);
      if (pc < 0) return true;
      const int pr = choose_leaving(pc);
      if (pr < 0) return false;
      pivot(pr, pc);
      ++phase_iters;
      if (++iterations_ > kIterationCap)
        throw Error(errc::iterations, "simplex iteration cap exceeded",
                    {{"cap", kIterationCap}});
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_ + n_slack_) continue;
      const double* r = row(i);
      int pc = -1;
      for (int j = 0; j < n_struct_ + n_slack_; ++j)
        if (std::fabs(r[j]) > kPivotTol) {
          pc = j;
          break;
        }
      // A row with no real coefficients is a redundant constraint; its
      // artificial stays basic at value 0 and can never turn positive.
      if (pc >= 0) pivot(i, pc);
    }
  }

  int m_, n_struct_, n_slack_ = 0, n_cols_ = 0, width_ = 0;
  bool need_phase1_ = false;
  int cursor_ = 0;
  long long iterations_ = 0;
  std::vector<double> t_;
  std::vector<int> basis_;
  std::vector<char> enterable_;
};

void check_problem(const LPProblem& lp) {
  if (lp.n_vars < 0 || static_cast<int>(lp.objective.size()) != lp.n_vars)
    throw Error(errc::dimension, "objective length must equal the variable count",
                {{"n_vars", lp.n_vars}, {"objective", lp.objective.size()}});
  for (const auto& r : lp.rows)
    if (static_cast<int>(r.coeffs.size()) != lp.n_vars)
      throw Error(errc::dimension, "constraint row length must equal the variable count",
                  {{"n_vars", lp.n_vars}, {"row", r.coeffs.size()}});
  for (double lo : lp.lower)
    if (!std::isfinite(lo))
      throw Error(errc::schema, "variable lower bounds must be finite");
  for (const auto& up : lp.upper)
    if (up && !std::isfinite(*up))
      throw Error(errc::schema, "declared upper bounds must be finite");
}

}  // namespace

LPSolution solve(const LPProblem& lp) {
  check_problem(lp);
  const int n = lp.n_vars;
  std::vector<double> lower = lp.lower;
  lower.resize(n, 0.0);

  // Shift x = lower + x' so the standard form keeps x' >= 0.
  std::vector<LPRow> rows;
  rows.reserve(lp.rows.size() + lp.upper.size());
  for (const auto& r : lp.rows) {
    LPRow s = r;
    s.rhs -= kernels::dot(r.coeffs.data(), lower.data(), n);
    rows.push_back(std::move(s));
  }
  for (int j = 0; j < n && j < static_cast<int>(lp.upper.size()); ++j) {
    if (!lp.upper[j]) continue;
    LPRow s;
    s.coeffs.assign(n, 0.0);
    s.coeffs[j] = 1.0;
    s.rhs = *lp.upper[j] - lower[j];
    rows.push_back(std::move(s));
  }

  StandardSimplex solver(lp.objective, rows);
  LPSolution out;
  std::vector<double> shifted;
  out.status = solver.run(shifted);
  if (out.status == LPStatus::optimal) {
    out.point.resize(n);
    for (int j = 0; j < n; ++j) out.point[j] = lower[j] + shifted[j];
    out.objective = kernels::dot(lp.objective.data(), out.point.data(), n);
  }
  return out;
}

LPSolution feasible_point(int n_vars, const std::vector<LPRow>& rows,
                          const std::vector<bool>& nonneg) {
  if (static_cast<int>(nonneg.size()) != n_vars)
    throw Error(errc::dimension, "nonneg flag count must equal the variable count",
                {{"n_vars", n_vars}, {"flags", nonneg.size()}});
  // Free variables are split x = u - w with u, w >= 0.
  std::vector<int> pos_col(n_vars), neg_col(n_vars, -1);
  int cols = 0;
  for (int j = 0; j < n_vars; ++j) {
    pos_col[j] = cols++;
    if (!nonneg[j]) neg_col[j] = cols++;
  }
  std::vector<LPRow> split;
  split.reserve(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.coeffs.size()) != n_vars)
      throw Error(errc::dimension, "constraint row length must equal the variable count",
                  {{"n_vars", n_vars}, {"row", r.coeffs.size()}});
    LPRow s;
    s.coeffs.assign(cols, 0.0);
    for (int j = 0; j < n_vars; ++j) {
      s.coeffs[pos_col[j]] = r.coeffs[j];
      if (neg_col[j] >= 0) s.coeffs[neg_col[j]] = -r.coeffs[j];
    }
    s.rhs = r.rhs;
    split.push_back(std::move(s));
  }

  StandardSimplex solver(std::vector<double>(cols, 0.0), split);
  LPSolution out;
  std::vector<double> ext;
  out.status = solver.run(ext);
  if (out.status == LPStatus::optimal) {
    out.point.resize(n_vars);
    for (int j = 0; j < n_vars; ++j)
      out.point[j] = ext[pos_col[j]] - (neg_col[j] >= 0 ? ext[neg_col[j]] : 0.0);
    out.objective = 0.0;
  }
  return out;
}

}  // namespace macwt
