#pragma once

#include <vector>

namespace tnet {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Sparse row: sum_k coef[k] * x[idx[k]]  (= | <=)  rhs.
struct LpRow {
    std::vector<int> idx;
    std::vector<double> coef;
    double rhs = 0.0;

    void add(int column, double value) {
        idx.push_back(column);
        coef.push_back(value);
    }
};

// maximize objective . x   subject to   eq rows, ub rows, x >= 0.
struct DenseLp {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<LpRow> eq;
    std::vector<LpRow> ub;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    double dual_objective = 0.0;
    std::vector<double> x;
    std::vector<double> eq_dual; // free sign
    std::vector<double> ub_dual; // >= 0
    double max_residual = 0.0;   // worst primal constraint violation
    int iterations = 0;
};

// Two-phase primal simplex on a dense tableau, with the final primal/dual
// pair recomputed from an LU factorization of the optimal basis (one step of
// iterative refinement) so that residuals and the duality gap sit at machine
// precision. Intended for the instance sizes produced here (up to a few
// thousand variables); throws std::runtime_error if the pivot limit is hit.
LpResult solve_dense_lp(const DenseLp& lp);

} // namespace tnet
