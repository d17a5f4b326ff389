#include "tnet/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace tnet {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kPhase1Eps = 1e-7;

// Dense LU with partial pivoting, used to polish the optimal basis.
class LuFactors {
public:
    // Returns false if the matrix is numerically singular.
    bool factor(std::vector<std::vector<double>> a) {
        n_ = static_cast<int>(a.size());
        lu_ = std::move(a);
        perm_.resize(n_);
        for (int i = 0; i < n_; ++i) perm_[i] = i;
        for (int k = 0; k < n_; ++k) {
            int piv = k;
            double best = std::fabs(lu_[k][k]);
            for (int r = k + 1; r < n_; ++r) {
                double v = std::fabs(lu_[r][k]);
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (best < 1e-13) return false;
            std::swap(lu_[k], lu_[piv]);
            std::swap(perm_[k], perm_[piv]);
            for (int r = k + 1; r < n_; ++r) {
                double f = lu_[r][k] / lu_[k][k];
                lu_[r][k] = f;
                for (int c = k + 1; c < n_; ++c) lu_[r][c] -= f * lu_[k][c];
            }
        }
        return true;
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> x(n_);
        for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
        for (int i = 1; i < n_; ++i)
            for (int j = 0; j < i; ++j) x[i] -= lu_[i][j] * x[j];
        for (int i = n_ - 1; i >= 0; --i) {
            for (int j = i + 1; j < n_; ++j) x[i] -= lu_[i][j] * x[j];
            x[i] /= lu_[i][i];
        }
        return x;
    }

    // Solve A^T y = c given the factorization of A.
    std::vector<double> solve_transposed(const std::vector<double>& c) const {
        // (P A)^T = A^T P^T, so solve U^T z = c, L^T w = z, y = P^T w.
        std::vector<double> z(c);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < i; ++j) z[i] -= lu_[j][i] * z[j];
            z[i] /= lu_[i][i];
        }
        for (int i = n_ - 1; i >= 0; --i)
            for (int j = i + 1; j < n_; ++j) z[i] -= lu_[j][i] * z[j];
        std::vector<double> y(n_);
        for (int i = 0; i < n_; ++i) y[perm_[i]] = z[i];
        return y;
    }

private:
    int n_ = 0;
    std::vector<std::vector<double>> lu_;
    std::vector<int> perm_;
};

struct Tableau {
    int rows = 0;
    int cols = 0; // structural + slack + artificial
    std::vector<std::vector<double>> t; // rows x (cols+1), last column = rhs
    std::vector<double> obj;            // cols + 1 (reduced costs, last = -value)
    std::vector<int> basis;             // per row
    std::vector<double> cost;           // per column, minimize orientation

    double& rhs(int r) { return t[r][cols]; }

    void recompute_objective_row() {
        for (int j = 0; j <= cols; ++j) obj[j] = (j < cols) ? cost[j] : 0.0;
        for (int r = 0; r < rows; ++r) {
            double cb = cost[basis[r]];
            if (cb == 0.0) continue;
            for (int j = 0; j <= cols; ++j) obj[j] -= cb * t[r][j];
        }
    }

    void pivot(int r, int c) {
        double inv = 1.0 / t[r][c];
        for (int j = 0; j <= cols; ++j) t[r][j] *= inv;
        t[r][c] = 1.0;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            double f = t[i][c];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
            t[i][c] = 0.0;
        }
        double f = obj[c];
        if (f != 0.0) {
            for (int j = 0; j <= cols; ++j) obj[j] -= f * t[r][j];
            obj[c] = 0.0;
        }
        basis[r] = c;
    }
};

} // namespace

LpResult solve_dense_lp(const DenseLp& lp) {
    const int n = lp.num_vars;
    const int ne = static_cast<int>(lp.eq.size());
    const int nu = static_cast<int>(lp.ub.size());
    const int m = ne + nu;
    assert(static_cast<int>(lp.objective.size()) == n);

    // Row order: eq rows first, then ub rows. row_sign records the
    // normalization applied so every tableau rhs starts nonnegative.
    std::vector<double> row_sign(m, 1.0);
    std::vector<const LpRow*> rows(m);
    for (int i = 0; i < ne; ++i) rows[i] = &lp.eq[i];
    for (int i = 0; i < nu; ++i) rows[ne + i] = &lp.ub[i];

    // Columns: structural, slack (one per ub row), artificial (assigned
    // lazily: every eq row, plus ub rows whose rhs is negative).
    std::vector<int> artificial_col(m, -1);
    int cols = n + nu;
    for (int r = 0; r < m; ++r) {
        bool negative = rows[r]->rhs < 0;
        if (negative) row_sign[r] = -1.0;
        if (r < ne || negative) artificial_col[r] = cols++;
    }

    Tableau tab;
    tab.rows = m;
    tab.cols = cols;
    tab.t.assign(m, std::vector<double>(cols + 1, 0.0));
    tab.obj.assign(cols + 1, 0.0);
    tab.basis.assign(m, -1);
    tab.cost.assign(cols, 0.0);

    for (int r = 0; r < m; ++r) {
        const LpRow& row = *rows[r];
        for (size_t k = 0; k < row.idx.size(); ++k) {
            assert(row.idx[k] >= 0 && row.idx[k] < n);
            tab.t[r][row.idx[k]] += row_sign[r] * row.coef[k];
        }
        if (r >= ne) tab.t[r][n + (r - ne)] = row_sign[r]; // slack
        tab.rhs(r) = row_sign[r] * row.rhs;
        if (artificial_col[r] >= 0) {
            tab.t[r][artificial_col[r]] = 1.0;
            tab.basis[r] = artificial_col[r];
        } else {
            tab.basis[r] = n + (r - ne);
        }
    }

    const long max_pivots = 200L * (m + cols) + 20000L;
    long pivots = 0;
    long stall = 0;
    bool bland = false;

    auto run_simplex = [&](bool phase1) -> bool {
        // Returns false only for an unbounded phase-2 column.
        double last_value = tab.obj[tab.cols];
        int recompute_countdown = 64;
        for (;;) {
            int enter = -1;
            if (bland) {
                for (int j = 0; j < tab.cols; ++j) {
                    if (!phase1 && j >= n + nu) continue; // block artificials
                    if (tab.obj[j] < -kCostEps) {
                        enter = j;
                        break;
                    }
                }
            } else {
                double best = -kCostEps;
                for (int j = 0; j < tab.cols; ++j) {
                    if (!phase1 && j >= n + nu) continue;
                    if (tab.obj[j] < best) {
                        best = tab.obj[j];
                        enter = j;
                    }
                }
            }
            if (enter < 0) return true; // optimal for this phase

            int leave = -1;
            double best_ratio = 0.0;
            for (int r = 0; r < m; ++r) {
                double a = tab.t[r][enter];
                if (a > kPivotEps) {
                    double ratio = tab.rhs(r) / a;
                    if (leave < 0 || ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && tab.basis[r] < tab.basis[leave])) {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) {
                if (phase1) throw std::runtime_error("simplex: phase-1 column unbounded");
                return false;
            }

            tab.pivot(leave, enter);
            if (++pivots > max_pivots)
                throw std::runtime_error("simplex: pivot limit exceeded");
            if (--recompute_countdown == 0) {
                tab.recompute_objective_row();
                recompute_countdown = 64;
            }
            double value = tab.obj[tab.cols];
            if (value > last_value - 1e-13) {
                if (++stall > 200) bland = true; // anti-cycling, stays on
            } else {
                stall = 0;
            }
            last_value = value;
        }
    };

    LpResult result;

    // Phase 1: minimize the artificial sum.
    bool need_phase1 = false;
    for (int r = 0; r < m; ++r)
        if (artificial_col[r] >= 0) need_phase1 = true;
    if (need_phase1) {
        for (int j = n + nu; j < cols; ++j) tab.cost[j] = 1.0;
        tab.recompute_objective_row();
        run_simplex(true);
        double infeas = -tab.obj[tab.cols]; // obj row stores -value
        if (infeas > kPhase1Eps) {
            result.status = LpStatus::Infeasible;
            result.iterations = static_cast<int>(pivots);
            return result;
        }
        // Drive artificials that linger in the basis out of it when possible.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] < n + nu) continue;
            int col = -1;
            for (int j = 0; j < n + nu; ++j) {
                if (std::fabs(tab.t[r][j]) > 1e-7) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) tab.pivot(r, col);
            // An all-zero row is a redundant constraint; its artificial stays
            // basic at zero and is blocked from re-entering in phase 2.
        }
        std::fill(tab.cost.begin(), tab.cost.end(), 0.0);
        stall = 0;
        bland = false;
    }

    // Phase 2: minimize -objective.
    for (int j = 0; j < n; ++j) tab.cost[j] = -lp.objective[j];
    tab.recompute_objective_row();
    if (!run_simplex(false)) {
        result.status = LpStatus::Unbounded;
        result.iterations = static_cast<int>(pivots);
        return result;
    }

    result.status = LpStatus::Optimal;
    result.iterations = static_cast<int>(pivots);

    // Polish: refactor the optimal basis and recompute the primal/dual pair.
    // Column j of the basis matrix, in normalized row space:
    auto basis_column = [&](int col) {
        std::vector<double> v(m, 0.0);
        if (col < n) {
            for (int r = 0; r < m; ++r) {
                const LpRow& row = *rows[r];
                for (size_t k = 0; k < row.idx.size(); ++k)
                    if (row.idx[k] == col) v[r] += row_sign[r] * row.coef[k];
            }
        } else if (col < n + nu) {
            int r = ne + (col - n);
            v[r] = row_sign[r];
        } else {
            for (int r = 0; r < m; ++r)
                if (artificial_col[r] == col) v[r] = 1.0;
        }
        return v;
    };

    std::vector<std::vector<double>> bmat(m, std::vector<double>(m, 0.0));
    for (int c = 0; c < m; ++c) {
        auto col = basis_column(tab.basis[c]);
        for (int r = 0; r < m; ++r) bmat[r][c] = col[r];
    }
    std::vector<double> bvec(m);
    for (int r = 0; r < m; ++r) bvec[r] = row_sign[r] * rows[r]->rhs;

    std::vector<double> xb(m, 0.0), y(m, 0.0);
    LuFactors lu;
    if (lu.factor(bmat)) {
        xb = lu.solve(bvec);
        // One refinement pass.
        std::vector<double> resid(m, 0.0);
        for (int r = 0; r < m; ++r) {
            double s = bvec[r];
            for (int c = 0; c < m; ++c) s -= bmat[r][c] * xb[c];
            resid[r] = s;
        }
        auto corr = lu.solve(resid);
        for (int r = 0; r < m; ++r) xb[r] += corr[r];

        std::vector<double> cb(m, 0.0);
        for (int r = 0; r < m; ++r)
            if (tab.basis[r] < n) cb[r] = lp.objective[tab.basis[r]];
        y = lu.solve_transposed(cb);
        for (int r = 0; r < m; ++r) {
            double s = cb[r];
            for (int c = 0; c < m; ++c) s -= bmat[c][r] * y[c];
            resid[r] = s;
        }
        corr = lu.solve_transposed(resid);
        for (int r = 0; r < m; ++r) y[r] += corr[r];
    } else {
        // Singular refactorization should not happen for a simplex basis;
        // fall back to the tableau values.
        for (int r = 0; r < m; ++r) xb[r] = tab.rhs(r);
        for (int r = 0; r < m; ++r) {
            int slack = (r >= ne) ? n + (r - ne) : -1;
            int art = artificial_col[r];
            double v = 0.0;
            if (slack >= 0) v = tab.obj[slack];
            else if (art >= 0) v = tab.obj[art];
            y[r] = -v * row_sign[r];
        }
    }

    result.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (tab.basis[r] < n) result.x[tab.basis[r]] = xb[r];
    for (double& v : result.x)
        if (std::fabs(v) < 1e-15) v = 0.0;

    result.objective = 0.0;
    for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];

    // Map the normalized-row duals back to the original orientation.
    result.eq_dual.assign(ne, 0.0);
    result.ub_dual.assign(nu, 0.0);
    for (int r = 0; r < m; ++r) {
        double d = row_sign[r] * y[r];
        if (r < ne) result.eq_dual[r] = d;
        else result.ub_dual[r - ne] = d;
    }

    result.dual_objective = 0.0;
    for (int i = 0; i < ne; ++i) result.dual_objective += lp.eq[i].rhs * result.eq_dual[i];
    for (int i = 0; i < nu; ++i) result.dual_objective += lp.ub[i].rhs * result.ub_dual[i];

    result.max_residual = 0.0;
    auto row_value = [&](const LpRow& row) {
        double s = 0.0;
        for (size_t k = 0; k < row.idx.size(); ++k) s += row.coef[k] * result.x[row.idx[k]];
        return s;
    };
    for (const auto& row : lp.eq)
        result.max_residual = std::max(result.max_residual, std::fabs(row_value(row) - row.rhs));
    for (const auto& row : lp.ub)
        result.max_residual = std::max(result.max_residual, row_value(row) - row.rhs);
    for (int j = 0; j < n; ++j)
        result.max_residual = std::max(result.max_residual, -result.x[j]);

    return result;
}

} // namespace tnet
