#include "conelab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conelab {

namespace {

// Tableau simplex on  max c.s  s.t.  A s = b, s >= 0.
// Returns false from pivot loop when no entering column exists.
struct Tableau {
    // D is (rows) x (ncols + 1); last column is the rhs. obj holds reduced
    // profits; obj[ncols] is the negated objective value.
    std::vector<std::vector<double>> D;
    std::vector<double> obj;
    std::vector<int> basis;  // basis[i] = column basic in row i
    std::vector<bool> active; // rows dropped as redundant after phase 1
    int nrows, ncols;
    double tol;

    Tableau(const Matrix& a, const Vector& b, int total_cols, double tol_)
        : nrows(static_cast<int>(a.rows())), ncols(total_cols), tol(tol_) {
        D.assign(nrows, std::vector<double>(ncols + 1, 0.0));
        for (int i = 0; i < nrows; ++i) {
            for (int j = 0; j < static_cast<int>(a.cols()); ++j) D[i][j] = a(i, j);
            D[i][ncols] = b(i);
        }
        basis.assign(nrows, -1);
        active.assign(nrows, true);
        obj.assign(ncols + 1, 0.0);
    }

    void pivot(int row, int col) {
        const double piv = D[row][col];
        for (double& v : D[row]) v /= piv;
        for (int i = 0; i < nrows; ++i) {
            if (i == row || !active[i]) continue;
            const double f = D[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) D[i][j] -= f * D[row][j];
        }
        const double f = obj[col];
        if (f != 0.0)
            for (int j = 0; j <= ncols; ++j) obj[j] -= f * D[row][j];
        basis[row] = col;
    }

    // Bland: entering = lowest-index improving column; leaving = min ratio,
    // ties broken by lowest basis column index. Returns:
    //   0 optimal, 1 unbounded
    int run(const std::vector<bool>& allowed) {
        const long max_iters = 50000L + 200L * (nrows + ncols);
        for (long it = 0; it < max_iters; ++it) {
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                if (!allowed[j]) continue;
                if (obj[j] > tol) { enter = j; break; }
            }
            if (enter < 0) return 0;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < nrows; ++i) {
                if (!active[i] || D[i][enter] <= tol) continue;
                const double ratio = D[i][ncols] / D[i][enter];
                if (ratio < best - 1e-15 ||
                    (ratio < best + 1e-15 && leave >= 0 && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return 1;
            pivot(leave, enter);
        }
        fail("LP_STALL", "simplex iteration limit exceeded");
    }
};

} // namespace

LpOutcome lp_solve(const LpProblem& p, double tol) {
    const int nvars = static_cast<int>(p.objective.size());
    const int nrows = static_cast<int>(p.eq_lhs.rows());
    if (nvars > 512 || nrows > 512) fail("SCALE_EXCEEDED", "lp beyond 512x512 desk scale");
    if (p.eq_lhs.cols() != nvars || p.eq_rhs.size() != nrows ||
        static_cast<int>(p.lower_bounds.size()) != nvars)
        fail("BAD_DIMENSION", "inconsistent lp dimensions");

    // Shift bounded variables to zero, split free ones into two nonnegative
    // halves. col_of[i] = first standard-form column of original variable i.
    std::vector<int> col_of(nvars);
    int ncols = 0;
    for (int i = 0; i < nvars; ++i) {
        col_of[i] = ncols;
        ncols += p.lower_bounds[i] ? 1 : 2;
    }

    Matrix a = Matrix::Zero(nrows, ncols);
    Vector c = Vector::Zero(ncols);
    Vector b = p.eq_rhs;
    for (int i = 0; i < nvars; ++i) {
        const int j = col_of[i];
        if (p.lower_bounds[i]) {
            const double lo = *p.lower_bounds[i];
            a.col(j) = p.eq_lhs.col(i);
            c(j) = p.objective(i);
            if (lo != 0.0) b -= lo * p.eq_lhs.col(i);
        } else {
            a.col(j) = p.eq_lhs.col(i);
            a.col(j + 1) = -p.eq_lhs.col(i);
            c(j) = p.objective(i);
            c(j + 1) = -p.objective(i);
        }
    }
    for (int i = 0; i < nrows; ++i)
        if (b(i) < 0.0) {
            b(i) = -b(i);
            a.row(i) = -a.row(i);
        }

    // Phase 1: artificial columns ncols..ncols+nrows-1, maximize -sum(artificials).
    const int total = ncols + nrows;
    Tableau t(a, b, total, tol);
    for (int i = 0; i < nrows; ++i) {
        t.D[i][ncols + i] = 1.0;
        t.basis[i] = ncols + i;
    }
    for (int i = 0; i < nrows; ++i) t.obj[ncols + i] = -1.0;
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j <= total; ++j) t.obj[j] += t.D[i][j];

    std::vector<bool> allowed(total, true);
    t.run(allowed); // phase 1 cannot be unbounded (objective <= 0)

    // Residual infeasibility = value still carried by basic artificials.
    const double scale = 1.0 + b.lpNorm<Eigen::Infinity>();
    double infeas = 0.0;
    for (int i = 0; i < nrows; ++i)
        if (t.basis[i] >= ncols) infeas += std::abs(t.D[i][total]);
    if (infeas > tol * scale) return LpInfeasible{};

    // Drive remaining artificials out of the basis or drop redundant rows.
    for (int i = 0; i < nrows; ++i) {
        if (t.basis[i] < ncols) continue;
        int piv = -1;
        for (int j = 0; j < ncols; ++j)
            if (std::abs(t.D[i][j]) > tol) { piv = j; break; }
        if (piv >= 0)
            t.pivot(i, piv);
        else
            t.active[i] = false; // redundant constraint
    }

    // Phase 2: real objective, artificial columns forbidden.
    for (int j = 0; j <= total; ++j) t.obj[j] = 0.0;
    for (int j = 0; j < ncols; ++j) t.obj[j] = c(j);
    for (int i = 0; i < nrows; ++i) {
        if (!t.active[i]) continue;
        const double f = t.obj[t.basis[i]];
        if (f != 0.0)
            for (int j = 0; j <= total; ++j) t.obj[j] -= f * t.D[i][j];
    }
    for (int j = ncols; j < total; ++j) allowed[j] = false;

    if (t.run(allowed) == 1) return LpUnbounded{};

    Vector s = Vector::Zero(ncols);
    for (int i = 0; i < nrows; ++i)
        if (t.active[i] && t.basis[i] < ncols) s(t.basis[i]) = t.D[i][total];

    Vector x(nvars);
    for (int i = 0; i < nvars; ++i) {
        const int j = col_of[i];
        x(i) = p.lower_bounds[i] ? *p.lower_bounds[i] + s(j) : s(j) - s(j + 1);
    }
    return LpOptimal{x, p.objective.dot(x)};
}

double lp_min_infeasibility(const Matrix& eq_lhs, const Vector& eq_rhs,
                            const std::vector<std::optional<double>>& lower_bounds,
                            double tol) {
    const int nvars = static_cast<int>(eq_lhs.cols());
    const int nrows = static_cast<int>(eq_lhs.rows());
    if (nvars > 512 || nrows > 512) fail("SCALE_EXCEEDED", "lp beyond 512x512 desk scale");

    // Same reformulation as lp_solve, but stop after phase 1 and report the
    // artificial mass left in the basis.
    std::vector<int> col_of(nvars);
    int ncols = 0;
    for (int i = 0; i < nvars; ++i) {
        col_of[i] = ncols;
        ncols += lower_bounds[i] ? 1 : 2;
    }
    Matrix a = Matrix::Zero(nrows, ncols);
    Vector b = eq_rhs;
    for (int i = 0; i < nvars; ++i) {
        const int j = col_of[i];
        if (lower_bounds[i]) {
            a.col(j) = eq_lhs.col(i);
            if (*lower_bounds[i] != 0.0) b -= *lower_bounds[i] * eq_lhs.col(i);
        } else {
            a.col(j) = eq_lhs.col(i);
            a.col(j + 1) = -eq_lhs.col(i);
        }
    }
    for (int i = 0; i < nrows; ++i)
        if (b(i) < 0.0) {
            b(i) = -b(i);
            a.row(i) = -a.row(i);
        }

    const int total = ncols + nrows;
    Tableau t(a, b, total, tol);
    for (int i = 0; i < nrows; ++i) {
        t.D[i][ncols + i] = 1.0;
        t.basis[i] = ncols + i;
    }
    for (int i = 0; i < nrows; ++i) t.obj[ncols + i] = -1.0;
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j <= total; ++j) t.obj[j] += t.D[i][j];
    std::vector<bool> allowed(total, true);
    t.run(allowed);

    double infeas = 0.0;
    for (int i = 0; i < nrows; ++i)
        if (t.basis[i] >= ncols) infeas += std::abs(t.D[i][total]);
    return infeas;
}

} // namespace conelab
