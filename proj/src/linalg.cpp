#include "conelab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace conelab {

LinearMap make_map(Matrix a) {
    if (a.rows() < 1 || a.cols() < 1) fail("BAD_DIMENSION", "map must be at least 1x1");
    if (!all_finite(a)) fail("NON_FINITE", "map entries must be finite");
    return LinearMap(std::move(a));
}

LinearMap make_map_with_norm(Matrix a) {
    LinearMap m = make_map(std::move(a));
    m.cached_operator_norm = operator_norm(m);
    return m;
}

namespace {

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& a, unsigned options = 0) {
    return Eigen::JacobiSVD<Matrix>(a, options);
}

} // namespace

double operator_norm(const LinearMap& a) {
    if (a.cached_operator_norm) return *a.cached_operator_norm;
    if (a.entries.size() == 0) return 0.0;
    return svd_of(a.entries).singularValues()(0);
}

double smallest_singular_value(const LinearMap& a) {
    if (a.entries.size() == 0) return 0.0;
    const auto sv = svd_of(a.entries).singularValues();
    return sv(sv.size() - 1);
}

int rank_with_tol(const LinearMap& a, double eps_rel) {
    if (a.entries.size() == 0) return 0;
    const auto sv = svd_of(a.entries).singularValues();
    const double smax = sv(0);
    if (smax <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > eps_rel * smax) ++r;
    return r;
}

Vector least_norm_solution(const LinearMap& a, const Vector& y, const Tolerances& tol) {
    if (y.size() != a.rows()) fail("BAD_DIMENSION", "rhs dimension mismatch");
    auto svd = svd_of(a.entries, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Vector z = svd.matrixU().transpose() * y;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        z(i) = (smax > 0.0 && sv(i) > tol.rank * smax) ? z(i) / sv(i) : 0.0;
    Vector x = svd.matrixV() * z;
    const double res = (a.entries * x - y).norm();
    if (res > tol.residual * std::max(1.0, y.norm()))
        fail("INCONSISTENT", "rhs not in the range of the map");
    return x;
}

Subspace kernel_basis(const LinearMap& a, double eps_rel) {
    const int n = a.cols();
    auto svd = svd_of(a.entries, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (smax > 0.0 && sv(i) > eps_rel * smax) ++r;
    Subspace ker;
    ker.ambient_dim = n;
    ker.basis = svd.matrixV().rightCols(n - r);
    return ker;
}

Subspace orthonormalize(const std::vector<Vector>& vectors, const Tolerances& tol) {
    if (vectors.empty()) return Subspace{0, Matrix(0, 0)};
    const int n = static_cast<int>(vectors.front().size());
    Matrix cols(n, static_cast<int>(vectors.size()));
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != n) fail("BAD_DIMENSION", "vectors must share a dimension");
        cols.col(static_cast<int>(i)) = vectors[i];
    }
    return orthonormalize_columns(cols, tol);
}

Subspace orthonormalize_columns(const Matrix& columns, const Tolerances& tol) {
    const int n = static_cast<int>(columns.rows());
    Subspace w;
    w.ambient_dim = n;
    w.basis = Matrix(n, 0);
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        Vector v = columns.col(j);
        const double orig = v.norm();
        if (orig <= 0.0) continue;
        // two MGS passes for numerical orthogonality
        for (int pass = 0; pass < 2; ++pass)
            if (w.basis.cols() > 0) v -= w.basis * (w.basis.transpose() * v);
        if (v.norm() < tol.orthogonality * orig) continue; // dependent, drop
        w.basis.conservativeResize(n, w.basis.cols() + 1);
        w.basis.col(w.basis.cols() - 1) = v / v.norm();
    }
    return w;
}

Vector project_onto(const Vector& v, const Subspace& w) {
    if (v.size() != w.ambient_dim) fail("BAD_DIMENSION", "projection dimension mismatch");
    if (w.dim() == 0) return Vector::Zero(v.size());
    return w.basis * (w.basis.transpose() * v);
}

Vector project_complement(const Vector& v, const Subspace& w) {
    return v - project_onto(v, w);
}

double subspace_residual(const Vector& v, const Subspace& w) {
    return project_complement(v, w).norm();
}

} // namespace conelab
