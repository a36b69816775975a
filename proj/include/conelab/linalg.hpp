#pragma once

#include "conelab/common.hpp"

#include <optional>
#include <vector>

namespace conelab {

// Dense linear map between euclidean spaces, operator-norm semantics.
// Immutable after construction; the cached norm, when present, was computed
// at construction time.
struct LinearMap {
    Matrix entries; // rows x cols
    std::optional<double> cached_operator_norm;

    LinearMap() = default;
    explicit LinearMap(Matrix a) : entries(std::move(a)) {}

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }

    Vector apply(const Vector& v) const { return entries * v; }
};

LinearMap make_map(Matrix a);           // validates finiteness
LinearMap make_map_with_norm(Matrix a); // also caches the operator norm

// Linear subspace of R^n given by an orthonormal basis (columns).
struct Subspace {
    int ambient_dim = 0;
    Matrix basis; // ambient_dim x dim, orthonormal columns

    int dim() const { return static_cast<int>(basis.cols()); }
};

double operator_norm(const LinearMap& a);
double smallest_singular_value(const LinearMap& a);
int rank_with_tol(const LinearMap& a, double eps_rel);

// Minimum-norm x with Ax = y; throws Error("INCONSISTENT") when y is not in
// the range of A within tol.residual * max(1, |y|).
Vector least_norm_solution(const LinearMap& a, const Vector& y,
                           const Tolerances& tol = {});

// Orthonormal basis of the numeric kernel of A (singular vectors with
// sigma <= eps_rel * sigma_max).
Subspace kernel_basis(const LinearMap& a, double eps_rel = 1e-9);

// Modified Gram-Schmidt; near-dependent inputs are dropped.
Subspace orthonormalize(const std::vector<Vector>& vectors,
                        const Tolerances& tol = {});
Subspace orthonormalize_columns(const Matrix& columns, const Tolerances& tol = {});

Vector project_onto(const Vector& v, const Subspace& w);
Vector project_complement(const Vector& v, const Subspace& w);

// |v - project_onto(v, w)|, used for hull membership checks
double subspace_residual(const Vector& v, const Subspace& w);

} // namespace conelab
