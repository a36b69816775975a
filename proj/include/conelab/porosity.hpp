#pragma once

#include "conelab/common.hpp"
#include "conelab/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace conelab {

// Oracle describing the set whose porosity is being estimated: either an
// exact point-to-set distance or a membership test. Affine targets carry the
// equations {u : eq_lhs u = eq_rhs} (orthonormal rows) so preimages can be
// pulled back exactly.
struct SetOracle {
    int ambient_dim = 0;
    bool is_distance = false;
    std::function<double(const Vector&)> distance;
    std::function<bool(const Vector&)> membership;

    struct AffineEq {
        Matrix eq_lhs;
        Vector eq_rhs;
    };
    std::optional<AffineEq> affine;
};

SetOracle distance_oracle(int ambient_dim, std::function<double(const Vector&)> fn);
SetOracle membership_oracle(int ambient_dim, std::function<bool(const Vector&)> fn);

// point + span(directions); exact distance
SetOracle affine_subspace_oracle(const Vector& point, const std::vector<Vector>& directions);
SetOracle singleton_oracle(const Vector& point);
SetOracle whole_space_oracle(int ambient_dim);
// matrices in R^{rows x cols} (row-major flattening) of non-maximal rank;
// distance is the smallest singular value
SetOracle rank_deficient_oracle(int rows, int cols);
// zero set of a polynomial, membership via |P| <= tol
SetOracle polynomial_zero_oracle(int ambient_dim, std::function<double(const Vector&)> poly,
                                 double tol);
SetOracle unit_circle_oracle(double tol = 1e-4);

struct PorosityEstimate {
    Vector center;
    std::vector<double> radii;
    std::vector<double> gamma_hat;
    double p_hat = 0.0;
    long budget = 0;
};

// Monte-Carlo lower estimate of the largest hole radius gamma(x, R, X):
// candidate centers sampled in B_R(x); per-candidate value is the exact
// distance (distance oracles) or a nested-sampling empty-ball radius
// (membership oracles), capped so the hole stays inside B_R(x).
double gamma_estimate(const Vector& x, double r, const SetOracle& oracle, long budget,
                      std::uint64_t seed);

std::vector<double> default_radius_schedule(double r0 = 1.0); // r0 * 2^-i, i = 0..10

// p_hat = min over the three smallest radii of gamma_hat / R, a finite proxy
// for liminf_{R->0} gamma/R.
PorosityEstimate porosity_estimate(const Vector& x, const SetOracle& oracle,
                                   const std::vector<double>& radii, long budget,
                                   std::uint64_t seed);

// Constants of the surjective-preimage porosity bound: nu_f is the smallest
// semi-axis of the image of the unit ball of (ker f)-perp, c = min(nu_f, 1),
// M = max(|f|, 1/c); the bound itself is c * p_y / (2M).
struct PreimageBoundInputs {
    LinearMap f;
    double nu_f = 0.0;
    double c = 0.0;
    double big_m = 1.0;
    double p_y = 0.0;
};

PreimageBoundInputs make_preimage_bound_inputs(const LinearMap& f, double p_y,
                                               const Tolerances& tol = {});
double preimage_porosity_bound(const PreimageBoundInputs& inputs);

struct PreimagePorosityReport {
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    double target_porosity = 0.0;
};

// Measures the porosity of f^{-1}(Y) at a preimage of y and compares it with
// the bound computed from the proof constants. Affine targets pull back
// exactly; anything else falls back to membership sampling through f.
PreimagePorosityReport verify_preimage_porosity(const LinearMap& f, const SetOracle& target,
                                                const Vector& y, long budget,
                                                std::uint64_t seed,
                                                const Tolerances& tol = {});

} // namespace conelab
