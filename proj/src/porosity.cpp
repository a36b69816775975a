#include "conelab/porosity.hpp"

#include "conelab/rng.hpp"
#include "internal_parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace conelab {

SetOracle distance_oracle(int ambient_dim, std::function<double(const Vector&)> fn) {
    SetOracle o;
    o.ambient_dim = ambient_dim;
    o.is_distance = true;
    o.distance = std::move(fn);
    return o;
}

SetOracle membership_oracle(int ambient_dim, std::function<bool(const Vector&)> fn) {
    SetOracle o;
    o.ambient_dim = ambient_dim;
    o.is_distance = false;
    o.membership = std::move(fn);
    return o;
}

SetOracle affine_subspace_oracle(const Vector& point, const std::vector<Vector>& directions) {
    const int n = static_cast<int>(point.size());
    const Subspace span = orthonormalize(directions);
    if (!directions.empty() && span.ambient_dim != n)
        fail("BAD_DIMENSION", "affine directions must match the point dimension");
    // rows of the complement basis give exact distance |C x - d|
    Matrix ct;
    if (span.dim() == 0) {
        ct = Matrix::Identity(n, n);
    } else {
        Eigen::JacobiSVD<Matrix> svd(span.basis.transpose(), Eigen::ComputeFullV);
        ct = svd.matrixV().rightCols(n - span.dim()).transpose();
    }
    SetOracle o;
    o.ambient_dim = n;
    o.is_distance = true;
    o.affine = SetOracle::AffineEq{ct, Vector(ct * point)};
    o.distance = [eq = *o.affine](const Vector& x) { return (eq.eq_lhs * x - eq.eq_rhs).norm(); };
    return o;
}

SetOracle singleton_oracle(const Vector& point) { return affine_subspace_oracle(point, {}); }

SetOracle whole_space_oracle(int ambient_dim) {
    return distance_oracle(ambient_dim, [](const Vector&) { return 0.0; });
}

SetOracle rank_deficient_oracle(int rows, int cols) {
    if (rows < 1 || cols < 1) fail("BAD_DIMENSION", "matrix shape must be positive");
    return distance_oracle(rows * cols, [rows, cols](const Vector& v) {
        Matrix a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
        Eigen::JacobiSVD<Matrix> svd(a);
        const auto& sv = svd.singularValues();
        return sv(sv.size() - 1);
    });
}

SetOracle polynomial_zero_oracle(int ambient_dim, std::function<double(const Vector&)> poly,
                                 double tol) {
    return membership_oracle(ambient_dim, [poly = std::move(poly), tol](const Vector& v) {
        return std::abs(poly(v)) <= tol;
    });
}

SetOracle unit_circle_oracle(double tol) {
    return polynomial_zero_oracle(
        2, [](const Vector& v) { return v(0) * v(0) + v(1) * v(1) - 1.0; }, tol);
}

namespace {

// empty-ball radius around x_prime certified by nested membership sampling
double membership_hole_radius(const SetOracle& oracle, const Vector& x_prime, double r_max,
                              RngStream& rng) {
    double r = r_max;
    for (int round = 0; round < 4; ++round) {
        for (int s = 0; s < 16; ++s) {
            const Vector probe = rng.in_ball(x_prime, r);
            if (oracle.membership(probe)) {
                const double hit = (probe - x_prime).norm();
                r = std::min(r, hit);
            }
        }
    }
    return r;
}

} // namespace

double gamma_estimate(const Vector& x, double r, const SetOracle& oracle, long budget,
                      std::uint64_t seed) {
    if (x.size() != oracle.ambient_dim) fail("BAD_DIMENSION", "center dimension mismatch");
    if (!(r > 0.0)) fail("BAD_ARGUMENT", "radius must be positive");
    if (budget < 100) fail("BAD_ARGUMENT", "budget must be at least 100");

    std::vector<double> vals(static_cast<size_t>(budget), 0.0);
    detail::parallel_for(budget, [&](long i) {
        RngStream rng = stream_for(seed, static_cast<std::uint64_t>(i));
        // candidate 0 is the center itself; useful off the set
        const Vector x_prime = i == 0 ? x : rng.in_ball(x, r);
        const double room = r - (x_prime - x).norm();
        if (room <= 0.0) return;
        double hole;
        if (oracle.is_distance) {
            hole = oracle.distance(x_prime);
        } else {
            hole = membership_hole_radius(oracle, x_prime, room, rng);
        }
        vals[static_cast<size_t>(i)] = std::min(hole, room);
    });
    double best = 0.0;
    for (double v : vals) best = std::max(best, v);
    return std::min(best, r);
}

std::vector<double> default_radius_schedule(double r0) {
    std::vector<double> radii;
    for (int i = 0; i <= 10; ++i) radii.push_back(r0 * std::pow(0.5, i));
    return radii;
}

PorosityEstimate porosity_estimate(const Vector& x, const SetOracle& oracle,
                                   const std::vector<double>& radii, long budget,
                                   std::uint64_t seed) {
    if (radii.size() < 4) fail("BAD_ARGUMENT", "need at least 4 radii");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1])) fail("BAD_ARGUMENT", "radii must be strictly decreasing");

    PorosityEstimate est;
    est.center = x;
    est.radii = radii;
    est.budget = budget;
    est.gamma_hat.reserve(radii.size());
    for (size_t i = 0; i < radii.size(); ++i) {
        // distinct seed stream per radius
        est.gamma_hat.push_back(
            gamma_estimate(x, radii[i], oracle, budget, seed + 0x100000001ULL * (i + 1)));
    }
    double p = std::numeric_limits<double>::infinity();
    for (size_t i = radii.size() - 3; i < radii.size(); ++i)
        p = std::min(p, est.gamma_hat[i] / radii[i]);
    est.p_hat = p;
    return est;
}

PreimageBoundInputs make_preimage_bound_inputs(const LinearMap& f, double p_y,
                                               const Tolerances& tol) {
    const int m = f.rows();
    if (rank_with_tol(f, tol.rank) < m) fail("NOT_SURJECTIVE", "map must be surjective");
    Eigen::JacobiSVD<Matrix> svd(f.entries);
    const auto& sv = svd.singularValues();
    PreimageBoundInputs in;
    in.f = f;
    in.nu_f = sv(m - 1); // smallest semi-axis of the unit-ball image
    in.c = std::min(in.nu_f, 1.0);
    in.big_m = std::max(sv(0), 1.0 / in.c);
    in.p_y = p_y;
    return in;
}

double preimage_porosity_bound(const PreimageBoundInputs& inputs) {
    return inputs.c * inputs.p_y / (2.0 * inputs.big_m);
}

PreimagePorosityReport verify_preimage_porosity(const LinearMap& f, const SetOracle& target,
                                                const Vector& y, long budget,
                                                std::uint64_t seed, const Tolerances& tol) {
    if (target.ambient_dim != f.rows()) fail("BAD_DIMENSION", "target/map dimension mismatch");
    const Vector x = least_norm_solution(f, y, tol);

    SetOracle pullback;
    if (target.affine) {
        // f^{-1}{u : C u = d} = {x : (C f) x = d}, distance by least-norm solve
        const Matrix a = target.affine->eq_lhs * f.entries;
        const Vector b = target.affine->eq_rhs;
        pullback = distance_oracle(f.cols(), [a, b, tol](const Vector& u) {
            return least_norm_solution(LinearMap(a), Vector(b - a * u), tol).norm();
        });
    } else if (target.is_distance) {
        const LinearMap fc = f;
        pullback = membership_oracle(f.cols(), [fc, t = target](const Vector& u) {
            return t.distance(fc.entries * u) <= 1e-9;
        });
    } else {
        const LinearMap fc = f;
        pullback = membership_oracle(f.cols(), [fc, t = target](const Vector& u) {
            return t.membership(fc.entries * u);
        });
    }

    PreimagePorosityReport report;
    report.measured =
        porosity_estimate(x, pullback, default_radius_schedule(), budget, seed).p_hat;
    report.target_porosity =
        porosity_estimate(y, target, default_radius_schedule(), budget,
                          seed ^ 0x5157ca11ab1e5eedULL)
            .p_hat;
    report.bound = preimage_porosity_bound(make_preimage_bound_inputs(f, report.target_porosity, tol));
    report.pass = report.measured >= report.bound - 0.05;
    return report;
}

} // namespace conelab
