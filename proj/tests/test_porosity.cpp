#include "conelab/porosity.hpp"
#include "conelab/rng.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace conelab;
using conelab::testing::mat;
using conelab::testing::vec;

TEST_CASE("gamma estimate on reference sets") {
    // whole space leaves no hole
    CHECK(gamma_estimate(vec({0, 0}), 1.0, whole_space_oracle(2), 2000, 1) == 0.0);

    // X = {0} in R: best hole is the interval around +-1/2
    const double point_gamma = gamma_estimate(vec({0}), 1.0, singleton_oracle(vec({0})), 4000, 1);
    CHECK(point_gamma > 0.45);
    CHECK(point_gamma <= 0.5);

    // line through the center in R^2: inscribed half-disk ball
    const SetOracle line = affine_subspace_oracle(vec({0, 0}), {vec({1, 0})});
    const double line_gamma = gamma_estimate(vec({0, 0}), 1.0, line, 6000, 1);
    CHECK(line_gamma > 0.42);
    CHECK(line_gamma <= 0.5);
}

TEST_CASE("gamma never exceeds the window radius") {
    RngStream rng = stream_for(71, 0);
    const SetOracle line = affine_subspace_oracle(vec({0, 0}), {vec({1, 0})});
    for (int trial = 0; trial < 10; ++trial) {
        const double r = 0.1 + rng.uniform() * 5.0;
        const Vector x = rng.normal_vector(2);
        CHECK(gamma_estimate(x, r, line, 500, trial) <= r);
    }
}

TEST_CASE("gamma is monotone in the budget on a shared stream") {
    const SetOracle plane = affine_subspace_oracle(vec({0, 0, 0}), {vec({1, 0, 0}), vec({0, 1, 0})});
    double prev = 0.0;
    for (const long budget : {200L, 1000L, 5000L, 20000L}) {
        const double g = gamma_estimate(vec({0, 0, 0}), 1.0, plane, budget, 7);
        CHECK(g >= prev);
        prev = g;
    }
}

TEST_CASE("porosity of the reference sets") {
    const SetOracle plane =
        affine_subspace_oracle(vec({0, 0, 0}), {vec({1, 0, 0}), vec({0, 1, 0})});
    const auto est = porosity_estimate(vec({0, 0, 0}), plane, default_radius_schedule(), 20000, 3);
    CHECK(est.p_hat >= 0.40);
    CHECK(est.p_hat <= 0.50);
    REQUIRE(est.gamma_hat.size() == est.radii.size());
    for (size_t i = 0; i < est.radii.size(); ++i) CHECK(est.gamma_hat[i] <= est.radii[i]);

    const auto whole =
        porosity_estimate(vec({0, 0}), whole_space_oracle(2), default_radius_schedule(), 500, 3);
    CHECK(whole.p_hat == 0.0);

    const auto point =
        porosity_estimate(vec({0}), singleton_oracle(vec({0})), default_radius_schedule(), 20000, 3);
    CHECK(point.p_hat >= 0.40);
    CHECK(point.p_hat <= 0.50);

    // p_hat is the min of gamma/R over the three smallest radii
    double expected = std::numeric_limits<double>::infinity();
    for (size_t i = point.radii.size() - 3; i < point.radii.size(); ++i)
        expected = std::min(expected, point.gamma_hat[i] / point.radii[i]);
    CHECK(point.p_hat == expected);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(gamma_estimate(vec({0}), 1.0, singleton_oracle(vec({0})), 50, 0), Error);
    CHECK_THROWS_AS(
        porosity_estimate(vec({0}), singleton_oracle(vec({0})), {1.0, 0.5, 0.25}, 500, 0),
        Error);
    CHECK_THROWS_AS(
        porosity_estimate(vec({0}), singleton_oracle(vec({0})), {1.0, 0.5, 0.5, 0.25}, 500, 0),
        Error);
}

TEST_CASE("low-dimensional sets are porous at on-set points") {
    RngStream rng = stream_for(73, 0);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = 2 + trial % 2;
        std::vector<Vector> dirs;
        for (int d = 0; d < 1 + trial % 2 && d < n - 1; ++d) dirs.push_back(rng.normal_vector(n));
        const Vector base = rng.normal_vector(n);
        const SetOracle oracle = affine_subspace_oracle(base, dirs);
        Vector on_set = base;
        for (const auto& d : dirs) on_set += rng.uniform() * d;
        const auto est = porosity_estimate(on_set, oracle, default_radius_schedule(), 4000, trial);
        CHECK(est.p_hat > 0.0);
    }
}

TEST_CASE("polynomial zero sets are porous at on-set points") {
    const SetOracle circle = unit_circle_oracle();
    const auto est =
        porosity_estimate(vec({1, 0}), circle, default_radius_schedule(0.25), 4000, 11);
    CHECK(est.p_hat > 0.0);
}

TEST_CASE("rank-deficient matrices are porous at rank-deficient points") {
    const SetOracle oracle = rank_deficient_oracle(2, 2);
    const Vector diag10 = vec({1, 0, 0, 0}); // diag(1, 0) flattened row-major
    const auto est = porosity_estimate(diag10, oracle, default_radius_schedule(), 100000, 13);
    CHECK(est.p_hat > 0.1);
    // regression constant frozen from the seed-13 oracle run at budget 1e5
    CHECK(est.p_hat == doctest::Approx(0.49309810431356593).epsilon(1e-12));

    // sanity at a full-rank point: the distance stays bounded away from zero
    CHECK(oracle.distance(vec({1, 0, 0, 1})) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("preimage bound constants from the proof") {
    const auto proj = make_preimage_bound_inputs(make_map(mat(1, 2, {1, 0})), 0.5);
    CHECK(proj.nu_f == doctest::Approx(1.0));
    CHECK(proj.c == doctest::Approx(1.0));
    CHECK(proj.big_m == doctest::Approx(1.0));
    CHECK(preimage_porosity_bound(proj) == doctest::Approx(0.25));

    const auto scaled = make_preimage_bound_inputs(make_map(mat(1, 2, {2, 0})), 0.5);
    CHECK(scaled.nu_f == doctest::Approx(2.0));
    CHECK(scaled.big_m == doctest::Approx(2.0));
    CHECK(preimage_porosity_bound(scaled) == doctest::Approx(0.125));

    const auto ident = make_preimage_bound_inputs(make_map(Matrix::Identity(2, 2)), 0.3);
    CHECK(preimage_porosity_bound(ident) == doctest::Approx(0.15));

    CHECK_THROWS_WITH_AS(make_preimage_bound_inputs(make_map(mat(2, 2, {1, 0, 0, 0})), 0.5),
                         "map must be surjective", Error);
}

TEST_CASE("preimage porosity verification") {
    // f = projection R^2 -> R, Y = {0}: preimage is the vertical axis
    const auto r1 = verify_preimage_porosity(make_map(mat(1, 2, {1, 0})),
                                             singleton_oracle(vec({0})), vec({0}), 20000, 17);
    CHECK(r1.measured > 0.40);
    CHECK(r1.bound <= 0.25 + 1e-9);
    CHECK(r1.pass);

    // f = identity, Y = a line in R^2
    const auto r2 = verify_preimage_porosity(
        make_map(Matrix::Identity(2, 2)),
        affine_subspace_oracle(vec({0, 0}), {vec({0, 1})}), vec({0, 0}), 20000, 17);
    CHECK(r2.pass);

    // tiny nu_f shrinks the bound but not the measurement
    const auto r3 = verify_preimage_porosity(make_map(mat(1, 2, {0, 1e-3})),
                                             singleton_oracle(vec({0})), vec({0}), 20000, 17);
    CHECK(r3.bound < 1e-5);
    CHECK(r3.pass);
}
