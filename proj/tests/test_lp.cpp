#include "conelab/lp.hpp"
#include "conelab/rng.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

using namespace conelab;
using conelab::testing::mat;
using conelab::testing::vec;

namespace {

LpProblem simple(Vector c, Matrix a, Vector b) {
    LpProblem p;
    p.objective = std::move(c);
    p.eq_lhs = std::move(a);
    p.eq_rhs = std::move(b);
    p.lower_bounds.assign(p.objective.size(), 0.0);
    return p;
}

// enumerate basic solutions of {Ax = b, x >= 0} and maximize c.x
double brute_force_max(const LpProblem& p) {
    const int n = static_cast<int>(p.objective.size());
    const int m = static_cast<int>(p.eq_lhs.rows());
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(m);
    std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == m) {
            Matrix sub(m, m);
            for (int j = 0; j < m; ++j) sub.col(j) = p.eq_lhs.col(idx[j]);
            const Eigen::FullPivLU<Matrix> lu(sub);
            if (!lu.isInvertible()) return;
            const Vector xs = lu.solve(p.eq_rhs);
            if ((sub * xs - p.eq_rhs).norm() > 1e-8) return;
            if (xs.minCoeff() < -1e-9) return;
            Vector x = Vector::Zero(n);
            for (int j = 0; j < m; ++j) x(idx[j]) = xs(j);
            best = std::max(best, p.objective.dot(x));
            return;
        }
        for (int i = start; i <= n - (m - chosen); ++i) {
            idx[chosen] = i;
            rec(i + 1, chosen + 1);
        }
    };
    rec(0, 0);
    return best;
}

} // namespace

TEST_CASE("reference outcomes") {
    // max l1 s.t. l1 + l2 = 1, l >= 0
    const LpOutcome a = lp_solve(simple(vec({1, 0}), mat(1, 2, {1, 1}), vec({1})));
    REQUIRE(lp_is_optimal(a));
    CHECK(std::get<LpOptimal>(a).value == doctest::Approx(1.0).epsilon(1e-9));

    // l1 = -1 with l1 >= 0
    const LpOutcome b = lp_solve(simple(vec({1}), mat(1, 1, {1}), vec({-1})));
    CHECK(lp_is_infeasible(b));

    // max l1, only l1 >= 0
    const LpOutcome c = lp_solve(simple(vec({1}), Matrix(0, 1), Vector(0)));
    CHECK(lp_is_unbounded(c));
}

TEST_CASE("free variables and nonzero lower bounds") {
    // max -x s.t. x + y = 3, x free, y >= 2  ->  x = 1 at y = 2... the
    // objective pushes x down; y has no upper bound so x is unbounded below?
    // No: maximizing -x means minimizing x; y <= inf allows x -> -inf.
    LpProblem p;
    p.objective = vec({-1, 0});
    p.eq_lhs = mat(1, 2, {1, 1});
    p.eq_rhs = vec({3});
    p.lower_bounds = {std::nullopt, 2.0};
    CHECK(lp_is_unbounded(lp_solve(p)));

    // bound y from above via slack: x + y = 3, y + s = 2.5, all of x,s >= 0
    LpProblem q;
    q.objective = vec({-1, 0, 0});
    q.eq_lhs = mat(2, 3, {1, 1, 0, 0, 1, 1});
    q.eq_rhs = vec({3, 2.5});
    q.lower_bounds = {0.0, std::nullopt, 0.0};
    const LpOutcome out = lp_solve(q);
    REQUIRE(lp_is_optimal(out));
    CHECK(std::get<LpOptimal>(out).solution(0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("optimal solutions satisfy the constraints") {
    RngStream rng = stream_for(23, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform() * 5);
        const int m = 1 + static_cast<int>(rng.uniform() * 3);
        Matrix a = rng.normal_matrix(m, n);
        Vector x0(n);
        for (int i = 0; i < n; ++i) x0(i) = 0.5 + rng.uniform();
        Vector b = a * x0;
        const LpOutcome out = lp_solve(simple(rng.normal_vector(n), a, b));
        if (const auto* opt = std::get_if<LpOptimal>(&out)) {
            CHECK((a * opt->solution - b).norm() < 1e-9 * (1.0 + b.norm()));
            CHECK(opt->solution.minCoeff() > -1e-9);
        }
    }
}

TEST_CASE("matches brute-force vertex enumeration on bounded instances") {
    RngStream rng = stream_for(29, 0);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform() * 5); // <= 8 vars
        const int m_rand = 1 + static_cast<int>(rng.uniform() * 2);
        Matrix a(m_rand + 1, n);
        a.topRows(m_rand) = rng.normal_matrix(m_rand, n);
        a.row(m_rand).setOnes(); // sum(x) fixed => bounded feasible set
        Vector x0(n);
        for (int i = 0; i < n; ++i) x0(i) = 0.5 + rng.uniform();
        const Vector b = a * x0;
        const LpProblem p = simple(rng.normal_vector(n), a, b);
        const LpOutcome out = lp_solve(p);
        REQUIRE(lp_is_optimal(out)); // feasible by construction, bounded by the sum row
        const double brute = brute_force_max(p);
        CHECK(std::get<LpOptimal>(out).value == doctest::Approx(brute).epsilon(1e-8));
        ++compared;
    }
    CHECK(compared == 60);
}

TEST_CASE("scale guard") {
    LpProblem p;
    p.objective = Vector::Zero(600);
    p.eq_lhs = Matrix::Zero(1, 600);
    p.eq_rhs = Vector::Zero(1);
    p.lower_bounds.assign(600, 0.0);
    CHECK_THROWS_AS(lp_solve(p), Error);
}
