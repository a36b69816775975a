#include "conelab/convex_set.hpp"
#include "conelab/rng.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace conelab;
using conelab::testing::mat;
using conelab::testing::vec;

namespace {

bool has_direction(const std::vector<Vector>& vs, const Vector& target, double tol = 1e-8) {
    const Vector t = target / target.norm();
    return std::any_of(vs.begin(), vs.end(), [&](const Vector& v) {
        return (v / v.norm() - t).norm() < tol;
    });
}

ConeRep orthant2() {
    return make_polyhedral_cone(2, {vec({1, 0}), vec({0, 1})});
}

// random polyhedral cone at desk scale
ConeRep random_cone(RngStream& rng, int max_dim = 4, int max_gens = 6) {
    const int n = 2 + static_cast<int>(rng.uniform() * (max_dim - 1));
    const int g = 1 + static_cast<int>(rng.uniform() * max_gens);
    std::vector<Vector> gens;
    for (int i = 0; i < g; ++i) gens.push_back(rng.normal_vector(n));
    return make_polyhedral_cone(n, gens);
}

} // namespace

TEST_CASE("asymptotic cone per set class") {
    // bounded polytope recedes nowhere
    const ConvexSet polytope = make_polyhedron({vec({0, 0}), vec({1, 0}), vec({0, 1})}, {});
    const ConeRep zero = asymptotic_cone(polytope);
    CHECK(zero.is_zero_cone());
    CHECK(zero.dim() == 0);
    CHECK(zero.facets.has_value());
    CHECK(zero.facets->empty());

    const ConvexSet wedge =
        make_polyhedron({vec({0, 0})}, {vec({1, 0}), vec({1, 1})});
    const ConeRep cone = asymptotic_cone(wedge);
    CHECK(cone.generators.size() == 2);
    CHECK(cone.dim() == 2);

    const ConvexSet shifted = make_translate(make_soc_set(3), vec({5, 5, 5}));
    const ConeRep soc = asymptotic_cone(shifted);
    CHECK(soc.analytic == ConeRep::Analytic::Soc);
    CHECK(soc.dim() == 3);

    CHECK_THROWS_AS(asymptotic_cone(make_polyhedron({}, {vec({1, 0})})), Error);
}

TEST_CASE("translate nesting flattens") {
    const ConvexSet t1 = make_translate(make_soc_set(3), vec({1, 0, 0}));
    const ConvexSet t2 = make_translate(t1, vec({0, 2, 0}));
    const auto& inner = std::get<TranslateSet>(t2);
    CHECK((inner.offset - vec({1, 2, 0})).norm() < 1e-15);
    CHECK(std::holds_alternative<SecondOrderConeSet>(*inner.base));
}

TEST_CASE("double description reference facets") {
    const ConeRep ort = dd_convert(orthant2());
    REQUIRE(ort.facets.has_value());
    CHECK(ort.facets->size() == 2);
    CHECK(has_direction(*ort.facets, vec({1, 0})));
    CHECK(has_direction(*ort.facets, vec({0, 1})));

    const ConeRep wedge = make_polyhedral_cone(2, {vec({1, 0}), vec({1, 1})});
    REQUIRE(wedge.facets.has_value());
    CHECK(wedge.facets->size() == 2);
    CHECK(has_direction(*wedge.facets, vec({0, 1})));
    CHECK(has_direction(*wedge.facets, vec({1, -1})));

    const ConeRep ray = make_polyhedral_cone(2, {vec({1, 0})});
    CHECK(ray.dim() == 1);
    REQUIRE(ray.facets.has_value());
    REQUIRE(ray.facets->size() == 1);
    CHECK(has_direction(*ray.facets, vec({1, 0})));
}

TEST_CASE("dd_convert guards") {
    CHECK_THROWS_AS(dd_convert(make_soc_cone(3)), Error);
    std::vector<Vector> many;
    RngStream rng = stream_for(3, 0);
    for (int i = 0; i < 33; ++i) many.push_back(rng.normal_vector(4));
    ConeRep big;
    big.ambient_dim = 4;
    big.generators = many;
    big.hull = orthonormalize(many);
    CHECK_THROWS_WITH_AS(dd_convert(big), "double description beyond desk scale", Error);
}

TEST_CASE("membership oracles") {
    CHECK(contains(make_soc_set(3), vec({0, 0, 1}), 1e-10));
    CHECK_FALSE(contains(make_soc_set(3), vec({1, 0, 0.5}), 1e-10));
    CHECK(contains(make_rsoc_set(3), vec({1, 1, 1}), 1e-10)); // boundary: 1*1 = 1^2

    const ConvexSet wedge = make_polyhedron({vec({0, 0})}, {vec({1, 0}), vec({1, 1})});
    CHECK(contains(wedge, vec({2, 1}), 1e-9));
    CHECK_FALSE(contains(wedge, vec({-1, 0}), 1e-9));
    CHECK(contains(make_translate(wedge, vec({10, 10})), vec({12, 11}), 1e-9));

    const ConvexSet simplex = make_polyhedron({vec({0, 0}), vec({1, 0}), vec({0, 1})}, {});
    CHECK(contains(simplex, vec({0.25, 0.25}), 1e-9));
    CHECK_FALSE(contains(simplex, vec({0.75, 0.75}), 1e-9));
}

TEST_CASE("relative interior membership") {
    const ConeRep ort = orthant2();
    CHECK(ri_contains(ort, vec({1, 1}), 1e-9));
    CHECK_FALSE(ri_contains(ort, vec({1, 0}), 1e-9));

    CHECK(ri_contains(make_soc_cone(3), vec({0, 0, 1}), 1e-9));
    CHECK_FALSE(ri_contains(make_soc_cone(3), vec({1, 0, 1}), 1e-9));

    const ConeRep ray = make_polyhedral_cone(2, {vec({2, 1})});
    CHECK(ri_contains(ray, vec({2, 1}), 1e-9));
    CHECK_FALSE(ri_contains(ray, vec({1, 2}), 1e-9));

    CHECK_FALSE(ri_contains(make_zero_cone(2), vec({1, 0}), 1e-9));
}

TEST_CASE("interior rays") {
    const Vector u = ri_point(orthant2()).u;
    CHECK((u - vec({1, 1}) / std::sqrt(2.0)).norm() < 1e-12);

    CHECK((ri_point(make_soc_cone(3)).u - vec({0, 0, 1})).norm() < 1e-12);

    const Vector ur = ri_point(make_rsoc_cone(3)).u;
    CHECK((ur - vec({1, 0, 1}) / std::sqrt(2.0)).norm() < 1e-12);

    const Vector uw = ri_point(make_polyhedral_cone(2, {vec({2, 1}), vec({1, 2})})).u;
    CHECK((uw - vec({1, 1}) / std::sqrt(2.0)).norm() < 1e-12);

    CHECK_THROWS_AS(ri_point(make_zero_cone(3)), Error);

    // ri_point lands in the relative interior for random cones
    RngStream rng = stream_for(5, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const ConeRep k = random_cone(rng);
        CHECK(ri_contains(k, ri_point(k).u, 1e-10));
    }
}

TEST_CASE("asymptotic cone is idempotent and translation invariant") {
    RngStream rng = stream_for(17, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const ConeRep k = random_cone(rng);
        const ConvexSet as_set = make_cone_set(k);
        const ConeRep again = asymptotic_cone(as_set);
        for (const auto& g : k.generators) CHECK(contains(again, g, 1e-8));
        for (const auto& g : again.generators) CHECK(contains(k, g, 1e-8));

        const Vector offset = rng.normal_vector(k.ambient_dim);
        const ConeRep translated = asymptotic_cone(make_translate(as_set, offset));
        for (const auto& g : k.generators) CHECK(contains(translated, g, 1e-8));
        for (const auto& g : translated.generators) CHECK(contains(k, g, 1e-8));
    }
}

TEST_CASE("cone points stay in the base set when it is a cone") {
    RngStream rng = stream_for(19, 0);
    const std::vector<ConvexSet> sets = {
        make_cone_set(orthant2()),
        make_cone_set(make_polyhedral_cone(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})})),
        make_soc_set(3),
        make_rsoc_set(4),
    };
    for (const auto& x : sets) {
        const ConeRep k = asymptotic_cone(x);
        for (int s = 0; s < 40; ++s) {
            // sample of the cone: conic combination of generators or analytic draw
            Vector v;
            if (k.is_analytic()) {
                const int n = k.ambient_dim;
                Vector w = rng.normal_vector(n);
                const Matrix phi = k.analytic == ConeRep::Analytic::Rsoc
                                       ? rsoc_from_soc_matrix(n)
                                       : Matrix(Matrix::Identity(n, n));
                w(n - 1) = w.head(n - 1).norm() + rng.uniform(); // inside soc
                v = phi * w;
            } else {
                v = Vector::Zero(k.ambient_dim);
                for (const auto& g : k.generators) v += rng.uniform() * g;
            }
            CHECK(contains(x, v, 1e-8));
            // conic combinations of cone points stay inside (convex cone)
            Vector v2 = 0.5 * v;
            CHECK(contains(x, v2, 1e-8));
        }
    }
}

TEST_CASE("cone representation invariants hold on random cones") {
    RngStream rng = stream_for(83, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const ConeRep k = random_cone(rng);
        for (const auto& g : k.generators) {
            CHECK(subspace_residual(g, k.hull) <= 1e-10 * g.norm());
            REQUIRE(k.facets.has_value());
            for (const auto& a : *k.facets) {
                CHECK(std::abs(a.norm() - 1.0) < 1e-10);
                CHECK(a.dot(g) >= -1e-10 * g.norm());
            }
        }
        CHECK((k.hull.basis.transpose() * k.hull.basis -
               Matrix::Identity(k.dim(), k.dim()))
                  .norm() < 1e-12);
    }
}

TEST_CASE("dd round trip spans the same cone") {
    RngStream rng = stream_for(31, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const ConeRep k = random_cone(rng);
        REQUIRE(k.facets.has_value());
        const auto recovered = cone_generators_from_facets(k.hull, *k.facets);
        const ConeRep back = make_polyhedral_cone(k.ambient_dim, recovered);
        for (const auto& g : k.generators) CHECK(contains(back, g, 1e-8));
        for (const auto& g : recovered) CHECK(contains(k, g, 1e-8));
    }
}

TEST_CASE("soc/rsoc change of coordinates") {
    for (int dim : {3, 4, 6}) {
        const Matrix phi = rsoc_from_soc_matrix(dim);
        const Matrix inv = soc_from_rsoc_matrix(dim);
        CHECK((phi * inv - Matrix::Identity(dim, dim)).norm() < 1e-12);

        RngStream rng = stream_for(37, dim);
        const ConeRep soc = make_soc_cone(dim);
        const ConeRep rsoc = make_rsoc_cone(dim);
        for (int s = 0; s < 200; ++s) {
            const Vector v = rng.normal_vector(dim);
            CHECK(contains(soc, v, 1e-10) == contains(rsoc, Vector(phi * v), 1e-10));
        }
    }
}
