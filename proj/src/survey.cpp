#include "conelab/survey.hpp"

#include "conelab/rng.hpp"
#include "internal_parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace conelab {

namespace {

std::string describe(const ConvexSet& x) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polyhedron>) {
                return "polyhedron(points=" + std::to_string(s.points.size()) +
                       ",rays=" + std::to_string(s.rays.size()) + ")";
            } else if constexpr (std::is_same_v<T, PolyhedralConeSet>) {
                return "polyhedral_cone(generators=" +
                       std::to_string(s.rep.generators.size()) + ")";
            } else if constexpr (std::is_same_v<T, SecondOrderConeSet>) {
                return "soc(" + std::to_string(s.dim) + ")";
            } else if constexpr (std::is_same_v<T, RotatedSecondOrderConeSet>) {
                return "rsoc(" + std::to_string(s.dim) + ")";
            } else {
                return "translate(" + describe(*s.base) + ")";
            }
        },
        x);
}

} // namespace

SurveyReport survey(const ConvexSet& x, const SurveyConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = ambient_dim(x);
    if (cfg.samples < 1) fail("BAD_ARGUMENT", "need at least one sample");
    if (cfg.m < 1 || cfg.m > n || n > 8) fail("SCALE_EXCEEDED", "survey needs m <= n <= 8");

    const ConeRep k = asymptotic_cone(x, cfg.cert.tol);

    SurveyReport report;
    report.set_descriptor = describe(x);
    report.m = cfg.m;
    report.n = n;
    report.samples = cfg.samples;
    report.seed = cfg.seed;
    report.rows.resize(static_cast<size_t>(cfg.samples));

    detail::parallel_for(cfg.samples, [&](long i) {
        RngStream rng = stream_for(cfg.seed, static_cast<std::uint64_t>(i));
        const LinearMap t(rng.normal_matrix(cfg.m, n));
        const Certificate cert = classify_cone(t, k, cfg.cert, true);
        SurveySample& row = report.rows[static_cast<size_t>(i)];
        row.index = i;
        row.cls = certificate_class(cert);
        row.payload = std::numeric_limits<double>::quiet_NaN();
        if (const auto* a = std::get_if<KernelTrivial>(&cert)) row.payload = a->radius;
        if (const auto* b = std::get_if<RelIntKernel>(&cert)) row.payload = b->delta;
    });

    // perturbation re-checks on a deterministic sub-sample of certified maps
    double persistence_sum = 0.0;
    const ConvexSet cone_set = make_cone_set(k);
    for (auto& row : report.rows) {
        const bool certified =
            row.cls == CertClass::KernelTrivial || row.cls == CertClass::RelIntKernel;
        if (!certified || cfg.recheck_stride <= 0 || row.index % cfg.recheck_stride != 0)
            continue;
        RngStream rng = stream_for(cfg.seed, static_cast<std::uint64_t>(row.index));
        const LinearMap t(rng.normal_matrix(cfg.m, n));
        double radius;
        if (row.cls == CertClass::KernelTrivial) {
            radius = std::isfinite(row.payload) ? 0.5 * row.payload : 1.0;
        } else {
            radius = 1e-3; // repair-scale heuristic for condition B
        }
        if (!(radius > 0.0)) continue;
        const NeighborhoodReport nb = neighborhood_check(
            t, cone_set, radius, cfg.recheck_samples,
            cfg.seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(row.index) + 1)),
            cfg.cert);
        row.rechecked = true;
        row.recheck_fraction = nb.fraction;
        persistence_sum += nb.fraction;
        ++report.recheck_count;
    }

    std::vector<double> radii;
    for (const auto& row : report.rows) {
        ++report.counts[static_cast<int>(row.cls)];
        if (row.cls == CertClass::KernelTrivial && std::isfinite(row.payload))
            radii.push_back(row.payload);
    }
    for (int c = 0; c < 4; ++c)
        report.fractions[c] =
            static_cast<double>(report.counts[c]) / static_cast<double>(cfg.samples);
    if (!radii.empty()) {
        std::sort(radii.begin(), radii.end());
        report.radius_count = static_cast<long>(radii.size());
        report.radius_min = radii.front();
        report.radius_max = radii.back();
        report.radius_median = radii[radii.size() / 2];
    }
    report.persistence_rate =
        report.recheck_count > 0 ? persistence_sum / report.recheck_count : 1.0;

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

DemoPair nonclosed_demo_pair() {
    Matrix t(2, 3);
    t << 0, 1, 0,
         0, 0, 1;
    return DemoPair{make_map(t), make_rsoc_set(3)};
}

WitnessSequence witness_nonclosed_demo(long k_count) {
    if (k_count < 3) fail("BAD_ARGUMENT", "need at least 3 sequence terms");
    const DemoPair pair = nonclosed_demo_pair();
    WitnessSequence seq;
    for (long k = 1; k <= k_count; ++k) {
        Vector w(3);
        w << static_cast<double>(k), 1.0, 1.0 / static_cast<double>(k);
        seq.ks.push_back(k);
        seq.images.push_back(pair.t.apply(w));
        seq.points.push_back(std::move(w));
    }
    seq.limit = Vector(2);
    seq.limit << 1.0, 0.0;
    // image of this pair is {(y, z) : z > 0} united with {(0, 0)}
    const bool in_image =
        seq.limit(1) > 0.0 || (seq.limit(0) == 0.0 && seq.limit(1) == 0.0);
    seq.not_in_image = !in_image;
    return seq;
}

} // namespace conelab
