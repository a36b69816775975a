#include "conelab/certify.hpp"

#include "conelab/lp.hpp"
#include "conelab/rng.hpp"
#include "internal_parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix generator_matrix(const ConeRep& k) {
    Matrix g(k.ambient_dim, static_cast<int>(k.generators.size()));
    for (size_t j = 0; j < k.generators.size(); ++j) g.col(static_cast<int>(j)) = k.generators[j];
    return g;
}

// ---------------------------------------------------------------------------
// analytic cones: margin of a vector in SOC coordinates is
//   last coordinate - norm of the rest;
// nonnegative on the cone, positive exactly on the interior. RSOC instances
// are conjugated through the soc<->rsoc change of coordinates.
// ---------------------------------------------------------------------------

struct MarginResult {
    bool has_kernel = false;
    double value = -kInf; // max margin of a unit kernel vector, SOC coords
    Vector witness;       // original coordinates, unit, exact kernel element
};

MarginResult analytic_margin_max(const LinearMap& t, const ConeRep& k,
                                 const CertifierConfig& cfg) {
    const int n = k.ambient_dim;
    const bool rsoc = k.analytic == ConeRep::Analytic::Rsoc;
    const Matrix phi = rsoc ? rsoc_from_soc_matrix(n) : Matrix(Matrix::Identity(n, n));
    LinearMap tphi(t.entries * phi);
    const Subspace ker = kernel_basis(tphi, cfg.tol.rank);
    const int d = ker.dim();
    MarginResult res;
    if (d == 0) return res;
    res.has_kernel = true;

    const Matrix& b = ker.basis; // n x d, orthonormal
    const Vector axis_row = b.row(n - 1).transpose();
    const Matrix w = b.topRows(n - 1);

    auto value_of = [&](const Vector& c) { return axis_row.dot(c) - (w * c).norm(); };

    Vector best_c;
    double best = -kInf;
    auto consider = [&](const Vector& c) {
        const double nv = c.norm();
        if (nv <= 0.0) return;
        const Vector cn = c / nv;
        const double val = value_of(cn);
        if (val > best) {
            best = val;
            best_c = cn;
        }
    };

    if (d == 1) {
        consider(Vector::Ones(1));
        consider(-Vector::Ones(1));
    } else {
        for (int i = 0; i < d; ++i) {
            Vector e = Vector::Zero(d);
            e(i) = 1.0;
            consider(e);
            consider(-e);
        }
        if (axis_row.norm() > 0.0) consider(axis_row);

        RngStream rng = stream_for(cfg.oracle_seed, 1001);
        for (long s = 0; s < cfg.margin_samples; ++s) consider(rng.unit_vector(d));

        // projected subgradient ascent on the unit sphere from the incumbent
        // and a few extra starts; step size decays geometrically to ~1e-12
        std::vector<Vector> starts;
        starts.push_back(best_c);
        if (axis_row.norm() > 0.0) starts.push_back(axis_row.normalized());
        for (int s = 0; s < 8; ++s) starts.push_back(rng.unit_vector(d));
        for (const auto& s0 : starts) {
            Vector c = s0;
            for (int it = 0; it < cfg.margin_iters; ++it) {
                const Vector wc = w * c;
                const double nw = wc.norm();
                Vector g = axis_row;
                if (nw > 1e-300) g -= w.transpose() * (wc / nw);
                Vector gt = g - g.dot(c) * c;
                const double ng = gt.norm();
                if (ng < 1e-15) break;
                const double eta =
                    0.5 * std::pow(2e-12, static_cast<double>(it) / cfg.margin_iters);
                c = (c + eta * (gt / ng)).normalized();
            }
            consider(c);
        }
    }

    Vector witness = phi * (b * best_c);
    res.value = best;
    res.witness = witness / witness.norm();
    return res;
}

LpProblem feasibility_problem(const Matrix& eq, const Vector& rhs, int nvars) {
    LpProblem p;
    p.objective = Vector::Zero(nvars);
    p.eq_lhs = eq;
    p.eq_rhs = rhs;
    p.lower_bounds.assign(nvars, 0.0);
    return p;
}

} // namespace

CertifierConfig survey_light_config() {
    CertifierConfig cfg;
    cfg.radius_starts = 16;
    cfg.radius_oracle_samples = 2000;
    cfg.margin_samples = 2000;
    cfg.margin_iters = 200;
    cfg.width_samples = 2000;
    return cfg;
}

CertClass certificate_class(const Certificate& c) {
    if (std::holds_alternative<KernelTrivial>(c)) return CertClass::KernelTrivial;
    if (std::holds_alternative<RelIntKernel>(c)) return CertClass::RelIntKernel;
    const auto& u = std::get<Uncertified>(c);
    return u.reason == Uncertified::Reason::RankDeficientOnY
               ? CertClass::UncertifiedRankDeficient
               : CertClass::UncertifiedKernelBoundary;
}

const char* cert_class_name(CertClass c) {
    switch (c) {
        case CertClass::KernelTrivial: return "kernel_trivial";
        case CertClass::RelIntKernel: return "rel_int_kernel";
        case CertClass::UncertifiedRankDeficient: return "uncertified_rank";
        case CertClass::UncertifiedKernelBoundary: return "uncertified_boundary";
    }
    return "unknown";
}

KernelConeResult kernel_cone_trivial(const LinearMap& t, const ConeRep& k,
                                     const CertifierConfig& cfg) {
    if (t.cols() != k.ambient_dim) fail("BAD_DIMENSION", "map/cone dimension mismatch");
    if (k.is_zero_cone()) return {true, std::nullopt};

    if (k.is_analytic()) {
        const MarginResult mr = analytic_margin_max(t, k, cfg);
        if (!mr.has_kernel || mr.value < -cfg.tol.lp) return {true, std::nullopt};
        return {false, mr.witness};
    }

    // Any nonzero v in cone(G) has positive inner product with some
    // generator, so the slices <g_i, v> = 1 jointly cover the cone.
    const Matrix g = generator_matrix(k);
    const int kg = static_cast<int>(k.generators.size());
    const Matrix tg = t.entries * g;
    for (int i = 0; i < kg; ++i) {
        Matrix eq(t.rows() + 1, kg);
        eq.topRows(t.rows()) = tg;
        eq.row(t.rows()) = k.generators[i].transpose() * g;
        Vector rhs = Vector::Zero(t.rows() + 1);
        rhs(t.rows()) = 1.0;
        const LpOutcome out = lp_solve(feasibility_problem(eq, rhs, kg), cfg.tol.lp);
        if (const auto* opt = std::get_if<LpOptimal>(&out)) {
            Vector v = g * opt->solution;
            const double nv = v.norm();
            if (nv > cfg.tol.lp) return {false, Vector(v / nv)};
        }
    }
    return {true, std::nullopt};
}

RiKernelResult ri_kernel_nonempty(const LinearMap& t, const ConeRep& k,
                                  const CertifierConfig& cfg) {
    if (t.cols() != k.ambient_dim) fail("BAD_DIMENSION", "map/cone dimension mismatch");
    if (k.is_zero_cone()) return {false, std::nullopt};

    auto refine_to_kernel = [&](Vector v) -> Vector {
        const Subspace ker = kernel_basis(t, cfg.tol.rank);
        if (ker.dim() > 0) {
            const Vector p = project_onto(v, ker);
            if (p.norm() > 0.5) v = p;
        }
        return v / v.norm();
    };

    if (k.is_analytic()) {
        const MarginResult mr = analytic_margin_max(t, k, cfg);
        if (!mr.has_kernel || mr.value <= cfg.tol.lp) return {false, std::nullopt};
        return {true, RayDirection{mr.witness}};
    }

    // max s  s.t.  v = G(mu + s 1), T v = 0, mu >= 0, sum(mu) + kg s = 1.
    // s > 0 exactly when the kernel meets { sum l_i g_i : l_i > 0 } = ri K.
    const Matrix g = generator_matrix(k);
    const int kg = static_cast<int>(k.generators.size());
    const Matrix tg = t.entries * g;
    const int m = t.rows();
    Matrix eq = Matrix::Zero(m + 1, kg + 1);
    eq.block(0, 0, m, kg) = tg;
    eq.block(0, kg, m, 1) = tg.rowwise().sum();
    eq.row(m).head(kg).setOnes();
    eq(m, kg) = static_cast<double>(kg);
    Vector rhs = Vector::Zero(m + 1);
    rhs(m) = 1.0;
    LpProblem p;
    p.objective = Vector::Zero(kg + 1);
    p.objective(kg) = 1.0;
    p.eq_lhs = eq;
    p.eq_rhs = rhs;
    p.lower_bounds.assign(kg + 1, 0.0);
    const LpOutcome out = lp_solve(p, cfg.tol.lp);
    const auto* opt = std::get_if<LpOptimal>(&out);
    if (!opt || opt->value <= cfg.tol.lp) return {false, std::nullopt};

    const double s = opt->solution(kg);
    Vector lambda = opt->solution.head(kg).array() + s;
    Vector v = g * lambda;
    if (v.norm() > cfg.tol.lp) return {true, RayDirection{refine_to_kernel(v)}};

    // Positive combinations cancel only when the cone is a linear subspace;
    // ri K = K then, and any nonzero kernel vector inside the hull serves as
    // the ray. Without one there is no ray at all.
    const Matrix tb = t.entries * k.hull.basis;
    const Subspace ck = kernel_basis(LinearMap(tb), cfg.tol.rank);
    if (ck.dim() == 0) return {false, std::nullopt};
    Vector ray = k.hull.basis * ck.basis.col(0);
    return {true, RayDirection{refine_to_kernel(ray)}};
}

int rank_restriction(const LinearMap& t, const Subspace& y, double eps_rel) {
    if (y.dim() == 0) return 0;
    if (y.ambient_dim != t.cols()) fail("BAD_DIMENSION", "subspace/map dimension mismatch");
    return rank_with_tol(LinearMap(t.entries * y.basis), eps_rel);
}

// ---------------------------------------------------------------------------
// minimum of |Tv| over the unit slice of K
// ---------------------------------------------------------------------------

namespace {

// shrink-and-resample rounds shared by the sampling oracle
constexpr double kZoomSigmas[5] = {0.2, 0.02, 0.002, 2e-4, 2e-5};
constexpr int kZoomRounds = 5;

double slice_min_polyhedral(const Matrix& a, const ConeRep& k, long samples,
                            std::uint64_t seed) {
    const Matrix g = generator_matrix(k);
    const int kg = static_cast<int>(g.cols());
    double best = kInf;
    Vector best_lambda = Vector::Zero(kg);

    auto consider = [&](const Vector& lambda) {
        const Vector u = g * lambda;
        const double nu = u.norm();
        if (nu < 1e-12) return;
        const double val = (a * u).norm() / nu;
        if (val < best) {
            best = val;
            best_lambda = lambda;
        }
    };

    for (int i = 0; i < kg; ++i) {
        Vector e = Vector::Zero(kg);
        e(i) = 1.0;
        consider(e);
    }
    long stencil_pairs = 0;
    for (int i = 0; i < kg && stencil_pairs < 600; ++i)
        for (int j = i + 1; j < kg && stencil_pairs < 600; ++j) {
            Vector e = Vector::Zero(kg);
            e(i) = 0.5;
            e(j) = 0.5;
            consider(e);
            ++stencil_pairs;
        }

    const long global = std::max<long>(1, (samples * 2) / 5);
    RngStream rng = stream_for(seed, 2001);
    for (long s = 0; s < global; ++s) {
        Vector lambda(kg);
        for (int i = 0; i < kg; ++i) lambda(i) = -std::log(1.0 - rng.uniform());
        consider(lambda);
    }
    const long per_round = std::max<long>(1, (samples - global) / kZoomRounds);
    for (int round = 0; round < kZoomRounds; ++round) {
        const double sigma = kZoomSigmas[round];
        const double scale = std::max(best_lambda.lpNorm<Eigen::Infinity>(), 1e-6);
        const Vector center = best_lambda;
        for (long s = 0; s < per_round; ++s) {
            Vector lambda = center;
            for (int i = 0; i < kg; ++i)
                lambda(i) = std::max(0.0, lambda(i) + sigma * scale * rng.normal());
            consider(lambda);
        }
    }
    return best;
}

double slice_min_analytic(const Matrix& a, const ConeRep& k, long samples,
                          std::uint64_t seed) {
    const int n = k.ambient_dim;
    const bool rsoc = k.analytic == ConeRep::Analytic::Rsoc;
    const Matrix phi = rsoc ? rsoc_from_soc_matrix(n) : Matrix(Matrix::Identity(n, n));
    const Matrix aphi = a * phi;

    double best = kInf;
    double best_angle = 0.0;
    Vector best_dir = Vector::Zero(n - 1);
    best_dir(0) = 1.0;

    auto consider = [&](double angle, const Vector& dir) {
        Vector u(n);
        u.head(n - 1) = std::sin(angle) * dir;
        u(n - 1) = std::cos(angle);
        const double nu = (phi * u).norm();
        if (nu < 1e-12) return;
        const double val = (aphi * u).norm() / nu;
        if (val < best) {
            best = val;
            best_angle = angle;
            best_dir = dir;
        }
    };

    RngStream rng = stream_for(seed, 2002);
    consider(0.0, best_dir);
    for (int s = 0; s < 32; ++s) consider(M_PI / 4.0, rng.unit_vector(n - 1));
    const long global = std::max<long>(1, (samples * 2) / 5);
    for (long s = 0; s < global; ++s)
        consider(rng.uniform() * M_PI / 4.0, rng.unit_vector(n - 1));
    const long per_round = std::max<long>(1, (samples - global) / kZoomRounds);
    for (int round = 0; round < kZoomRounds; ++round) {
        const double sigma = kZoomSigmas[round];
        const double angle0 = best_angle;
        const Vector dir0 = best_dir;
        for (long s = 0; s < per_round; ++s) {
            const double angle = std::clamp(angle0 + sigma * (M_PI / 4.0) * rng.normal(),
                                            0.0, M_PI / 4.0);
            Vector dir = dir0 + sigma * rng.normal_vector(n - 1);
            const double nd = dir.norm();
            if (nd < 1e-12) continue;
            consider(angle, dir / nd);
        }
    }
    return best;
}

Vector project_soc(const Vector& v) {
    const int n = static_cast<int>(v.size());
    const double nw = v.head(n - 1).norm();
    const double z = v(n - 1);
    if (z >= nw) return v;
    Vector out = Vector::Zero(n);
    if (z <= -nw) return out;
    const double alpha = 0.5 * (z + nw);
    if (nw > 0.0) out.head(n - 1) = (alpha / nw) * v.head(n - 1);
    out(n - 1) = alpha;
    return out;
}

double descent_min_polyhedral(const Matrix& a, const ConeRep& k,
                              const CertifierConfig& cfg) {
    const Matrix g = generator_matrix(k);
    const int kg = static_cast<int>(g.cols());
    double best = kInf;

    auto value_of = [&](const Vector& lambda) -> double {
        const Vector u = g * lambda;
        const double nu = u.norm();
        if (nu < 1e-12) return kInf;
        return (a * u).norm() / nu;
    };

    std::vector<Vector> starts;
    for (int i = 0; i < kg; ++i) {
        Vector e = Vector::Zero(kg);
        e(i) = 1.0;
        starts.push_back(e);
    }
    for (int i = 0; i < kg && static_cast<int>(starts.size()) < cfg.radius_starts; ++i)
        for (int j = i + 1; j < kg && static_cast<int>(starts.size()) < cfg.radius_starts; ++j) {
            Vector e = Vector::Zero(kg);
            e(i) = 0.5;
            e(j) = 0.5;
            starts.push_back(e);
        }
    RngStream rng = stream_for(cfg.oracle_seed, 3001);
    while (static_cast<int>(starts.size()) < cfg.radius_starts) {
        Vector lambda(kg);
        for (int i = 0; i < kg; ++i) lambda(i) = -std::log(1.0 - rng.uniform());
        starts.push_back(lambda);
    }

    for (auto lambda : starts) {
        double nu = (g * lambda).norm();
        if (nu < 1e-12) continue;
        lambda /= nu;
        for (int it = 0; it < cfg.radius_iters; ++it) {
            const Vector u = g * lambda;
            const double un = u.norm();
            if (un < 1e-12) break;
            const Vector w = a * u;
            const double wn = w.norm();
            if (wn < 1e-15) break;
            const Vector grad = (g.transpose() * (a.transpose() * w)) / (wn * un) -
                                (wn / (un * un * un)) * (g.transpose() * u);
            const double gn = grad.norm();
            if (gn < 1e-16) break;
            const double eta =
                0.3 * std::pow(3e-12, static_cast<double>(it) / cfg.radius_iters);
            lambda = (lambda - eta * grad / gn).cwiseMax(0.0);
            const double s = (g * lambda).norm();
            if (s < 1e-12) break;
            lambda /= s;
        }
        best = std::min(best, value_of(lambda));
    }
    return best;
}

double descent_min_analytic(const Matrix& a, const ConeRep& k,
                            const CertifierConfig& cfg) {
    const int n = k.ambient_dim;
    const bool rsoc = k.analytic == ConeRep::Analytic::Rsoc;
    const Matrix phi = rsoc ? rsoc_from_soc_matrix(n) : Matrix(Matrix::Identity(n, n));
    const Matrix aphi = a * phi;
    const Matrix gram = phi.transpose() * phi;

    auto value_of = [&](const Vector& u) -> double {
        const double nu = (phi * u).norm();
        if (nu < 1e-12) return kInf;
        return (aphi * u).norm() / nu;
    };

    std::vector<Vector> starts;
    Vector axis = Vector::Zero(n);
    axis(n - 1) = 1.0;
    starts.push_back(axis);
    RngStream rng = stream_for(cfg.oracle_seed, 3002);
    while (static_cast<int>(starts.size()) < cfg.radius_starts) {
        const double angle = rng.uniform() * M_PI / 4.0;
        Vector u(n);
        u.head(n - 1) = std::sin(angle) * rng.unit_vector(n - 1);
        u(n - 1) = std::cos(angle);
        starts.push_back(u);
    }

    double best = kInf;
    for (auto u : starts) {
        for (int it = 0; it < cfg.radius_iters; ++it) {
            const Vector pu = phi * u;
            const double nu = pu.norm();
            if (nu < 1e-12) break;
            const Vector w = aphi * u;
            const double wn = w.norm();
            if (wn < 1e-15) break;
            const Vector grad = (aphi.transpose() * w) / (wn * nu) -
                                (wn / (nu * nu * nu)) * (gram * u);
            const double gn = grad.norm();
            if (gn < 1e-16) break;
            const double eta =
                0.3 * std::pow(3e-12, static_cast<double>(it) / cfg.radius_iters);
            u = project_soc(u - eta * grad / gn);
            const double s = u.norm();
            if (s < 1e-12) {
                u = axis;
                break;
            }
            u /= s;
        }
        best = std::min(best, value_of(u));
    }
    return best;
}

double radius_given_trivial(const LinearMap& t, const ConeRep& k,
                            const CertifierConfig& cfg) {
    if (k.is_zero_cone()) return kInf;
    const double norm = operator_norm(t);
    if (norm <= 0.0) return 0.0;
    const Matrix a = t.entries / norm;
    const double descent = k.is_analytic() ? descent_min_analytic(a, k, cfg)
                                           : descent_min_polyhedral(a, k, cfg);
    const double oracle =
        k.is_analytic()
            ? slice_min_analytic(a, k, cfg.radius_oracle_samples, cfg.oracle_seed)
            : slice_min_polyhedral(a, k, cfg.radius_oracle_samples, cfg.oracle_seed);
    return std::max(0.0, norm * std::min(descent, oracle) - 1e-6);
}

} // namespace

double slice_min_bruteforce(const LinearMap& t, const ConeRep& k, long samples,
                            std::uint64_t seed) {
    if (t.cols() != k.ambient_dim) fail("BAD_DIMENSION", "map/cone dimension mismatch");
    if (k.is_zero_cone()) return kInf;
    if (k.is_analytic()) return slice_min_analytic(t.entries, k, samples, seed);
    return slice_min_polyhedral(t.entries, k, samples, seed);
}

double stability_radius_A(const LinearMap& t, const ConeRep& k,
                          const CertifierConfig& cfg) {
    const KernelConeResult kt = kernel_cone_trivial(t, k, cfg);
    if (!kt.trivial) fail("NOT_APPLICABLE", "condition A does not hold");
    return radius_given_trivial(t, k, cfg);
}

// ---------------------------------------------------------------------------
// certified angular width around an interior ray
// ---------------------------------------------------------------------------

namespace {

// First angle in (0, pi/2] at which cos(a) u + sin(a) w leaves RSOC.
double rsoc_exit_angle(const Vector& u, const Vector& w) {
    const int n = static_cast<int>(u.size());
    const double ax = u(0), az = u(n - 1);
    const double wx = w(0), wz = w(n - 1);
    const double a = ax * az - u.segment(1, n - 2).squaredNorm();
    const double b = ax * wz + az * wx - 2.0 * u.segment(1, n - 2).dot(w.segment(1, n - 2));
    const double c = wx * wz - w.segment(1, n - 2).squaredNorm();

    double theta = M_PI / 2.0;
    // xz - |y|^2 = 0 along the arc: quadratic in tan(angle)
    if (std::abs(c) > 1e-300) {
        const double disc = b * b - 4.0 * c * a;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            for (const double root : {(-b - sq) / (2.0 * c), (-b + sq) / (2.0 * c)})
                if (root > 0.0) theta = std::min(theta, std::atan(root));
        }
    } else if (std::abs(b) > 1e-300) {
        const double root = -a / b;
        if (root > 0.0) theta = std::min(theta, std::atan(root));
    }
    // coordinate positivity exits
    if (wx < 0.0) theta = std::min(theta, std::atan(ax / -wx));
    if (wz < 0.0) theta = std::min(theta, std::atan(az / -wz));
    return theta;
}

} // namespace

double cone_width_delta(const ConeRep& k, const RayDirection& u,
                        const CertifierConfig& cfg) {
    if (u.u.size() != k.ambient_dim) fail("BAD_DIMENSION", "ray dimension mismatch");
    if (!ri_contains(k, u.u, cfg.tol.membership))
        fail("RAY_NOT_INTERIOR", "ray is not in the relative interior");

    switch (k.analytic) {
        case ConeRep::Analytic::Soc: {
            const int n = k.ambient_dim;
            const double theta = std::atan2(u.u.head(n - 1).norm(), u.u(n - 1));
            return std::sin(M_PI / 4.0 - theta);
        }
        case ConeRep::Analytic::Rsoc: {
            const int n = k.ambient_dim;
            Subspace line;
            line.ambient_dim = n;
            line.basis = u.u;
            auto sample_perp = [&](RngStream& rng) -> Vector {
                Vector w = project_complement(rng.normal_vector(n), line);
                const double nw = w.norm();
                return nw > 1e-12 ? Vector(w / nw) : Vector();
            };
            RngStream rng = stream_for(cfg.oracle_seed, 4001);
            double theta_min = M_PI / 2.0;
            Vector worst;
            const long global = std::max<long>(64, (cfg.width_samples * 2) / 5);
            for (long s = 0; s < global; ++s) {
                const Vector w = sample_perp(rng);
                if (w.size() == 0) continue;
                const double theta = rsoc_exit_angle(u.u, w);
                if (theta < theta_min) {
                    theta_min = theta;
                    worst = w;
                }
            }
            const long per_round = std::max<long>(16, (cfg.width_samples * 3) / 20);
            for (int round = 0; round < 4 && worst.size() > 0; ++round) {
                const double sigma = kZoomSigmas[round];
                const Vector center = worst;
                for (long s = 0; s < per_round; ++s) {
                    Vector w = project_complement(
                        Vector(center + sigma * rng.normal_vector(n)), line);
                    const double nw = w.norm();
                    if (nw < 1e-12) continue;
                    w /= nw;
                    const double theta = rsoc_exit_angle(u.u, w);
                    if (theta < theta_min) {
                        theta_min = theta;
                        worst = w;
                    }
                }
            }
            return std::clamp(std::sin(theta_min) - 1e-9, 1e-12, 1.0 - 1e-12);
        }
        case ConeRep::Analytic::None: break;
    }

    const std::vector<Vector>* facets = nullptr;
    ConeRep converted;
    if (k.facets) {
        facets = &*k.facets;
    } else {
        converted = dd_convert(k, cfg.tol);
        facets = &*converted.facets;
    }
    if (facets->empty()) {
        // the cone fills its hull; every angular width below 1 is certified
        return std::sqrt(0.5);
    }
    double delta = 1.0;
    for (const auto& a : *facets) delta = std::min(delta, a.dot(u.u));
    return std::clamp(delta, 1e-12, 1.0 - 1e-12);
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

Certificate classify_cone(const LinearMap& t, const ConeRep& k,
                          const CertifierConfig& cfg, bool with_payload) {
    if (t.cols() != k.ambient_dim) fail("BAD_DIMENSION", "map/set dimension mismatch");
    const int m = t.rows();
    const int p = k.dim();
    const int r = rank_restriction(t, k.hull, cfg.tol.rank);
    if (r < std::min(m, p))
        return Uncertified{Uncertified::Reason::RankDeficientOnY, std::nullopt};

    const KernelConeResult kt = kernel_cone_trivial(t, k, cfg);
    if (kt.trivial) {
        const double radius =
            with_payload ? radius_given_trivial(t, k, cfg)
                         : std::numeric_limits<double>::quiet_NaN();
        return KernelTrivial{radius};
    }
    if (p > m) {
        const RiKernelResult rk = ri_kernel_nonempty(t, k, cfg);
        if (rk.nonempty) {
            const double delta =
                with_payload ? cone_width_delta(k, *rk.ray, cfg)
                             : std::numeric_limits<double>::quiet_NaN();
            return RelIntKernel{*rk.ray, delta, r};
        }
    }
    return Uncertified{Uncertified::Reason::KernelTouchesBoundary, kt.witness};
}

Certificate classify(const LinearMap& t, const ConvexSet& x, const CertifierConfig& cfg) {
    return classify_cone(t, asymptotic_cone(x, cfg.tol), cfg, true);
}

CertClass classify_class(const LinearMap& t, const ConvexSet& x,
                         const CertifierConfig& cfg) {
    return certificate_class(classify_cone(t, asymptotic_cone(x, cfg.tol), cfg, false));
}

// ---------------------------------------------------------------------------
// condition-B preimage construction
// ---------------------------------------------------------------------------

PreimageWitness preimage_from_certificate(const LinearMap& t, const ConeRep& k,
                                          const RayDirection& ray, double delta,
                                          const Vector& y, double margin,
                                          const Tolerances& tol) {
    if (margin <= 0.0) fail("BAD_ARGUMENT", "margin must be positive");
    if (delta <= 0.0 || delta >= 1.0) fail("BAD_ARGUMENT", "delta must lie in (0,1)");

    const Matrix& basis = k.hull.basis;
    const Vector c = least_norm_solution(LinearMap(t.entries * basis), y, tol);
    const Vector x_min = basis * c;
    const double nx = x_min.norm();
    const double stretch = std::sqrt((1.0 - delta * delta) / (delta * delta));
    const double step = nx > 0.0 ? nx * stretch * (1.0 + margin) : margin;
    Vector w = x_min + step * ray.u;

    const double yscale = std::max(1.0, y.norm());
    if ((t.entries * w - y).norm() > 1e-8 * yscale)
        fail("NUMERIC", "preimage residual exceeded tolerance");
    if (!contains(k, w, 1e-8 * std::max(1.0, w.norm())))
        fail("NUMERIC", "preimage left the asymptotic cone");
    return PreimageWitness{x_min, step, std::move(w), delta, margin};
}

PreimageWitness preimage_witness(const LinearMap& t, const ConvexSet& x,
                                 const Vector& y, double margin,
                                 const CertifierConfig& cfg) {
    const ConeRep k = asymptotic_cone(x, cfg.tol);
    const Certificate cert = classify_cone(t, k, cfg, true);
    const auto* b = std::get_if<RelIntKernel>(&cert);
    if (!b) fail("NOT_CERTIFIED_B", "map/set pair is not condition-B certified");
    return preimage_from_certificate(t, k, b->ray, b->delta, y, margin, cfg.tol);
}

// ---------------------------------------------------------------------------
// repair of boundary-kernel pairs
// ---------------------------------------------------------------------------

LinearMap repair(const LinearMap& t, const ConvexSet& x, double eps,
                 const CertifierConfig& cfg) {
    if (eps <= 0.0 || eps >= 1.0) fail("BAD_ARGUMENT", "eps must lie in (0,1)");
    const ConeRep k = asymptotic_cone(x, cfg.tol);
    const Certificate cert = classify_cone(t, k, cfg, false);
    const CertClass cls = certificate_class(cert);
    if (cls == CertClass::KernelTrivial || cls == CertClass::RelIntKernel)
        fail("NOT_APPLICABLE", "map is already certified");
    if (cls == CertClass::UncertifiedRankDeficient)
        fail("NOT_APPLICABLE", "restriction to the hull is rank-deficient");

    const auto& u = std::get<Uncertified>(cert);
    if (!u.witness) fail("NUMERIC", "missing boundary witness");
    const Vector vstar = *u.witness;
    const Vector interior = ri_point(k).u;
    Vector vk = (1.0 - eps) * vstar + eps * interior;
    vk /= vk.norm();

    // x -> projection onto (vk)-perp, lifted back into (vstar)-perp along vk
    const int n = t.cols();
    const Matrix p2 = Matrix::Identity(n, n) - vk * vk.transpose();
    const double denom = vk.dot(vstar);
    if (std::abs(denom) < 1e-9) fail("NUMERIC", "repair directions nearly orthogonal");
    const Matrix m = p2 - (vk * (vstar.transpose() * p2)) / denom;
    return make_map(t.entries * m);
}

// ---------------------------------------------------------------------------
// perturbation survey of a certificate
// ---------------------------------------------------------------------------

NeighborhoodReport neighborhood_check(const LinearMap& t, const ConvexSet& x,
                                      double r, long samples, std::uint64_t seed,
                                      const CertifierConfig& cfg) {
    if (!(r > 0.0) || !std::isfinite(r)) fail("BAD_ARGUMENT", "radius must be positive");
    const ConeRep k = asymptotic_cone(x, cfg.tol);
    const CertClass base = certificate_class(classify_cone(t, k, cfg, false));
    if (base == CertClass::UncertifiedRankDeficient ||
        base == CertClass::UncertifiedKernelBoundary)
        fail("NOT_APPLICABLE", "pair is not certified");
    if (samples <= 0) return {1.0, 0, true};

    const int m = t.rows(), n = t.cols();
    std::vector<char> ok(static_cast<size_t>(samples), 0);
    detail::parallel_for(samples, [&](long i) {
        RngStream rng = stream_for(seed, static_cast<std::uint64_t>(i));
        const Matrix e = rng.normal_matrix(m, n);
        const double en = operator_norm(LinearMap(e));
        Matrix s = t.entries;
        if (en > 0.0) {
            const double rho = std::pow(rng.uniform(), 1.0 / (m * n));
            s += (r * rho / en) * e;
        }
        ok[static_cast<size_t>(i)] =
            certificate_class(classify_cone(LinearMap(s), k, cfg, false)) == base ? 1 : 0;
    });
    long hits = 0;
    for (char c : ok) hits += c;
    return {static_cast<double>(hits) / static_cast<double>(samples), samples, false};
}

} // namespace conelab
