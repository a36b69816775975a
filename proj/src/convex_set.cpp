#include "conelab/convex_set.hpp"

#include "conelab/lp.hpp"

#include <algorithm>
#include <cmath>

namespace conelab {

RayDirection make_ray(const Vector& v) {
    const double n = v.norm();
    if (n <= 0.0 || !all_finite(v)) fail("ZERO_RAY", "ray direction must be nonzero");
    return RayDirection{v / n};
}

// ---------------------------------------------------------------------------
// double description core
// ---------------------------------------------------------------------------

namespace {

constexpr int kDeskAmbient = 8;
constexpr int kDeskGenerators = 32;
constexpr size_t kRayBudget = 4096;

struct DdRay {
    Vector r;                 // unit
    std::vector<int> active;  // sorted indices of tight normals so far
};

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> active_set(const Vector& r, const std::vector<Vector>& normals,
                            int upto, double snap) {
    std::vector<int> act;
    for (int i = 0; i < upto; ++i)
        if (std::abs(normals[i].dot(r)) < snap) act.push_back(i);
    return act;
}

// Extreme rays of {x in R^k : <n_i, x> >= 0} for a pointed cone (the normals
// must span R^k). Incremental insertion starting from a simplicial subcone.
std::vector<Vector> pointed_extreme_rays(int k, std::vector<Vector> normals, double snap) {
    if (k == 0) return {};
    for (auto& n : normals) {
        const double s = n.norm();
        if (s <= 0.0) fail("DD_DEGENERATE", "zero normal in double description");
        n /= s;
    }

    // greedy independent subset, moved to the front
    Matrix chosen(k, 0);
    std::vector<int> order;
    std::vector<bool> used(normals.size(), false);
    for (size_t i = 0; i < normals.size() && chosen.cols() < k; ++i) {
        Vector res = normals[i];
        for (int j = 0; j < chosen.cols(); ++j) res -= chosen.col(j).dot(res) * chosen.col(j);
        if (res.norm() > 1e-9) {
            chosen.conservativeResize(k, chosen.cols() + 1);
            chosen.col(chosen.cols() - 1) = res / res.norm();
            order.push_back(static_cast<int>(i));
            used[i] = true;
        }
    }
    if (chosen.cols() < k) fail("DD_NOT_POINTED", "normals do not span the space");
    for (size_t i = 0; i < normals.size(); ++i)
        if (!used[i]) order.push_back(static_cast<int>(i));
    std::vector<Vector> ns;
    ns.reserve(normals.size());
    for (int idx : order) ns.push_back(normals[idx]);

    // simplicial start: rays = columns of B^{-1} for the k independent normals
    Matrix b(k, k);
    for (int i = 0; i < k; ++i) b.row(i) = ns[i].transpose();
    Matrix binv = b.fullPivLu().inverse();
    std::vector<DdRay> rays;
    for (int j = 0; j < k; ++j) {
        Vector r = binv.col(j);
        r /= r.norm();
        rays.push_back({r, active_set(r, ns, k, snap)});
    }

    for (int t = k; t < static_cast<int>(ns.size()); ++t) {
        const Vector& a = ns[t];
        std::vector<double> s(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) {
            s[i] = a.dot(rays[i].r);
            if (std::abs(s[i]) < snap) s[i] = 0.0;
        }
        std::vector<size_t> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (s[i] > 0.0) pos.push_back(i);
            else if (s[i] < 0.0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (auto& r : rays) r.active = active_set(r.r, ns, t + 1, snap);
            continue;
        }

        std::vector<DdRay> next;
        for (size_t i = 0; i < rays.size(); ++i)
            if (s[i] >= 0.0) next.push_back(rays[i]);

        for (size_t ip : pos) {
            for (size_t in : neg) {
                const auto common = intersect_sorted(rays[ip].active, rays[in].active);
                bool adjacent = true;
                for (size_t j = 0; j < rays.size(); ++j) {
                    if (j == ip || j == in) continue;
                    if (subset_of(common, rays[j].active)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Vector nr = s[ip] * rays[in].r - s[in] * rays[ip].r;
                const double nn = nr.norm();
                if (nn < snap) continue;
                nr /= nn;
                next.push_back({nr, {}});
            }
        }
        if (next.size() > kRayBudget)
            fail("SCALE_EXCEEDED", "double description ray budget exceeded");
        for (auto& r : next) r.active = active_set(r.r, ns, t + 1, snap);

        // drop duplicates (same direction)
        std::vector<DdRay> dedup;
        for (auto& r : next) {
            bool dup = false;
            for (auto& d : dedup)
                if (d.r.dot(r.r) > 1.0 - 1e-9) { dup = true; break; }
            if (!dup) dedup.push_back(std::move(r));
        }
        rays = std::move(dedup);
    }

    std::vector<Vector> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(r.r);
    return out;
}

Subspace full_space(int n) {
    return Subspace{n, Matrix::Identity(n, n)};
}

Subspace trivial_space(int n) {
    return Subspace{n, Matrix(n, 0)};
}

bool within_desk_scale(const ConeRep& rep) {
    return rep.ambient_dim <= kDeskAmbient &&
           static_cast<int>(rep.generators.size()) <= kDeskGenerators;
}

std::vector<Vector> facets_for(const ConeRep& rep, const Tolerances& tol) {
    const int k = rep.dim();
    if (k == 0) return {};
    const Matrix& basis = rep.hull.basis;
    std::vector<Vector> duals;
    duals.reserve(rep.generators.size());
    for (const auto& g : rep.generators) duals.push_back(basis.transpose() * g);
    // facet normals of cone(G) inside the hull = extreme rays of the dual cone
    std::vector<Vector> rays = pointed_extreme_rays(k, duals, tol.dd_snap);
    std::vector<Vector> facets;
    facets.reserve(rays.size());
    for (const auto& r : rays) facets.push_back(basis * r);
    return facets;
}

} // namespace

ConeRep make_polyhedral_cone(int ambient_dim, const std::vector<Vector>& generators,
                             const Tolerances& tol) {
    if (ambient_dim < 1) fail("BAD_DIMENSION", "ambient dimension must be positive");
    ConeRep rep;
    rep.ambient_dim = ambient_dim;
    for (const auto& g : generators) {
        if (g.size() != ambient_dim) fail("BAD_DIMENSION", "generator dimension mismatch");
        if (!all_finite(g)) fail("NON_FINITE", "generator entries must be finite");
        if (g.norm() <= 0.0) fail("ZERO_RAY", "cone generators must be nonzero");
        rep.generators.push_back(g);
    }
    rep.hull = rep.generators.empty() ? trivial_space(ambient_dim)
                                      : orthonormalize(rep.generators, tol);
    if (rep.hull.ambient_dim == 0) rep.hull.ambient_dim = ambient_dim;
    if (within_desk_scale(rep)) rep.facets = facets_for(rep, tol);
    return rep;
}

ConeRep make_zero_cone(int ambient_dim) {
    return make_polyhedral_cone(ambient_dim, {});
}

ConeRep make_soc_cone(int dim) {
    if (dim < 2) fail("BAD_DIMENSION", "soc needs dimension >= 2");
    ConeRep rep;
    rep.ambient_dim = dim;
    rep.hull = full_space(dim);
    rep.analytic = ConeRep::Analytic::Soc;
    return rep;
}

ConeRep make_rsoc_cone(int dim) {
    if (dim < 3) fail("BAD_DIMENSION", "rsoc needs dimension >= 3");
    ConeRep rep;
    rep.ambient_dim = dim;
    rep.hull = full_space(dim);
    rep.analytic = ConeRep::Analytic::Rsoc;
    return rep;
}

ConeRep dd_convert(const ConeRep& rep, const Tolerances& tol) {
    if (rep.is_analytic()) fail("ANALYTIC_CONE", "double description needs a V-rep");
    if (!within_desk_scale(rep))
        fail("SCALE_EXCEEDED", "double description beyond desk scale");
    ConeRep out = rep;
    out.facets = facets_for(rep, tol);
    return out;
}

std::vector<Vector> cone_generators_from_facets(const Subspace& hull,
                                                const std::vector<Vector>& facets,
                                                const Tolerances& tol) {
    const int k = hull.dim();
    std::vector<Vector> gens;
    if (k == 0) return gens;
    if (facets.empty()) {
        // no inequalities: the cone is the whole hull
        for (int j = 0; j < k; ++j) {
            gens.push_back(hull.basis.col(j));
            gens.push_back(-hull.basis.col(j));
        }
        return gens;
    }
    Matrix f(static_cast<int>(facets.size()), k);
    for (size_t i = 0; i < facets.size(); ++i)
        f.row(static_cast<int>(i)) = (hull.basis.transpose() * facets[i]).transpose();

    Subspace row_space = orthonormalize_columns(Matrix(f.transpose()), tol);
    const int r = row_space.dim();
    // lineality = common null space of the facet normals
    Matrix lineality(k, k - r);
    if (r < k) {
        Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeFullV);
        lineality = svd.matrixV().rightCols(k - r);
        for (int j = 0; j < lineality.cols(); ++j) {
            gens.push_back(hull.basis * lineality.col(j));
            gens.push_back(-(hull.basis * lineality.col(j)));
        }
    }
    // pointed part lives in the facet-normal row space
    std::vector<Vector> projected;
    projected.reserve(facets.size());
    for (int i = 0; i < f.rows(); ++i)
        projected.push_back(row_space.basis.transpose() * Vector(f.row(i).transpose()));
    for (const auto& ray : pointed_extreme_rays(r, projected, tol.dd_snap))
        gens.push_back(hull.basis * (row_space.basis * ray));
    return gens;
}

// ---------------------------------------------------------------------------
// convex set construction
// ---------------------------------------------------------------------------

ConvexSet make_polyhedron(std::vector<Vector> points, std::vector<Vector> rays) {
    int n = -1;
    for (const auto& p : points) {
        if (n < 0) n = static_cast<int>(p.size());
        if (p.size() != n || !all_finite(p)) fail("BAD_DIMENSION", "bad polyhedron point");
    }
    for (const auto& r : rays) {
        if (n < 0) n = static_cast<int>(r.size());
        if (r.size() != n || !all_finite(r)) fail("BAD_DIMENSION", "bad polyhedron ray");
        if (r.norm() <= 0.0) fail("ZERO_RAY", "polyhedron rays must be nonzero");
    }
    return Polyhedron{std::move(points), std::move(rays)};
}

ConvexSet make_cone_set(ConeRep rep) { return PolyhedralConeSet{std::move(rep)}; }

ConvexSet make_soc_set(int dim) {
    if (dim < 2) fail("BAD_DIMENSION", "soc needs dimension >= 2");
    return SecondOrderConeSet{dim};
}

ConvexSet make_rsoc_set(int dim) {
    if (dim < 3) fail("BAD_DIMENSION", "rsoc needs dimension >= 3");
    return RotatedSecondOrderConeSet{dim};
}

ConvexSet make_translate(ConvexSet base, Vector offset) {
    if (offset.size() != ambient_dim(base)) fail("BAD_DIMENSION", "offset dimension mismatch");
    if (!all_finite(offset)) fail("NON_FINITE", "offset must be finite");
    if (const auto* inner = std::get_if<TranslateSet>(&base)) {
        Vector combined = inner->offset + offset;
        return TranslateSet{inner->base, std::move(combined)};
    }
    return TranslateSet{std::make_shared<const ConvexSet>(std::move(base)), std::move(offset)};
}

int ambient_dim(const ConvexSet& x) {
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polyhedron>) {
                if (!s.points.empty()) return static_cast<int>(s.points.front().size());
                if (!s.rays.empty()) return static_cast<int>(s.rays.front().size());
                return 0;
            } else if constexpr (std::is_same_v<T, PolyhedralConeSet>) {
                return s.rep.ambient_dim;
            } else if constexpr (std::is_same_v<T, SecondOrderConeSet>) {
                return s.dim;
            } else if constexpr (std::is_same_v<T, RotatedSecondOrderConeSet>) {
                return s.dim;
            } else {
                return static_cast<int>(s.offset.size());
            }
        },
        x);
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

ConeRep asymptotic_cone(const ConvexSet& x, const Tolerances& tol) {
    return std::visit(
        [&](const auto& s) -> ConeRep {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polyhedron>) {
                if (s.points.empty()) fail("EMPTY_SET", "polyhedron has no points");
                const int n = static_cast<int>(s.points.front().size());
                return make_polyhedral_cone(n, s.rays, tol);
            } else if constexpr (std::is_same_v<T, PolyhedralConeSet>) {
                return s.rep;
            } else if constexpr (std::is_same_v<T, SecondOrderConeSet>) {
                return make_soc_cone(s.dim);
            } else if constexpr (std::is_same_v<T, RotatedSecondOrderConeSet>) {
                return make_rsoc_cone(s.dim);
            } else {
                return asymptotic_cone(*s.base, tol);
            }
        },
        x);
}

namespace {

bool soc_contains(const Vector& v, double tol) {
    const int n = static_cast<int>(v.size());
    return v(n - 1) >= v.head(n - 1).norm() - tol;
}

bool rsoc_contains(const Vector& v, double tol) {
    const int n = static_cast<int>(v.size());
    const double x = v(0), z = v(n - 1);
    const double y2 = v.segment(1, n - 2).squaredNorm();
    return x >= -tol && z >= -tol && x * z >= y2 - tol;
}

bool polyhedral_cone_contains(const ConeRep& k, const Vector& v, double tol) {
    const double scale = std::max(1.0, v.norm());
    if (subspace_residual(v, k.hull) > tol * scale) return false;
    if (k.facets) {
        for (const auto& a : *k.facets)
            if (a.dot(v) < -tol * scale) return false;
        return true;
    }
    // beyond desk scale: fall back to conic-combination feasibility
    const int m = static_cast<int>(k.generators.size());
    Matrix g(k.ambient_dim, m);
    for (int j = 0; j < m; ++j) g.col(j) = k.generators[j];
    std::vector<std::optional<double>> lb(m, 0.0);
    return lp_min_infeasibility(g, v, lb) <= tol * scale;
}

} // namespace

bool contains(const ConeRep& k, const Vector& v, double tol) {
    if (v.size() != k.ambient_dim) fail("BAD_DIMENSION", "membership dimension mismatch");
    switch (k.analytic) {
        case ConeRep::Analytic::Soc: return soc_contains(v, tol);
        case ConeRep::Analytic::Rsoc: return rsoc_contains(v, tol);
        case ConeRep::Analytic::None: break;
    }
    if (k.is_zero_cone()) return v.norm() <= tol;
    return polyhedral_cone_contains(k, v, tol);
}

bool contains(const ConvexSet& x, const Vector& v, double tol) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polyhedron>) {
                if (s.points.empty()) return false;
                const int n = static_cast<int>(v.size());
                const int np = static_cast<int>(s.points.size());
                const int nr = static_cast<int>(s.rays.size());
                // v = sum a_i p_i + sum b_j r_j, sum a = 1, a,b >= 0
                Matrix eq = Matrix::Zero(n + 1, np + nr);
                Vector rhs(n + 1);
                for (int i = 0; i < np; ++i) {
                    eq.col(i).head(n) = s.points[i];
                    eq(n, i) = 1.0;
                }
                for (int j = 0; j < nr; ++j) eq.col(np + j).head(n) = s.rays[j];
                rhs.head(n) = v;
                rhs(n) = 1.0;
                std::vector<std::optional<double>> lb(np + nr, 0.0);
                return lp_min_infeasibility(eq, rhs, lb) <= tol * std::max(1.0, v.norm());
            } else if constexpr (std::is_same_v<T, PolyhedralConeSet>) {
                return contains(s.rep, v, tol);
            } else if constexpr (std::is_same_v<T, SecondOrderConeSet>) {
                return soc_contains(v, tol);
            } else if constexpr (std::is_same_v<T, RotatedSecondOrderConeSet>) {
                return rsoc_contains(v, tol);
            } else {
                return contains(*s.base, Vector(v - s.offset), tol);
            }
        },
        x);
}

bool ri_contains(const ConeRep& k, const Vector& v, double tol) {
    if (v.size() != k.ambient_dim) fail("BAD_DIMENSION", "membership dimension mismatch");
    const double nv = v.norm();
    if (nv <= 0.0) return false;
    switch (k.analytic) {
        case ConeRep::Analytic::Soc: {
            const int n = k.ambient_dim;
            return v(n - 1) > v.head(n - 1).norm() + tol * nv;
        }
        case ConeRep::Analytic::Rsoc: {
            const int n = k.ambient_dim;
            const double x = v(0), z = v(n - 1);
            const double y2 = v.segment(1, n - 2).squaredNorm();
            return x > tol * nv && z > tol * nv && x * z > y2 + tol * nv * nv;
        }
        case ConeRep::Analytic::None: break;
    }
    if (k.is_zero_cone()) return false;
    if (subspace_residual(v, k.hull) > tol * nv) return false;
    const std::vector<Vector>* facets = nullptr;
    ConeRep converted;
    if (k.facets) {
        facets = &*k.facets;
    } else {
        converted = dd_convert(k);
        facets = &*converted.facets;
    }
    for (const auto& a : *facets)
        if (a.dot(v) <= tol * nv) return false;
    return true;
}

RayDirection ri_point(const ConeRep& k) {
    switch (k.analytic) {
        case ConeRep::Analytic::Soc: {
            Vector axis = Vector::Zero(k.ambient_dim);
            axis(k.ambient_dim - 1) = 1.0;
            return RayDirection{axis};
        }
        case ConeRep::Analytic::Rsoc: {
            Vector axis = Vector::Zero(k.ambient_dim);
            axis(0) = 1.0 / std::sqrt(2.0);
            axis(k.ambient_dim - 1) = 1.0 / std::sqrt(2.0);
            return RayDirection{axis};
        }
        case ConeRep::Analytic::None: break;
    }
    if (k.is_zero_cone() || k.generators.empty()) fail("ZERO_CONE", "zero cone has no interior ray");
    Vector s = Vector::Zero(k.ambient_dim);
    for (const auto& g : k.generators) s += g / g.norm();
    if (s.norm() <= 1e-9) {
        // generator sum cancels only when the cone is a subspace; any
        // generator then lies in the relative interior
        return make_ray(k.generators.front());
    }
    return make_ray(s);
}

Matrix rsoc_from_soc_matrix(int dim) {
    if (dim < 3) fail("BAD_DIMENSION", "rsoc needs dimension >= 3");
    const double s = 1.0 / std::sqrt(2.0);
    Matrix phi = Matrix::Zero(dim, dim);
    phi(0, dim - 2) = s;       // x = (zeta + w_last) / sqrt2
    phi(0, dim - 1) = s;
    for (int i = 1; i <= dim - 2; ++i) phi(i, i - 1) = s; // y_i = w_i / sqrt2
    phi(dim - 1, dim - 2) = -s; // z = (zeta - w_last) / sqrt2
    phi(dim - 1, dim - 1) = s;
    return phi;
}

Matrix soc_from_rsoc_matrix(int dim) {
    if (dim < 3) fail("BAD_DIMENSION", "rsoc needs dimension >= 3");
    const double s = 1.0 / std::sqrt(2.0);
    Matrix inv = Matrix::Zero(dim, dim);
    for (int i = 0; i <= dim - 3; ++i) inv(i, i + 1) = std::sqrt(2.0); // w_i = sqrt2 * y_i
    inv(dim - 2, 0) = s;        // w_last = (x - z) / sqrt2
    inv(dim - 2, dim - 1) = -s;
    inv(dim - 1, 0) = s;        // zeta = (x + z) / sqrt2
    inv(dim - 1, dim - 1) = s;
    return inv;
}

} // namespace conelab
