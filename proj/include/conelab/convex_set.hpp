#pragma once

#include "conelab/common.hpp"
#include "conelab/linalg.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace conelab {

// Open ray from the origin, stored as its unit direction.
struct RayDirection {
    Vector u;
};
RayDirection make_ray(const Vector& v);

// Finitely generated or analytic closed convex cone.
//   generators : V-representation (empty for analytic cones and for {0})
//   facets     : unit normals inside the hull; cone = {v in hull : <a,v> >= 0}
//   hull       : aff of the cone, always a linear subspace
struct ConeRep {
    enum class Analytic { None, Soc, Rsoc };

    int ambient_dim = 0;
    std::vector<Vector> generators;
    std::optional<std::vector<Vector>> facets;
    Subspace hull;
    Analytic analytic = Analytic::None;

    int dim() const { return hull.dim(); }
    bool is_zero_cone() const { return dim() == 0; }
    bool is_analytic() const { return analytic != Analytic::None; }
};

ConeRep make_polyhedral_cone(int ambient_dim, const std::vector<Vector>& generators,
                             const Tolerances& tol = {});
ConeRep make_zero_cone(int ambient_dim);
ConeRep make_soc_cone(int dim);  // {(w, z) : z >= |w|}, z is the last coordinate
ConeRep make_rsoc_cone(int dim); // {(x, y, z) : x, z >= 0, xz >= |y|^2}

// --- supported closed convex sets ------------------------------------------

struct Polyhedron {
    std::vector<Vector> points; // conv(points) + cone(rays)
    std::vector<Vector> rays;
};
struct PolyhedralConeSet {
    ConeRep rep;
};
struct SecondOrderConeSet {
    int dim = 0;
};
struct RotatedSecondOrderConeSet {
    int dim = 0;
};
struct TranslateSet; // base + offset, nesting flattened to depth <= 1

using ConvexSet = std::variant<Polyhedron, PolyhedralConeSet, SecondOrderConeSet,
                               RotatedSecondOrderConeSet, TranslateSet>;

struct TranslateSet {
    std::shared_ptr<const ConvexSet> base;
    Vector offset;
};

ConvexSet make_polyhedron(std::vector<Vector> points, std::vector<Vector> rays);
ConvexSet make_cone_set(ConeRep rep);
ConvexSet make_soc_set(int dim);
ConvexSet make_rsoc_set(int dim);
ConvexSet make_translate(ConvexSet base, Vector offset);

int ambient_dim(const ConvexSet& x);

// --- operations --------------------------------------------------------------

// Recession directions of X. Facets are filled eagerly when the instance is
// within double-description desk scale.
ConeRep asymptotic_cone(const ConvexSet& x, const Tolerances& tol = {});

// V-rep -> V+H-rep via incremental double description inside the hull.
// Desk-scale only (ambient <= 8, generators <= 32).
ConeRep dd_convert(const ConeRep& rep, const Tolerances& tol = {});

// H-rep -> generators (extreme rays plus a lineality basis); used for the
// round-trip checks.
std::vector<Vector> cone_generators_from_facets(const Subspace& hull,
                                                const std::vector<Vector>& facets,
                                                const Tolerances& tol = {});

bool contains(const ConvexSet& x, const Vector& v, double tol);
bool contains(const ConeRep& k, const Vector& v, double tol);

// Relative interior membership. Requires v != 0; false for the zero cone.
bool ri_contains(const ConeRep& k, const Vector& v, double tol);

// A ray through the relative interior (normalized generator sum for
// polyhedral cones, the axis for analytic ones). Throws Error("ZERO_CONE").
RayDirection ri_point(const ConeRep& k);

// Linear change of coordinates between SOC(dim) and RSOC(dim):
// rsoc_from_soc * soc_vector lies in RSOC iff soc_vector lies in SOC.
Matrix rsoc_from_soc_matrix(int dim);
Matrix soc_from_rsoc_matrix(int dim);

} // namespace conelab
