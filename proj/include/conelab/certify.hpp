#pragma once

#include "conelab/common.hpp"
#include "conelab/convex_set.hpp"
#include "conelab/linalg.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace conelab {

// Knobs for the numeric searches behind the certificates. Defaults are the
// full-fidelity settings; surveys use survey_light_config() to keep large
// sample counts fast.
struct CertifierConfig {
    Tolerances tol;
    int radius_starts = 64;
    int radius_iters = 250;
    long radius_oracle_samples = 100000;
    long margin_samples = 20000;
    int margin_iters = 400;
    long width_samples = 20000;
    std::uint64_t oracle_seed = 0x9e3779b97f4a7c15ULL;
};

CertifierConfig survey_light_config();

// --- certificates -----------------------------------------------------------

// Condition A: the asymptotic cone meets the kernel only at the origin.
// radius is the validated perturbation bound (operator norm); +inf for
// bounded sets, whose unit cone slice is empty.
struct KernelTrivial {
    double radius = 0.0;
};

// Condition B: a ray through the relative interior of the asymptotic cone
// lies in the kernel, and T restricted to aff(C_inf X) has rank m.
struct RelIntKernel {
    RayDirection ray;
    double delta = 0.0; // certified angular half-width (sine) around the ray
    int rank_restriction = 0;
};

struct Uncertified {
    enum class Reason { RankDeficientOnY, KernelTouchesBoundary };
    Reason reason = Reason::RankDeficientOnY;
    // unit vector of C_inf X meet ker T outside the relative interior, when known
    std::optional<Vector> witness;
};

using Certificate = std::variant<KernelTrivial, RelIntKernel, Uncertified>;

enum class CertClass {
    KernelTrivial,
    RelIntKernel,
    UncertifiedRankDeficient,
    UncertifiedKernelBoundary,
};

CertClass certificate_class(const Certificate& c);
const char* cert_class_name(CertClass c);

// --- operations --------------------------------------------------------------

struct KernelConeResult {
    bool trivial = true;
    std::optional<Vector> witness; // unit element of K meet ker T when nontrivial
};
KernelConeResult kernel_cone_trivial(const LinearMap& t, const ConeRep& k,
                                     const CertifierConfig& cfg = {});

struct RiKernelResult {
    bool nonempty = false;
    std::optional<RayDirection> ray;
};
RiKernelResult ri_kernel_nonempty(const LinearMap& t, const ConeRep& k,
                                  const CertifierConfig& cfg = {});

int rank_restriction(const LinearMap& t, const Subspace& y, double eps_rel = 1e-9);

Certificate classify(const LinearMap& t, const ConvexSet& x,
                     const CertifierConfig& cfg = {});
CertClass classify_class(const LinearMap& t, const ConvexSet& x,
                         const CertifierConfig& cfg = {});
// Same, with the asymptotic cone precomputed (hot loops). with_payload=false
// skips the radius/width searches; class, witness and ray are still exact.
Certificate classify_cone(const LinearMap& t, const ConeRep& k,
                          const CertifierConfig& cfg = {}, bool with_payload = true);

// min{|Tv| : v in K, |v| = 1} estimated by multistart projected descent and
// validated against the sampling oracle below; the returned value is the
// smaller of the two minus a 1e-6 safety slack (floored at zero). +inf for
// the zero cone. Throws Error("NOT_APPLICABLE") when condition A fails.
double stability_radius_A(const LinearMap& t, const ConeRep& k,
                          const CertifierConfig& cfg = {});

// Derivative-free sampling oracle for the same quantity: global samples over
// the unit slice of K plus shrinking resamples around the incumbent.
double slice_min_bruteforce(const LinearMap& t, const ConeRep& k, long samples,
                            std::uint64_t seed);

// Largest certified delta in (0,1) such that every x in the hull whose angle
// to u has sine <= delta lies in K. Conservative for RSOC off-axis rays.
double cone_width_delta(const ConeRep& k, const RayDirection& u,
                        const CertifierConfig& cfg = {});

struct PreimageWitness {
    Vector x_min;
    double t = 0.0;
    Vector w;
    double delta = 0.0;
    double margin = 0.0;
};

PreimageWitness preimage_witness(const LinearMap& t, const ConvexSet& x,
                                 const Vector& y, double margin,
                                 const CertifierConfig& cfg = {});
// Hot-loop variant reusing an already computed condition-B certificate.
PreimageWitness preimage_from_certificate(const LinearMap& t, const ConeRep& k,
                                          const RayDirection& ray, double delta,
                                          const Vector& y, double margin,
                                          const Tolerances& tol = {});

// Repair an uncertified pair: tilt T so that a nearby interior ray joins the
// kernel. Requires classify(t, x) == Uncertified(KernelTouchesBoundary).
LinearMap repair(const LinearMap& t, const ConvexSet& x, double eps,
                 const CertifierConfig& cfg = {});

struct NeighborhoodReport {
    double fraction = 1.0;
    long samples = 0;
    bool zero_samples = false;
};

// Samples maps S with |S - T| < r (gaussian direction, ball-volume radial
// profile) and reports the fraction whose certificate class matches T's.
NeighborhoodReport neighborhood_check(const LinearMap& t, const ConvexSet& x,
                                      double r, long samples, std::uint64_t seed,
                                      const CertifierConfig& cfg = {});

} // namespace conelab
