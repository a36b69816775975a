#pragma once

#include "conelab/certify.hpp"
#include "conelab/convex_set.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace conelab {

struct SurveyConfig {
    int m = 1;
    long samples = 1000;
    std::uint64_t seed = 0;
    int recheck_stride = 100;   // every k-th certified sample gets re-checked
    long recheck_samples = 20;  // perturbations per re-check
    CertifierConfig cert = survey_light_config();
};

struct SurveySample {
    long index = 0;
    CertClass cls = CertClass::KernelTrivial;
    double payload = 0.0;            // radius (A) or delta (B), NaN otherwise
    bool rechecked = false;
    double recheck_fraction = 0.0;   // fraction re-certified in the same class
};

struct SurveyReport {
    std::string set_descriptor;
    int m = 0;
    int n = 0;
    long samples = 0;
    std::uint64_t seed = 0;
    std::array<long, 4> counts{};     // indexed by CertClass
    std::array<double, 4> fractions{};
    long radius_count = 0;            // finite condition-A radii
    double radius_min = 0.0;
    double radius_median = 0.0;
    double radius_max = 0.0;
    long recheck_count = 0;
    double persistence_rate = 1.0;    // mean re-certification fraction
    double wall_seconds = 0.0;
    std::vector<SurveySample> rows;
};

// Draws iid standard-normal maps, classifies each against X, re-checks a
// sub-sample of certified maps under perturbation, and aggregates.
SurveyReport survey(const ConvexSet& x, const SurveyConfig& cfg);

struct WitnessSequence {
    std::vector<long> ks;
    std::vector<Vector> points;  // w_k in X
    std::vector<Vector> images;  // T(w_k)
    Vector limit;
    bool not_in_image = false;
};

// The classical non-closed image: X = RSOC(3), T = projection to (y, z).
// The image is {(y, z) : z > 0} plus the origin, so (1, 0) is a boundary
// limit that is never attained.
WitnessSequence witness_nonclosed_demo(long k_count);

// The (T, X) pair the demo walks; exposed for cross-checks with classify.
struct DemoPair {
    LinearMap t;
    ConvexSet x;
};
DemoPair nonclosed_demo_pair();

} // namespace conelab
