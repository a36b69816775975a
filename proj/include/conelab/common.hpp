#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>

namespace conelab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Every recoverable failure carries a short machine-readable code; the CLI
// prints it as "ERROR:<code>:<message>" and exits 3.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

// One ledger for all numeric slack, so runs are reproducible from a single
// configuration record. All values are relative unless noted.
struct Tolerances {
    double rank = 1e-9;           // singular value cutoff, relative to sigma_max
    double residual = 1e-9;       // linear solve residual, relative to max(1, |rhs|)
    double orthogonality = 1e-12; // basis orthonormality slack
    double lp = 1e-9;             // simplex pivot / feasibility slack (absolute)
    double membership = 1e-8;     // set membership slack (absolute)
    double dd_snap = 1e-10;       // double description exact-zero snapping
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& a) { return a.allFinite(); }

} // namespace conelab
