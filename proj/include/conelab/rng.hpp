#pragma once

#include "conelab/common.hpp"

#include <cmath>
#include <cstdint>

namespace conelab {

// Counter-based sample streams: stream_for(seed, index) yields an engine that
// depends only on (seed, index), so parallel loops produce identical results
// regardless of scheduling, and sample prefixes are stable under larger
// budgets. The generator is a hand-rolled xoshiro-style mix over splitmix64
// output; distributions below avoid <random> so sequences are identical
// across standard library implementations.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
        std::uint64_t b = splitmix64(s);
        state_[0] = a == 0 && b == 0 ? 1 : a;
        state_[1] = b;
        state_[2] = splitmix64(s);
        state_[3] = splitmix64(s);
        for (int i = 0; i < 8; ++i) next_u64();
    }

    std::uint64_t next_u64() {
        // xoshiro256**
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller; one spare kept between calls
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    Vector normal_vector(int dim) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = normal();
        return v;
    }

    Vector unit_vector(int dim) {
        Vector v = normal_vector(dim);
        double n = v.norm();
        while (n < 1e-300) {
            v = normal_vector(dim);
            n = v.norm();
        }
        return v / n;
    }

    // uniform in the closed euclidean ball B_R(center)
    Vector in_ball(const Vector& center, double radius) {
        const int dim = static_cast<int>(center.size());
        const Vector dir = unit_vector(dim);
        const double r = radius * std::pow(uniform(), 1.0 / dim);
        return center + r * dir;
    }

    Matrix normal_matrix(int rows, int cols) {
        Matrix a(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) a(i, j) = normal();
        return a;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline RngStream stream_for(std::uint64_t seed, std::uint64_t index) {
    return RngStream(seed, index);
}

} // namespace conelab
