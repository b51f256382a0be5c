// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/vec_math.hpp"

#include <cstdint>
#include <random>

namespace hsplat {

/// Deterministic random source. Only the raw mt19937_64 stream is used, with
/// explicit mappings to doubles, so sequences are identical across standard
/// library implementations (std::normal_distribution and friends are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    Real uniform() { return static_cast<Real>(engine_() >> 11) * 0x1.0p-53; }

    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Standard normal via Box-Muller.
    Real gaussian() {
        Real u1 = uniform();
        while (u1 <= 0) u1 = uniform();
        const Real u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec3 unit_vector() {
        const Real z = uniform(-1.0, 1.0);
        const Real phi = uniform(0.0, 2.0 * M_PI);
        const Real r = std::sqrt(std::max<Real>(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    /// Uniformly distributed rotation (random unit quaternion).
    Mat3 rotation() {
        const Real u1 = uniform(), u2 = uniform(), u3 = uniform();
        const Real a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        const Real qx = a * std::sin(2 * M_PI * u2);
        const Real qy = a * std::cos(2 * M_PI * u2);
        const Real qz = b * std::sin(2 * M_PI * u3);
        const Real qw = b * std::cos(2 * M_PI * u3);
        Mat3 r;
        r(0, 0) = 1 - 2 * (qy * qy + qz * qz);
        r(0, 1) = 2 * (qx * qy - qw * qz);
        r(0, 2) = 2 * (qx * qz + qw * qy);
        r(1, 0) = 2 * (qx * qy + qw * qz);
        r(1, 1) = 1 - 2 * (qx * qx + qz * qz);
        r(1, 2) = 2 * (qy * qz - qw * qx);
        r(2, 0) = 2 * (qx * qz - qw * qy);
        r(2, 1) = 2 * (qy * qz + qw * qx);
        r(2, 2) = 1 - 2 * (qx * qx + qy * qy);
        return r;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace hsplat
