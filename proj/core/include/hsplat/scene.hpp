// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/config.hpp"
#include "hsplat/error.hpp"
#include "hsplat/vec_math.hpp"

#include <cstdint>
#include <vector>

namespace hsplat {

enum class GaussianKind : std::uint8_t { Base = 0, Reflective = 1 };

/// Oriented elliptical surfel with Gaussian density. Base primitives carry
/// view-dependent SH color and a blend weight; reflective primitives carry an
/// RGB reflection coefficient instead.
struct GaussianPrimitive {
    Vec3 position;
    Vec3 tangent_u;
    Vec3 tangent_v;
    Real scale_u = 1;
    Real scale_v = 1;
    Real opacity = 1;
    GaussianKind kind = GaussianKind::Base;

    /// Base only: RGB coefficients per SH basis function, (degree+1)^2 entries.
    std::vector<Vec3> sh_coeffs;
    /// Base only: blend weight in [0,1].
    Real blend_weight = 0;
    /// Reflective only.
    Vec3 reflection_coeffs;

    bool operator==(const GaussianPrimitive&) const = default;
};

struct Scene {
    int sh_degree = 0;
    std::vector<GaussianPrimitive> base;
    std::vector<GaussianPrimitive> reflective;

    /// Bumped on every mutation that invalidates cached render state.
    std::uint64_t revision = 0;

    std::size_t size() const { return base.size() + reflective.size(); }
    bool operator==(const Scene& o) const {
        return sh_degree == o.sh_degree && base == o.base && reflective == o.reflective;
    }
};

inline int sh_coeff_count(int degree) { return (degree + 1) * (degree + 1); }

/// Validates a primitive's invariants. `frame_tol` bounds the allowed
/// orthonormality defect of the tangent frame; scenes built in double
/// precision use the default, scenes decoded from 32-bit storage pass a
/// looser bound.
void validate(const GaussianPrimitive& g, int sh_degree, Real frame_tol = 1e-9);
void validate(const Scene& scene, Real frame_tol = 1e-9);

/// Unit normal of the splat plane, tangent_u x tangent_v.
/// Throws DegenerateFrame if the frame is numerically collapsed.
Vec3 normal_of(const GaussianPrimitive& g);

/// Evaluates real spherical harmonics at a unit direction, one value per
/// basis function, dotted with per-channel coefficients, plus the
/// conventional 0.5 offset, clamped below at zero.
Vec3 eval_sh(const std::vector<Vec3>& coeffs, int degree, Vec3 dir);

/// Gradient support for eval_sh: d(color)/d(coeffs) is the basis itself;
/// this returns the basis values at `dir` (no offset, no clamp).
void sh_basis(int degree, Vec3 dir, Real* out);

/// Partial derivatives of each basis function w.r.t. the (unnormalized)
/// direction components, evaluated at unit `dir`.
void sh_basis_grad(int degree, Vec3 dir, Vec3* out);

} // namespace hsplat
