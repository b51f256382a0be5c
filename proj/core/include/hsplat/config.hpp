// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/vec_math.hpp"

namespace hsplat {

/// Shared rasterization / tracing constants. The slow reference paths and the
/// fast paths read the same values from here, so equivalence tests compare
/// identical arithmetic instead of laundering differences through tolerances.
namespace config {

/// Contributions with alpha below this are dropped (8-bit visibility floor).
inline constexpr Real min_alpha = 1.0 / 255.0;

/// Per-step alpha ceiling in the splatting blend.
inline constexpr Real alpha_clamp = 0.99;

/// Blending stops once transmittance falls below this.
inline constexpr Real transmittance_floor = 1e-4;

/// Low-pass floor added to the diagonal of projected 2D covariances (px^2).
inline constexpr Real cov_lowpass = 0.3;

/// Camera-space near plane; primitives at or behind it are culled.
inline constexpr Real near_plane = 0.01;

/// Ray-splat hits closer than this along the ray are rejected.
inline constexpr Real trace_t_min = 1e-4;

/// Reflected rays start this far along the ray from the emitting centroid.
inline constexpr Real trace_origin_offset = 1e-4;

/// Thickness of the thin third axis, relative to max(scale_u, scale_v).
inline constexpr Real thin_axis_ratio = 1e-6;

inline constexpr int default_tile_size = 16;
inline constexpr int max_sh_degree = 3;

} // namespace config

/// Directional weighting applied to reflection coefficients when a traced ray
/// hits a reflective primitive.
enum class PhiMode {
    /// phi(r, d) = r. The default.
    Constant,
    /// phi(r, d) = r * (0.5 + 0.5 * dot(d, n_hit)): hemispherical falloff
    /// around the hit primitive's normal. Extension hook; not used by the
    /// reference configuration.
    Directional,
};

} // namespace hsplat
