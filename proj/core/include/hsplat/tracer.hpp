// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/bvh.hpp"
#include "hsplat/camera.hpp"
#include "hsplat/config.hpp"
#include "hsplat/projection.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hsplat {

/// One accepted ray-splat intersection.
struct RayHit {
    std::int32_t index = -1; // reflective primitive index
    Real t = 0;              // ray parameter
    Real u = 0, v = 0;       // scaled in-plane coordinates
    Real g = 0;              // density weight exp(-(u^2+v^2)/2)
};

struct TraceStats {
    std::uint64_t rays_traced = 0;
    std::uint64_t bvh_nodes_visited = 0;
    std::uint64_t hits_blended = 0;
};

/// Mirror reflection of v about unit normal n: v - 2 (v.n) n.
/// Throws InvalidNormal unless |n| = 1 within 1e-6.
Vec3 reflect_dir(Vec3 v, Vec3 n);

/// Direction from the camera center to the primitive centroid (unnormalized).
/// Throws ZeroDirection when the centroid coincides with the camera center.
Vec3 splat_direction(const GaussianPrimitive& g, const CameraView& view);

/// Ray-plane intersection against one splat; nullopt when the ray is
/// parallel, behind t_min, or the density contribution is below min_alpha.
std::optional<RayHit> intersect_splat(const GaussianPrimitive& g, std::int32_t index, Vec3 origin,
                                      Vec3 dir, Real t_min = config::trace_t_min);

/// All accepted hits along a unit ray, sorted by (t, index). BVH traversal;
/// identical to testing every reflective primitive.
std::vector<RayHit> trace_ray(Vec3 origin, Vec3 dir, const BvhTree& bvh,
                              const std::vector<GaussianPrimitive>& reflective,
                              std::uint64_t* nodes_visited = nullptr);

/// Linear-scan equivalent of trace_ray, kept as the traversal oracle.
std::vector<RayHit> trace_ray_linear(Vec3 origin, Vec3 dir,
                                     const std::vector<GaussianPrimitive>& reflective);

/// Reflection blended along one hit list, front to back.
struct BakeHit {
    std::int32_t index = -1;
    Real alpha = 0;     // opacity * density weight, unclamped
    Real weight = 0;    // transmittance ahead of this hit
    Real phi_scale = 1; // phi(r, d) = r * phi_scale for the configured mode
};

struct BakeRecord {
    Vec3 value;                // resulting baked reflection
    std::vector<BakeHit> hits; // hits actually blended (early-out applied)
};

/// Bakes the reflection payload of one visible reflective primitive:
/// reflects its splatting direction about its normal, traces that single ray,
/// and alpha-blends the hit primitives' reflection coefficients. The
/// originating primitive never contributes to its own bake.
BakeRecord bake_reflection(const GaussianPrimitive& g, std::int32_t source_index,
                           const CameraView& view, const BvhTree& bvh,
                           const std::vector<GaussianPrimitive>& reflective,
                           PhiMode phi = PhiMode::Constant, TraceStats* stats = nullptr);

struct BakeResult {
    std::vector<Real> payloads;      // reflective_count * 3, zeros when culled
    std::vector<BakeRecord> records; // per source index; empty hits when culled
    TraceStats stats;
};

/// One traced ray per non-culled reflective primitive. Deterministic for any
/// thread count; stats are reduced in source order.
BakeResult bake_all(const Scene& scene, const CameraView& view, const BvhTree& bvh,
                    const std::vector<std::optional<ProjectedGaussian>>& projected,
                    int threads, PhiMode phi = PhiMode::Constant);

} // namespace hsplat
