// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/tracer.hpp"

#include "hsplat/error.hpp"
#include "hsplat/thread_pool.hpp"

#include <algorithm>
#include <cmath>

namespace hsplat {

Vec3 reflect_dir(Vec3 v, Vec3 n) {
    if (std::abs(norm(n) - 1.0) > 1e-6) throw InvalidNormal("reflection normal must be unit norm");
    return v - 2.0 * dot(v, n) * n;
}

Vec3 splat_direction(const GaussianPrimitive& g, const CameraView& view) {
    const Vec3 v = g.position - view.center;
    if (norm(v) < 1e-12) throw ZeroDirection("primitive centroid coincides with the camera center");
    return v;
}

std::optional<RayHit> intersect_splat(const GaussianPrimitive& g, std::int32_t index, Vec3 origin,
                                      Vec3 dir, Real t_min) {
    const Vec3 n = normal_of(g);
    const Real denom = dot(dir, n);
    if (std::abs(denom) < 1e-12) return std::nullopt; // parallel to the splat plane

    const Real t = dot(g.position - origin, n) / denom;
    if (t <= t_min) return std::nullopt;

    const Vec3 local = origin + t * dir - g.position;
    const Real u = dot(local, g.tangent_u) / g.scale_u;
    const Real v = dot(local, g.tangent_v) / g.scale_v;
    const Real gw = std::exp(-0.5 * (u * u + v * v));
    if (g.opacity * gw < config::min_alpha) return std::nullopt;

    return RayHit{index, t, u, v, gw};
}

namespace {

void sort_hits(std::vector<RayHit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const RayHit& a, const RayHit& b) {
        return a.t < b.t || (a.t == b.t && a.index < b.index);
    });
}

} // namespace

std::vector<RayHit> trace_ray(Vec3 origin, Vec3 dir, const BvhTree& bvh,
                              const std::vector<GaussianPrimitive>& reflective,
                              std::uint64_t* nodes_visited) {
    std::vector<std::int32_t> candidates;
    const std::uint64_t visited = bvh_candidates(bvh, origin, dir, config::trace_t_min, candidates);
    if (nodes_visited) *nodes_visited += visited;

    std::vector<RayHit> hits;
    for (const std::int32_t i : candidates) {
        if (auto hit = intersect_splat(reflective[static_cast<std::size_t>(i)], i, origin, dir))
            hits.push_back(*hit);
    }
    sort_hits(hits);
    return hits;
}

std::vector<RayHit> trace_ray_linear(Vec3 origin, Vec3 dir,
                                     const std::vector<GaussianPrimitive>& reflective) {
    std::vector<RayHit> hits;
    for (std::size_t i = 0; i < reflective.size(); ++i) {
        if (auto hit = intersect_splat(reflective[i], static_cast<std::int32_t>(i), origin, dir))
            hits.push_back(*hit);
    }
    sort_hits(hits);
    return hits;
}

namespace {

Real phi_scale(const GaussianPrimitive& hit_g, Vec3 ray_dir, PhiMode mode) {
    return mode == PhiMode::Directional ? 0.5 + 0.5 * dot(ray_dir, normal_of(hit_g)) : 1.0;
}

} // namespace

BakeRecord bake_reflection(const GaussianPrimitive& g, std::int32_t source_index,
                           const CameraView& view, const BvhTree& bvh,
                           const std::vector<GaussianPrimitive>& reflective, PhiMode phi,
                           TraceStats* stats) {
    const Vec3 v = splat_direction(g, view);
    const Vec3 dir = normalized(reflect_dir(v, normal_of(g)));
    const Vec3 origin = g.position + config::trace_origin_offset * dir;

    std::uint64_t visited = 0;
    const std::vector<RayHit> hits = trace_ray(origin, dir, bvh, reflective, &visited);
    if (stats) {
        stats->rays_traced += 1;
        stats->bvh_nodes_visited += visited;
    }

    BakeRecord record;
    record.value = {0, 0, 0};
    Real t = 1.0;
    for (const RayHit& hit : hits) {
        if (hit.index == source_index) continue; // no self-reflection
        const GaussianPrimitive& hg = reflective[static_cast<std::size_t>(hit.index)];
        const Real alpha = hg.opacity * hit.g;
        const Real scale = phi_scale(hg, dir, phi);
        record.value += hg.reflection_coeffs * (scale * alpha * t);
        record.hits.push_back({hit.index, alpha, t, scale});
        t *= 1.0 - alpha;
        if (t < config::transmittance_floor) break;
    }
    if (stats) stats->hits_blended += record.hits.size();
    return record;
}

BakeResult bake_all(const Scene& scene, const CameraView& view, const BvhTree& bvh,
                    const std::vector<std::optional<ProjectedGaussian>>& projected,
                    int threads, PhiMode phi) {
    const std::size_t n = scene.reflective.size();
    BakeResult result;
    result.payloads.assign(n * 3, 0.0);
    result.records.resize(n);

    std::vector<TraceStats> per_gaussian(n);
    parallel_for(static_cast<std::int64_t>(n), threads, [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        if (!projected[idx]) return;
        result.records[idx] =
            bake_reflection(scene.reflective[idx], static_cast<std::int32_t>(i), view, bvh,
                            scene.reflective, phi, &per_gaussian[idx]);
        result.payloads[idx * 3 + 0] = result.records[idx].value.x;
        result.payloads[idx * 3 + 1] = result.records[idx].value.y;
        result.payloads[idx * 3 + 2] = result.records[idx].value.z;
    });

    for (const TraceStats& s : per_gaussian) {
        result.stats.rays_traced += s.rays_traced;
        result.stats.bvh_nodes_visited += s.bvh_nodes_visited;
        result.stats.hits_blended += s.hits_blended;
    }
    return result;
}

} // namespace hsplat
