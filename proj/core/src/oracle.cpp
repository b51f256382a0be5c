// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/oracle.hpp"

#include "hsplat/thread_pool.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hsplat {

namespace {

struct OracleRow {
    Vec2 mean;
    Real ca, cb, cc;
    Real opacity;
    Real power_cutoff;
    Real depth;
    int source;
};

// Visible rows in global (depth, source) order, payload per row.
std::vector<OracleRow> oracle_rows(const std::vector<std::optional<ProjectedGaussian>>& projected) {
    std::vector<OracleRow> rows;
    for (const auto& pg : projected) {
        if (!pg) continue;
        rows.push_back({pg->mean, pg->cov_inv(0, 0), pg->cov_inv(0, 1), pg->cov_inv(1, 1),
                        pg->opacity, std::log(config::min_alpha / pg->opacity), pg->view_depth,
                        pg->source_index});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const OracleRow& a, const OracleRow& b) { return a.depth < b.depth; });
    return rows;
}

} // namespace

ChannelImage oracle_render(const Scene& scene, const CameraView& view, GaussianKind mode,
                           const RenderOptions& opts) {
    const TileGrid grid(view.width, view.height, opts.tile_size);
    const auto& primitives = mode == GaussianKind::Base ? scene.base : scene.reflective;
    // Tile lists are irrelevant here; naive rects keep projection cheap.
    auto projected = project_all(primitives, view, grid, opts.threads, /*naive_rect_tiles=*/true);

    std::vector<Real> payloads;
    if (mode == GaussianKind::Base) {
        payloads = sh_payloads(scene, view, projected, opts.threads);
    } else {
        const BvhTree bvh = build_bvh(scene.reflective);
        payloads = bake_all(scene, view, bvh, projected, opts.threads, opts.phi).payloads;
    }
    const std::vector<OracleRow> rows = oracle_rows(projected);

    ChannelImage out;
    out.color = Image(view.width, view.height, 3);
    out.transmittance = Image(view.width, view.height, 1);

    parallel_for(view.height, opts.threads, [&](std::int64_t py) {
        for (int px = 0; px < view.width; ++px) {
            const Real cx = px + 0.5, cy = py + 0.5;
            Real t = 1.0;
            Real* acc = out.color.pixel(px, static_cast<int>(py));
            for (const OracleRow& row : rows) {
                Real alpha;
                if (!blend_step(cx - row.mean.x, cy - row.mean.y, row.ca, row.cb, row.cc,
                                row.opacity, row.power_cutoff, alpha))
                    continue;
                const Real w = t * alpha;
                const Real* p = &payloads[static_cast<std::size_t>(row.source) * 3];
                for (int c = 0; c < 3; ++c) acc[c] += w * p[c];
                t *= 1.0 - alpha;
                if (t < config::transmittance_floor) break;
            }
            out.transmittance.at(px, static_cast<int>(py), 0) = t;
        }
    });
    return out;
}

PixelwiseTraceResult oracle_pixelwise_trace(const Scene& scene, const CameraView& view,
                                            const RenderOptions& opts) {
    const TileGrid grid(view.width, view.height, opts.tile_size);

    // Per-pixel surface estimate from alpha-blended geometry over the union
    // of both primitive sets.
    std::vector<GaussianPrimitive> all;
    all.reserve(scene.size());
    all.insert(all.end(), scene.base.begin(), scene.base.end());
    all.insert(all.end(), scene.reflective.begin(), scene.reflective.end());
    auto projected = project_all(all, view, grid, opts.threads, /*naive_rect_tiles=*/true);

    std::vector<Real> geo_payloads(all.size() * 4, 0.0);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!projected[i]) continue;
        Vec3 n = normal_of(all[i]);
        if (dot(n, all[i].position - view.center) > 0) n = -n;
        geo_payloads[i * 4 + 0] = n.x;
        geo_payloads[i * 4 + 1] = n.y;
        geo_payloads[i * 4 + 2] = n.z;
        geo_payloads[i * 4 + 3] = view.world_to_camera(all[i].position).z;
    }
    const std::vector<OracleRow> rows = oracle_rows(projected);

    const BvhTree bvh = build_bvh(scene.reflective);

    PixelwiseTraceResult result;
    result.reflection = Image(view.width, view.height, 3);
    result.rays_traced = static_cast<std::uint64_t>(view.width) * static_cast<std::uint64_t>(view.height);

    parallel_for(view.height, opts.threads, [&](std::int64_t py) {
        for (int px = 0; px < view.width; ++px) {
            const Real cx = px + 0.5, cy = py + 0.5;
            Real t = 1.0;
            Real acc[4] = {0, 0, 0, 0};
            for (const OracleRow& row : rows) {
                Real alpha;
                if (!blend_step(cx - row.mean.x, cy - row.mean.y, row.ca, row.cb, row.cc,
                                row.opacity, row.power_cutoff, alpha))
                    continue;
                const Real w = t * alpha;
                const Real* p = &geo_payloads[static_cast<std::size_t>(row.source) * 4];
                for (int c = 0; c < 4; ++c) acc[c] += w * p[c];
                t *= 1.0 - alpha;
                if (t < config::transmittance_floor) break;
            }
            const Real coverage = 1.0 - t;
            if (coverage < config::min_alpha) continue; // nothing seen at this pixel

            Vec3 normal{acc[0], acc[1], acc[2]};
            const Real nlen = norm(normal);
            if (nlen < 1e-9) continue;
            normal = normal / nlen;
            const Real depth = acc[3] / coverage; // alpha-weighted expected depth

            // Surface point along the pixel ray at that camera depth.
            const Vec3 ray = view.pixel_ray(px, static_cast<int>(py));
            const Real ray_z = (view.rotation * ray).z;
            if (ray_z <= 1e-9) continue;
            const Vec3 surface = view.center + ray * (depth / ray_z);

            Vec3 reflected = reflect_dir(ray, normal);
            reflected = normalized(reflected);
            const Vec3 origin = surface + config::trace_origin_offset * reflected;
            const std::vector<RayHit> hits = trace_ray(origin, reflected, bvh, scene.reflective);

            Vec3 blended{0, 0, 0};
            Real tt = 1.0;
            for (const RayHit& hit : hits) {
                const auto& hg = scene.reflective[static_cast<std::size_t>(hit.index)];
                const Real alpha = hg.opacity * hit.g;
                Vec3 coeff = hg.reflection_coeffs;
                if (opts.phi == PhiMode::Directional)
                    coeff = coeff * (0.5 + 0.5 * dot(reflected, normal_of(hg)));
                blended += coeff * (alpha * tt);
                tt *= 1.0 - alpha;
                if (tt < config::transmittance_floor) break;
            }
            Real* out = result.reflection.pixel(px, static_cast<int>(py));
            out[0] = coverage * blended.x;
            out[1] = coverage * blended.y;
            out[2] = coverage * blended.z;
        }
    });
    return result;
}

} // namespace hsplat
