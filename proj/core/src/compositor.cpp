// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/compositor.hpp"

#include "hsplat/thread_pool.hpp"

#include <algorithm>
#include <cmath>

namespace hsplat {

namespace {

Image extract_channels(const Image& src, int first, int count) {
    Image out(src.width, src.height, count);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x) {
            const Real* s = src.pixel(x, y);
            Real* d = out.pixel(x, y);
            for (int c = 0; c < count; ++c) d[c] = s[first + c];
        }
    return out;
}

// rgb + blend weight per visible base primitive.
std::vector<Real> base_payloads_rgbw(const Scene& scene, const CameraView& view,
                                     const std::vector<std::optional<ProjectedGaussian>>& projected,
                                     int threads) {
    std::vector<Real> payloads(scene.base.size() * 4, 0.0);
    parallel_for(static_cast<std::int64_t>(scene.base.size()), threads, [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        if (!projected[idx]) return;
        const auto& g = scene.base[idx];
        const Vec3 dir = normalized(g.position - view.center);
        const Vec3 c = eval_sh(g.sh_coeffs, scene.sh_degree, dir);
        payloads[idx * 4 + 0] = c.x;
        payloads[idx * 4 + 1] = c.y;
        payloads[idx * 4 + 2] = c.z;
        payloads[idx * 4 + 3] = g.blend_weight;
    });
    return payloads;
}

// World normal (flipped toward the camera) and camera depth per primitive.
void geometry_payload(const GaussianPrimitive& g, const CameraView& view, Real* out) {
    Vec3 n = normal_of(g);
    if (dot(n, g.position - view.center) > 0) n = -n;
    out[0] = n.x;
    out[1] = n.y;
    out[2] = n.z;
    out[3] = view.world_to_camera(g.position).z;
}

} // namespace

Image splat_beta(const Scene& scene, const CameraView& view, const RenderOptions& opts) {
    const TileGrid grid(view.width, view.height, opts.tile_size);
    const auto projected = project_all(scene.base, view, grid, opts.threads, opts.naive_rect_tiles);
    std::vector<Real> payloads(scene.base.size(), 0.0);
    for (std::size_t i = 0; i < scene.base.size(); ++i)
        if (projected[i]) payloads[i] = scene.base[i].blend_weight;

    const TileFrame frame =
        bin_and_sort(projected, payloads, 1, grid, view.width, view.height, opts.threads);
    ChannelImage blended = blend_image(frame, opts);
    for (Real& v : blended.color.data) v = std::clamp(v, 0.0, 1.0);
    return std::move(blended.color);
}

Image composite(const Image& base, const Image& ref, const Image& beta_map) {
    if (base.width != ref.width || base.height != ref.height || base.channels != ref.channels)
        throw ShapeError("base and reflective images differ in shape");
    if (beta_map.width != base.width || beta_map.height != base.height || beta_map.channels != 1)
        throw ShapeError("blend-weight map shape does not match the branch images");

    Image out(base.width, base.height, base.channels);
    for (int y = 0; y < base.height; ++y)
        for (int x = 0; x < base.width; ++x) {
            const Real b = beta_map.at(x, y, 0);
            const Real* pb = base.pixel(x, y);
            const Real* pr = ref.pixel(x, y);
            Real* po = out.pixel(x, y);
            for (int c = 0; c < base.channels; ++c) po[c] = (1.0 - b) * pb[c] + b * pr[c];
        }
    return out;
}

RenderOutput render_full(const Scene& scene, const CameraView& view, const RenderOptions& opts,
                         ForwardCache* cache) {
    const TileGrid grid(view.width, view.height, opts.tile_size);
    const int threads = opts.threads;

    auto base_projected = project_all(scene.base, view, grid, threads, opts.naive_rect_tiles);
    auto ref_projected = project_all(scene.reflective, view, grid, threads, opts.naive_rect_tiles);

    // Base branch carries color and blend weight through one blend.
    const auto rgbw = base_payloads_rgbw(scene, view, base_projected, threads);
    TileFrame base_frame =
        bin_and_sort(base_projected, rgbw, 4, grid, view.width, view.height, threads);
    ChannelImage base_rgbw = blend_image(base_frame, opts);

    const BvhTree bvh = build_bvh(scene.reflective);
    BakeResult bake = bake_all(scene, view, bvh, ref_projected, threads, opts.phi);
    TileFrame ref_frame =
        bin_and_sort(ref_projected, bake.payloads, 3, grid, view.width, view.height, threads);
    ChannelImage ref_rgb = blend_image(ref_frame, opts);

    // Geometry pass over the union; base rows precede reflective rows so
    // depth ties blend deterministically.
    std::vector<std::optional<ProjectedGaussian>> geo_projected;
    geo_projected.reserve(base_projected.size() + ref_projected.size());
    const int base_count = static_cast<int>(scene.base.size());
    for (const auto& pg : base_projected) geo_projected.push_back(pg);
    for (const auto& pg : ref_projected) {
        auto copy = pg;
        if (copy) copy->source_index += base_count;
        geo_projected.push_back(std::move(copy));
    }
    std::vector<Real> geo_payloads(scene.size() * 4, 0.0);
    parallel_for(static_cast<std::int64_t>(scene.size()), threads, [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        if (!geo_projected[idx]) return;
        const auto& g = idx < scene.base.size() ? scene.base[idx]
                                                : scene.reflective[idx - scene.base.size()];
        geometry_payload(g, view, &geo_payloads[idx * 4]);
    });
    TileFrame geo_frame =
        bin_and_sort(geo_projected, geo_payloads, 4, grid, view.width, view.height, threads);
    ChannelImage geo = blend_image(geo_frame, opts);

    RenderOutput out;
    out.base_color.color = extract_channels(base_rgbw.color, 0, 3);
    out.base_color.transmittance = base_rgbw.transmittance;
    out.beta_map = extract_channels(base_rgbw.color, 3, 1);
    for (Real& v : out.beta_map.data) v = std::clamp(v, 0.0, 1.0);
    out.ref_color = ref_rgb;
    out.final_color = composite(out.base_color.color, out.ref_color.color, out.beta_map);
    out.normal_map = extract_channels(geo.color, 0, 3);
    out.depth_map = extract_channels(geo.color, 3, 1);
    out.stats = bake.stats;

    if (cache) {
        cache->valid = true;
        cache->scene_revision = scene.revision;
        cache->view = view;
        cache->opts = opts;
        cache->grid = grid;
        cache->base_projected = std::move(base_projected);
        cache->ref_projected = std::move(ref_projected);
        cache->geo_projected = std::move(geo_projected);
        cache->base_frame = std::move(base_frame);
        cache->ref_frame = std::move(ref_frame);
        cache->geo_frame = std::move(geo_frame);
        cache->base_rgbw = std::move(base_rgbw);
        cache->ref_rgb = std::move(ref_rgb);
        cache->geo = std::move(geo);
        cache->beta_map = out.beta_map;
        cache->final_color = out.final_color;
        cache->bake = std::move(bake);
    }
    return out;
}

} // namespace hsplat
