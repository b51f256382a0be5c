// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/tile_raster.hpp"

#include "hsplat/thread_pool.hpp"
#include "hsplat/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace hsplat {

TileFrame bin_and_sort(const std::vector<std::optional<ProjectedGaussian>>& projected,
                       const std::vector<Real>& payloads, int channels, const TileGrid& grid,
                       int width, int height, int threads) {
    TileFrame frame;
    frame.grid = grid;
    frame.width = width;
    frame.height = height;
    frame.channels = channels;

    std::size_t rows = 0;
    for (const auto& pg : projected)
        if (pg) ++rows;

    frame.means.reserve(rows);
    frame.conic_a.reserve(rows);
    frame.conic_b.reserve(rows);
    frame.conic_c.reserve(rows);
    frame.opacities.reserve(rows);
    frame.power_cutoffs.reserve(rows);
    frame.depths.reserve(rows);
    frame.sources.reserve(rows);
    frame.payloads.reserve(rows * channels);
    frame.tile_rows.resize(static_cast<std::size_t>(grid.tile_count()));

    for (const auto& pg : projected) {
        if (!pg) continue;
        const auto row = static_cast<std::uint32_t>(frame.means.size());
        frame.means.push_back(pg->mean);
        frame.conic_a.push_back(pg->cov_inv(0, 0));
        frame.conic_b.push_back(pg->cov_inv(0, 1));
        frame.conic_c.push_back(pg->cov_inv(1, 1));
        frame.opacities.push_back(pg->opacity);
        frame.power_cutoffs.push_back(std::log(config::min_alpha / pg->opacity));
        frame.depths.push_back(pg->view_depth);
        frame.sources.push_back(pg->source_index);
        for (int c = 0; c < channels; ++c)
            frame.payloads.push_back(payloads[static_cast<std::size_t>(pg->source_index) * channels + c]);
        for (const int tile : pg->tile_list)
            frame.tile_rows[static_cast<std::size_t>(tile)].push_back(row);
    }

    // Rows were appended in ascending source order, so a stable sort by depth
    // yields (depth, source) order.
    parallel_for(grid.tile_count(), threads, [&](std::int64_t t) {
        auto& list = frame.tile_rows[static_cast<std::size_t>(t)];
        std::stable_sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
            return frame.depths[a] < frame.depths[b];
        });
    });
    return frame;
}

namespace {

struct TileBounds {
    int x0, y0, x1, y1; // pixel range clipped to the image
};

TileBounds tile_bounds(const TileFrame& frame, int tile_id) {
    const int col = frame.grid.tile_col(tile_id);
    const int row = frame.grid.tile_row(tile_id);
    const int ts = frame.grid.tile_size;
    return {col * ts, row * ts, std::min((col + 1) * ts, frame.width),
            std::min((row + 1) * ts, frame.height)};
}

} // namespace

void blend_tile(const TileFrame& frame, int tile_id, Image& color, Image& transmittance) {
    const TileBounds tb = tile_bounds(frame, tile_id);
    const auto& rows = frame.tile_rows[static_cast<std::size_t>(tile_id)];
    const int ch = frame.channels;

    for (int py = tb.y0; py < tb.y1; ++py) {
        for (int px = tb.x0; px < tb.x1; ++px) {
            const Real cx = px + 0.5, cy = py + 0.5;
            Real t = 1.0;
            Real* out = color.pixel(px, py);
            for (const std::uint32_t r : rows) {
                Real alpha;
                if (!blend_step(cx - frame.means[r].x, cy - frame.means[r].y, frame.conic_a[r],
                                frame.conic_b[r], frame.conic_c[r], frame.opacities[r],
                                frame.power_cutoffs[r], alpha))
                    continue;
                const Real w = t * alpha;
                const Real* p = frame.payloads.data() + static_cast<std::size_t>(r) * ch;
                for (int c = 0; c < ch; ++c) out[c] += w * p[c];
                t *= 1.0 - alpha;
                if (t < config::transmittance_floor) break;
            }
            transmittance.at(px, py, 0) = t;
        }
    }
}

void blend_tile_pipelined(const TileFrame& frame, int tile_id, Image& color,
                          Image& transmittance, int chunk_size) {
    const TileBounds tb = tile_bounds(frame, tile_id);
    const auto& rows = frame.tile_rows[static_cast<std::size_t>(tile_id)];
    const int ch = frame.channels;
    const int chunk = std::max(1, chunk_size);

    const int npx = std::max(0, (tb.x1 - tb.x0) * (tb.y1 - tb.y0));
    if (npx == 0) return;

    // Tile-local accumulators; pixels fall out of the active set once their
    // transmittance drops below the floor.
    std::vector<Real> t_acc(static_cast<std::size_t>(npx), 1.0);
    std::vector<Real> c_acc(static_cast<std::size_t>(npx) * ch, 0.0);
    std::vector<std::uint32_t> active(static_cast<std::size_t>(npx));
    for (int i = 0; i < npx; ++i) active[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    std::size_t active_count = active.size();

    // Gather scratch for one chunk of instance rows.
    std::vector<Real> g_mx(chunk), g_my(chunk), g_a(chunk), g_b(chunk), g_c(chunk), g_op(chunk),
        g_cut(chunk);
    std::vector<Real> g_payload(static_cast<std::size_t>(chunk) * ch);

    const std::size_t nrows = rows.size();
    const int tile_w = tb.x1 - tb.x0;

    auto prefetch_chunk = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const std::uint32_t r = rows[k];
            __builtin_prefetch(&frame.means[r]);
            __builtin_prefetch(&frame.conic_a[r]);
            __builtin_prefetch(&frame.payloads[static_cast<std::size_t>(r) * ch]);
        }
    };
    auto gather_chunk = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const std::uint32_t r = rows[k];
            const std::size_t s = k - begin;
            g_mx[s] = frame.means[r].x;
            g_my[s] = frame.means[r].y;
            g_a[s] = frame.conic_a[r];
            g_b[s] = frame.conic_b[r];
            g_c[s] = frame.conic_c[r];
            g_op[s] = frame.opacities[r];
            g_cut[s] = frame.power_cutoffs[r];
            std::memcpy(&g_payload[s * ch], &frame.payloads[static_cast<std::size_t>(r) * ch],
                        sizeof(Real) * static_cast<std::size_t>(ch));
        }
    };

    std::size_t begin = 0;
    std::size_t end = std::min(nrows, begin + static_cast<std::size_t>(chunk));
    prefetch_chunk(begin, end);
    gather_chunk(begin, end);

    while (begin < nrows && active_count > 0) {
        const std::size_t next_begin = end;
        const std::size_t next_end = std::min(nrows, next_begin + static_cast<std::size_t>(chunk));
        prefetch_chunk(next_begin, next_end); // fetch ahead while this chunk computes

        const std::size_t n = end - begin;
        std::size_t a = 0;
        while (a < active_count) {
            const std::uint32_t pix = active[a];
            const int px = tb.x0 + static_cast<int>(pix) % tile_w;
            const int py = tb.y0 + static_cast<int>(pix) / tile_w;
            const Real cx = px + 0.5, cy = py + 0.5;
            Real t = t_acc[pix];
            Real* acc = &c_acc[static_cast<std::size_t>(pix) * ch];
            bool done = false;
            for (std::size_t s = 0; s < n; ++s) {
                Real alpha;
                if (!blend_step(cx - g_mx[s], cy - g_my[s], g_a[s], g_b[s], g_c[s], g_op[s],
                                g_cut[s], alpha))
                    continue;
                const Real w = t * alpha;
                const Real* p = &g_payload[s * ch];
                for (int c = 0; c < ch; ++c) acc[c] += w * p[c];
                t *= 1.0 - alpha;
                if (t < config::transmittance_floor) {
                    done = true;
                    break;
                }
            }
            t_acc[pix] = t;
            if (done) {
                // Swap-remove keeps the active scan compact; per-pixel blend
                // order is unaffected.
                active[a] = active[--active_count];
            } else {
                ++a;
            }
        }

        begin = next_begin;
        end = next_end;
        if (begin < nrows && active_count > 0) gather_chunk(begin, end);
    }

    for (int i = 0; i < npx; ++i) {
        const int px = tb.x0 + i % tile_w;
        const int py = tb.y0 + i / tile_w;
        Real* out = color.pixel(px, py);
        for (int c = 0; c < ch; ++c) out[c] = c_acc[static_cast<std::size_t>(i) * ch + c];
        transmittance.at(px, py, 0) = t_acc[static_cast<std::size_t>(i)];
    }
}

ChannelImage blend_image(const TileFrame& frame, const RenderOptions& opts) {
    ChannelImage out;
    out.color = Image(frame.width, frame.height, frame.channels);
    out.transmittance = Image(frame.width, frame.height, 1);
    for (Real& v : out.transmittance.data) v = 1.0;

    parallel_for(frame.grid.tile_count(), opts.threads, [&](std::int64_t t) {
        if (opts.pipelined)
            blend_tile_pipelined(frame, static_cast<int>(t), out.color, out.transmittance,
                                 opts.chunk_size);
        else
            blend_tile(frame, static_cast<int>(t), out.color, out.transmittance);
    });
    return out;
}

std::vector<Real> sh_payloads(const Scene& scene, const CameraView& view,
                              const std::vector<std::optional<ProjectedGaussian>>& projected,
                              int threads) {
    std::vector<Real> payloads(scene.base.size() * 3, 0.0);
    parallel_for(static_cast<std::int64_t>(scene.base.size()), threads, [&](std::int64_t i) {
        const auto& pg = projected[static_cast<std::size_t>(i)];
        if (!pg) return;
        const auto& g = scene.base[static_cast<std::size_t>(i)];
        const Vec3 dir = normalized(g.position - view.center);
        const Vec3 c = eval_sh(g.sh_coeffs, scene.sh_degree, dir);
        payloads[static_cast<std::size_t>(i) * 3 + 0] = c.x;
        payloads[static_cast<std::size_t>(i) * 3 + 1] = c.y;
        payloads[static_cast<std::size_t>(i) * 3 + 2] = c.z;
    });
    return payloads;
}

ChannelImage render_channel(const Scene& scene, const CameraView& view, GaussianKind mode,
                            const RenderOptions& opts) {
    const TileGrid grid(view.width, view.height, opts.tile_size);
    const auto& primitives = mode == GaussianKind::Base ? scene.base : scene.reflective;
    const auto projected = project_all(primitives, view, grid, opts.threads, opts.naive_rect_tiles);

    std::vector<Real> payloads;
    if (mode == GaussianKind::Base) {
        payloads = sh_payloads(scene, view, projected, opts.threads);
    } else {
        const BvhTree bvh = build_bvh(scene.reflective);
        const BakeResult bake = bake_all(scene, view, bvh, projected, opts.threads, opts.phi);
        payloads = bake.payloads;
    }

    const TileFrame frame =
        bin_and_sort(projected, payloads, 3, grid, view.width, view.height, opts.threads);
    return blend_image(frame, opts);
}

} // namespace hsplat
