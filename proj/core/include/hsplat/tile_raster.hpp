// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/image.hpp"
#include "hsplat/projection.hpp"

#include <cstdint>
#include <vector>

namespace hsplat {

struct RenderOptions {
    int tile_size = config::default_tile_size;
    int threads = 0;       // 0: HSPL_THREADS or hardware concurrency
    bool pipelined = false;
    int chunk_size = 32;   // instance chunk for the pipelined kernel
    bool naive_rect_tiles = false;
    PhiMode phi = PhiMode::Constant;
};

/// Screen-space working set for one branch: per-instance attributes in
/// structure-of-arrays form plus per-tile depth-sorted index lists. Blending
/// fetches an index from a tile list, retrieves the instance row, and
/// accumulates; the pipelined kernel overlaps those stages in chunks.
struct TileFrame {
    TileGrid grid;
    int width = 0;
    int height = 0;
    int channels = 0;

    // Instance rows, one per visible projected primitive, in source order.
    std::vector<Vec2> means;
    std::vector<Real> conic_a, conic_b, conic_c;
    std::vector<Real> opacities;
    std::vector<Real> power_cutoffs; // log(min_alpha / opacity)
    std::vector<Real> depths;
    std::vector<int> sources;
    std::vector<Real> payloads; // rows * channels

    std::vector<std::vector<std::uint32_t>> tile_rows;

    std::size_t row_count() const { return means.size(); }
    std::size_t instance_count() const {
        std::size_t n = 0;
        for (const auto& t : tile_rows) n += t.size();
        return n;
    }
};

/// One alpha evaluation shared verbatim by every path (serial, pipelined,
/// reference, backward). keep is false when the contribution is below the
/// visibility floor; alpha is clamped to alpha_clamp.
struct BlendEval {
    bool keep = false;
    bool clamped = false;
    Real alpha = 0; // after the clamp
    Real g = 0;     // density weight exp(power)
};

inline BlendEval blend_eval(Real dx, Real dy, Real ca, Real cb, Real cc, Real opacity,
                            Real power_cutoff) {
    BlendEval r;
    const Real power = -0.5 * (ca * dx * dx + cc * dy * dy) - cb * dx * dy;
    if (power > 0 || power < power_cutoff) return r;
    r.g = std::exp(power);
    r.alpha = opacity * r.g;
    if (r.alpha > config::alpha_clamp) {
        r.alpha = config::alpha_clamp;
        r.clamped = true;
    }
    r.keep = true;
    return r;
}

inline bool blend_step(Real dx, Real dy, Real ca, Real cb, Real cc, Real opacity,
                       Real power_cutoff, Real& alpha) {
    const BlendEval e = blend_eval(dx, dy, ca, cb, cc, opacity, power_cutoff);
    if (!e.keep) return false;
    alpha = e.alpha;
    return true;
}

/// Bins projected instances into per-tile lists sorted by (view depth,
/// source index). `payloads` holds `channels` values per source primitive;
/// culled entries are skipped.
TileFrame bin_and_sort(const std::vector<std::optional<ProjectedGaussian>>& projected,
                       const std::vector<Real>& payloads, int channels, const TileGrid& grid,
                       int width, int height, int threads);

/// Serial reference blend of one tile into the full-image buffers.
void blend_tile(const TileFrame& frame, int tile_id, Image& color, Image& transmittance);

/// Same contract and bit-identical output as blend_tile; internally fetches
/// tile indices, retrieves instance rows, and computes blending in
/// software-pipelined chunks with prefetch.
void blend_tile_pipelined(const TileFrame& frame, int tile_id, Image& color,
                          Image& transmittance, int chunk_size);

/// Blends every tile (parallel across tiles).
ChannelImage blend_image(const TileFrame& frame, const RenderOptions& opts);

/// Per-source view-dependent SH colors for the base branch, one RGB row per
/// primitive (zeros for culled entries).
std::vector<Real> sh_payloads(const Scene& scene, const CameraView& view,
                              const std::vector<std::optional<ProjectedGaussian>>& projected,
                              int threads);

/// Full single-branch render: project, bin, sort, blend. Reflective mode
/// bakes reflection payloads internally. Deterministic for any thread count.
ChannelImage render_channel(const Scene& scene, const CameraView& view, GaussianKind mode,
                            const RenderOptions& opts = {});

} // namespace hsplat
