// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/image.hpp"
#include "hsplat/tile_raster.hpp"
#include "hsplat/tracer.hpp"

namespace hsplat {

/// Full per-view render: both branch images, the blend-weight map, the
/// composited result, and splatted geometry.
struct RenderOutput {
    ChannelImage base_color; // rgb
    ChannelImage ref_color;  // rgb
    Image beta_map;          // 1 channel, clamped to [0,1]
    Image final_color;       // rgb, (1-beta) * base + beta * ref
    Image normal_map;        // 3 channels, alpha-blended world normals
    Image depth_map;         // 1 channel, alpha-blended camera depth
    TraceStats stats;
};

/// Forward state retained for the backward pass. Invalidated by any scene
/// mutation (revision mismatch).
struct ForwardCache {
    bool valid = false;
    std::uint64_t scene_revision = 0;
    CameraView view;
    RenderOptions opts;
    TileGrid grid;

    std::vector<std::optional<ProjectedGaussian>> base_projected;
    std::vector<std::optional<ProjectedGaussian>> ref_projected;
    // Union rows for the geometry pass; source = base index, or
    // base_count + reflective index.
    std::vector<std::optional<ProjectedGaussian>> geo_projected;

    TileFrame base_frame; // 4 channels: rgb + blend weight
    TileFrame ref_frame;  // 3 channels: baked reflection
    TileFrame geo_frame;  // 4 channels: normal + depth

    ChannelImage base_rgbw;
    ChannelImage ref_rgb;
    ChannelImage geo;
    Image beta_map;
    Image final_color;

    BakeResult bake;
};

/// Blend-weight map: base primitives splatted with their scalar blend weight
/// under the standard alpha blend, clamped to [0,1].
Image splat_beta(const Scene& scene, const CameraView& view, const RenderOptions& opts = {});

/// Pixel-wise affine blend (1-beta) * base + beta * ref.
/// Throws ShapeError on dimension mismatch.
Image composite(const Image& base, const Image& ref, const Image& beta_map);

/// Renders everything for one view. When `cache` is non-null the forward
/// state needed by the backward pass is retained there.
RenderOutput render_full(const Scene& scene, const CameraView& view, const RenderOptions& opts = {},
                         ForwardCache* cache = nullptr);

} // namespace hsplat
