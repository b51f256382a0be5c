// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/compositor.hpp"

namespace hsplat {

/// Brute-force splatting: every pixel walks every projected primitive of the
/// branch in global (depth, source) order and blends with the exact same
/// step arithmetic as the tile path. No tiles, no binning. Slow on purpose.
ChannelImage oracle_render(const Scene& scene, const CameraView& view, GaussianKind mode,
                           const RenderOptions& opts = {});

struct PixelwiseTraceResult {
    Image reflection;          // 3 channels, coverage-weighted blended coefficients
    std::uint64_t rays_traced; // exactly width * height
};

/// Per-pixel reference tracer: reconstructs a surface point and normal from
/// alpha-blended geometry, reflects the pixel ray, and blends reflective
/// primitives along it. One ray per pixel regardless of scene content.
PixelwiseTraceResult oracle_pixelwise_trace(const Scene& scene, const CameraView& view,
                                            const RenderOptions& opts = {});

} // namespace hsplat
