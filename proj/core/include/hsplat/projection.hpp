// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/camera.hpp"
#include "hsplat/config.hpp"
#include "hsplat/scene.hpp"

#include <optional>
#include <vector>

namespace hsplat {

/// Fixed-size screen tiling. Tile ids are row-major; edge tiles may extend
/// past the image, the grid always covers [0,width) x [0,height).
struct TileGrid {
    int tile_size = config::default_tile_size;
    int tiles_x = 0;
    int tiles_y = 0;

    TileGrid() = default;
    TileGrid(int width, int height, int size)
        : tile_size(size),
          tiles_x((width + size - 1) / size),
          tiles_y((height + size - 1) / size) {}

    int tile_count() const { return tiles_x * tiles_y; }
    int tile_id(int col, int row) const { return row * tiles_x + col; }
    int tile_col(int id) const { return id % tiles_x; }
    int tile_row(int id) const { return id / tiles_x; }
};

/// Screen-space ellipse { p : (p - center)^T q (p - center) <= threshold }.
struct CutoffEllipse {
    Vec2 center;
    Mat2 q;          // inverse covariance
    Real threshold;  // 2 ln(opacity / min_alpha)
    Mat2 cov;        // forward covariance, kept for extent queries
};

struct ProjectedGaussian {
    int source_index = -1;
    GaussianKind kind = GaussianKind::Base;
    Vec2 mean;
    Mat2 cov;       // low-pass floored, SPD
    Mat2 cov_inv;
    Real view_depth = 0;
    Real opacity = 0;
    Aabb2 aabb;     // tight box around the cutoff ellipse
    std::vector<int> tile_list;
};

/// Thin-3D augmentation of a surfel: rotation [t_u, t_v, t_u x t_v] and
/// scales (s_u, s_v, eps) with eps tied to the larger in-plane scale.
struct Thin3d {
    Mat3 rotation;
    Vec3 scales;
};
Thin3d augment_thin3d(const GaussianPrimitive& g);

/// Perspective projection of one primitive. Returns nullopt when culled:
/// view depth at or below the near plane, opacity at or below min_alpha, or
/// the cutoff ellipse missing the image rectangle entirely.
std::optional<ProjectedGaussian> project(const GaussianPrimitive& g, int source_index,
                                         const CameraView& view, const TileGrid& grid);

/// Cutoff ellipse holding every point whose density contribution reaches
/// min_alpha. Throws EmptyEllipse when opacity <= min_alpha.
CutoffEllipse cutoff_ellipse(const ProjectedGaussian& pg, Real min_alpha = config::min_alpha);

/// Exactly the tiles whose closed rectangles intersect the ellipse, sorted
/// ascending. Analytic per-row-strip extents; no sampling.
std::vector<int> tiles_for(const CutoffEllipse& ellipse, const TileGrid& grid);

/// Baseline comparator: every tile overlapping the ellipse's AABB. Superset
/// of tiles_for; kept for benchmarking the precise test against.
std::vector<int> tiles_for_naive_rect(const ProjectedGaussian& pg, const TileGrid& grid);

/// Projects one branch of a scene and fills tile lists. Parallel over
/// primitives; entry i of the result corresponds to source index i and is
/// nullopt when culled.
std::vector<std::optional<ProjectedGaussian>> project_all(
    const std::vector<GaussianPrimitive>& primitives, const CameraView& view,
    const TileGrid& grid, int threads, bool naive_rect_tiles = false);

} // namespace hsplat
