// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/projection.hpp"

#include "hsplat/error.hpp"
#include "hsplat/thread_pool.hpp"

#include <algorithm>
#include <cmath>

namespace hsplat {

Thin3d augment_thin3d(const GaussianPrimitive& g) {
    const Vec3 n = normal_of(g);
    Thin3d t;
    t.rotation = Mat3::from_cols(g.tangent_u, g.tangent_v, n);
    t.scales = {g.scale_u, g.scale_v, config::thin_axis_ratio * std::max(g.scale_u, g.scale_v)};
    return t;
}

namespace {

// Half extents of { p : p^T cov^{-1} p <= threshold } along the axes.
Vec2 ellipse_half_extents(const Mat2& cov, Real threshold) {
    return {std::sqrt(threshold * cov(0, 0)), std::sqrt(threshold * cov(1, 1))};
}

// Lowest tile index whose closed span [i*ts, (i+1)*ts] reaches coordinate v.
double low_tile_index(double v, double ts) {
    double q = std::floor(v / ts);
    if (q * ts == v) q -= 1; // exactly on a boundary: the left/upper tile touches too
    return q;
}

} // namespace

std::optional<ProjectedGaussian> project(const GaussianPrimitive& g, int source_index,
                                         const CameraView& view, const TileGrid& grid) {
    if (g.opacity <= config::min_alpha) return std::nullopt;

    const Vec3 pc = view.world_to_camera(g.position);
    if (pc.z <= config::near_plane) return std::nullopt;

    const Thin3d aug = augment_thin3d(g);
    const Vec3 s2{aug.scales.x * aug.scales.x, aug.scales.y * aug.scales.y,
                  aug.scales.z * aug.scales.z};

    // First-order perspective Jacobian at the primitive center.
    const Real iz = 1.0 / pc.z;
    const Real iz2 = iz * iz;
    const Vec3 j_row0{view.focal_x * iz, 0.0, -view.focal_x * pc.x * iz2};
    const Vec3 j_row1{0.0, view.focal_y * iz, -view.focal_y * pc.y * iz2};

    // Rows of M = J * W, then cov2 = M * Rg * diag(s^2) * (M * Rg)^T.
    const Mat3 wt = transpose(view.rotation);
    const Vec3 m0 = wt * j_row0; // = (J W) row 0 as a vector
    const Vec3 m1 = wt * j_row1;
    const Vec3 v0{dot(m0, aug.rotation.col(0)), dot(m0, aug.rotation.col(1)),
                  dot(m0, aug.rotation.col(2))};
    const Vec3 v1{dot(m1, aug.rotation.col(0)), dot(m1, aug.rotation.col(1)),
                  dot(m1, aug.rotation.col(2))};

    Mat2 cov;
    cov(0, 0) = dot(v0 * v0, s2) + config::cov_lowpass;
    cov(0, 1) = dot(v0 * v1, s2);
    cov(1, 0) = cov(0, 1);
    cov(1, 1) = dot(v1 * v1, s2) + config::cov_lowpass;

    ProjectedGaussian pg;
    pg.source_index = source_index;
    pg.kind = g.kind;
    pg.mean = view.camera_to_pixel(pc);
    pg.cov = cov;
    pg.cov_inv = inverse(cov);
    pg.view_depth = pc.z;
    pg.opacity = g.opacity;

    const Real threshold = 2.0 * std::log(g.opacity / config::min_alpha);
    const Vec2 ext = ellipse_half_extents(cov, threshold);
    pg.aabb = {pg.mean.x - ext.x, pg.mean.y - ext.y, pg.mean.x + ext.x, pg.mean.y + ext.y};

    const Aabb2 image{0.0, 0.0, static_cast<Real>(view.width), static_cast<Real>(view.height)};
    if (!pg.aabb.overlaps(image)) return std::nullopt;

    return pg;
}

CutoffEllipse cutoff_ellipse(const ProjectedGaussian& pg, Real min_alpha) {
    if (pg.opacity <= min_alpha)
        throw EmptyEllipse("opacity does not reach the visibility threshold");
    return {pg.mean, pg.cov_inv, 2.0 * std::log(pg.opacity / min_alpha), pg.cov};
}

std::vector<int> tiles_for(const CutoffEllipse& e, const TileGrid& grid) {
    std::vector<int> out;
    const double ts = grid.tile_size;
    const Vec2 ext = ellipse_half_extents(e.cov, e.threshold);
    const Real a = e.q(0, 0), b = e.q(0, 1), c = e.q(1, 1);
    const Real disc_coeff = b * b - a * c; // negative for SPD q

    // y offset (from center) at which the ellipse attains its extreme x.
    const Real y_at_x_extreme = e.cov(0, 1) * std::sqrt(e.threshold / e.cov(0, 0));

    // Largest centered x on the ellipse slice at centered y.
    auto x_hi = [&](Real y) {
        const Real disc = std::max<Real>(0.0, disc_coeff * y * y + a * e.threshold);
        return (-b * y + std::sqrt(disc)) / a;
    };
    // Max of the concave slice bound over a y interval.
    auto x_hi_max = [&](Real y0, Real y1) { return x_hi(std::clamp(y_at_x_extreme, y0, y1)); };

    double row_lo = low_tile_index(e.center.y - ext.y, ts);
    double row_hi = std::floor((e.center.y + ext.y) / ts);
    row_lo = std::max(row_lo, 0.0);
    row_hi = std::min(row_hi, static_cast<double>(grid.tiles_y - 1));

    for (double rd = row_lo; rd <= row_hi; ++rd) {
        const int row = static_cast<int>(rd);
        // Strip clipped to the ellipse's y range, in centered coordinates.
        const Real y0 = std::max(rd * ts, e.center.y - ext.y) - e.center.y;
        const Real y1 = std::min((rd + 1) * ts, e.center.y + ext.y) - e.center.y;
        if (y0 > y1) continue;

        const Real xhi = e.center.x + x_hi_max(y0, y1);
        const Real xlo = e.center.x - x_hi_max(-y1, -y0);

        double col_lo = low_tile_index(xlo, ts);
        double col_hi = std::floor(xhi / ts);
        col_lo = std::max(col_lo, 0.0);
        col_hi = std::min(col_hi, static_cast<double>(grid.tiles_x - 1));
        for (double cd = col_lo; cd <= col_hi; ++cd)
            out.push_back(grid.tile_id(static_cast<int>(cd), row));
    }
    return out;
}

std::vector<int> tiles_for_naive_rect(const ProjectedGaussian& pg, const TileGrid& grid) {
    std::vector<int> out;
    const double ts = grid.tile_size;
    const double row_lo = std::max(low_tile_index(pg.aabb.y_min, ts), 0.0);
    const double row_hi = std::min(std::floor(pg.aabb.y_max / ts), static_cast<double>(grid.tiles_y - 1));
    const double col_lo = std::max(low_tile_index(pg.aabb.x_min, ts), 0.0);
    const double col_hi = std::min(std::floor(pg.aabb.x_max / ts), static_cast<double>(grid.tiles_x - 1));
    for (double rd = row_lo; rd <= row_hi; ++rd)
        for (double cd = col_lo; cd <= col_hi; ++cd)
            out.push_back(grid.tile_id(static_cast<int>(cd), static_cast<int>(rd)));
    return out;
}

std::vector<std::optional<ProjectedGaussian>> project_all(
    const std::vector<GaussianPrimitive>& primitives, const CameraView& view,
    const TileGrid& grid, int threads, bool naive_rect_tiles) {
    std::vector<std::optional<ProjectedGaussian>> out(primitives.size());
    parallel_for(static_cast<std::int64_t>(primitives.size()), threads, [&](std::int64_t i) {
        auto pg = project(primitives[static_cast<std::size_t>(i)], static_cast<int>(i), view, grid);
        if (pg) {
            pg->tile_list = naive_rect_tiles ? tiles_for_naive_rect(*pg, grid)
                                             : tiles_for(cutoff_ellipse(*pg), grid);
        }
        out[static_cast<std::size_t>(i)] = std::move(pg);
    });
    return out;
}

} // namespace hsplat
