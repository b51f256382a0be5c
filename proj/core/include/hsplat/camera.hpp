// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/vec_math.hpp"

#include <cstdint>

namespace hsplat {

/// Pinhole camera. `rotation` maps world directions to camera space
/// (x right, y down, z forward); pixel (ix, iy) covers
/// [ix, ix+1) x [iy, iy+1) with its sample point at the center.
struct CameraView {
    Vec3 center;
    Mat3 rotation;
    Real focal_x = 1;
    Real focal_y = 1;
    Real principal_x = 0;
    Real principal_y = 0;
    int width = 0;
    int height = 0;

    Vec3 world_to_camera(Vec3 p) const { return rotation * (p - center); }

    Vec2 camera_to_pixel(Vec3 pc) const {
        return {focal_x * pc.x / pc.z + principal_x, focal_y * pc.y / pc.z + principal_y};
    }

    /// Unit world-space direction through the center of pixel (ix, iy).
    Vec3 pixel_ray(int ix, int iy) const {
        const Vec3 dc{(ix + 0.5 - principal_x) / focal_x, (iy + 0.5 - principal_y) / focal_y, 1.0};
        return normalized(transpose(rotation) * dc);
    }
};

/// Validates rotation orthonormality (within tol) and positive image size.
void validate(const CameraView& view, Real tol = 1e-9);

/// Camera at `eye` looking at `target`, vertical field of view in degrees,
/// square pixels, principal point at the image center.
CameraView make_lookat_camera(Vec3 eye, Vec3 target, Vec3 up, Real fov_y_deg, int width, int height);

} // namespace hsplat
