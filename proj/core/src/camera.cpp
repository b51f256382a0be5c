// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/camera.hpp"

#include "hsplat/error.hpp"

#include <cmath>

namespace hsplat {

void validate(const CameraView& view, Real tol) {
    if (view.width <= 0 || view.height <= 0) throw InvalidScene("camera image size must be positive");
    if (!(view.focal_x > 0) || !(view.focal_y > 0)) throw InvalidScene("focal lengths must be positive");
    const Mat3 should_be_identity = view.rotation * transpose(view.rotation);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Real want = i == j ? 1.0 : 0.0;
            if (std::abs(should_be_identity(i, j) - want) > tol)
                throw InvalidScene("camera rotation is not orthonormal");
        }
}

CameraView make_lookat_camera(Vec3 eye, Vec3 target, Vec3 up, Real fov_y_deg, int width, int height) {
    const Vec3 forward = normalized(target - eye);
    Vec3 right = cross(forward, up);
    const Real rl = norm(right);
    if (rl < 1e-9) throw InvalidScene("look direction parallel to up vector");
    right = right / rl;
    const Vec3 down = cross(forward, right); // camera y points down in image space

    CameraView v;
    v.center = eye;
    v.rotation = Mat3::from_rows(right, down, forward);
    v.width = width;
    v.height = height;
    v.focal_y = (height * 0.5) / std::tan(fov_y_deg * M_PI / 360.0);
    v.focal_x = v.focal_y;
    v.principal_x = width * 0.5;
    v.principal_y = height * 0.5;
    return v;
}

} // namespace hsplat
