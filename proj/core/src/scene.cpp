// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/scene.hpp"

#include <algorithm>
#include <cmath>

namespace hsplat {

void validate(const GaussianPrimitive& g, int sh_degree, Real frame_tol) {
    if (!(g.scale_u > 0) || !(g.scale_v > 0)) throw InvalidScene("scales must be positive");
    if (!(g.opacity > 0) || g.opacity > 1) throw InvalidScene("opacity must be in (0,1]");
    if (std::abs(norm(g.tangent_u) - 1) > frame_tol || std::abs(norm(g.tangent_v) - 1) > frame_tol)
        throw InvalidScene("tangent vectors must be unit norm");
    if (std::abs(dot(g.tangent_u, g.tangent_v)) > frame_tol)
        throw InvalidScene("tangent vectors must be orthogonal");
    if (g.kind == GaussianKind::Base) {
        if (g.sh_coeffs.size() != static_cast<std::size_t>(sh_coeff_count(sh_degree)))
            throw InvalidScene("base primitive has wrong SH coefficient count");
        if (g.blend_weight < 0 || g.blend_weight > 1)
            throw InvalidScene("blend weight must be in [0,1]");
    } else {
        if (!g.sh_coeffs.empty()) throw InvalidScene("reflective primitive must not carry SH coefficients");
    }
}

void validate(const Scene& scene, Real frame_tol) {
    if (scene.sh_degree < 0 || scene.sh_degree > config::max_sh_degree)
        throw InvalidScene("unsupported SH degree");
    for (const auto& g : scene.base) {
        if (g.kind != GaussianKind::Base) throw InvalidScene("base list contains non-base primitive");
        validate(g, scene.sh_degree, frame_tol);
    }
    for (const auto& g : scene.reflective) {
        if (g.kind != GaussianKind::Reflective)
            throw InvalidScene("reflective list contains non-reflective primitive");
        validate(g, scene.sh_degree, frame_tol);
    }
}

Vec3 normal_of(const GaussianPrimitive& g) {
    const Vec3 n = cross(g.tangent_u, g.tangent_v);
    const Real len = norm(n);
    if (len < 1e-12) throw DegenerateFrame("tangent frame cross product is numerically zero");
    return n / len;
}

// Real SH basis constants, splatting convention.
namespace {
constexpr Real kC0 = 0.28209479177387814;
constexpr Real kC1 = 0.4886025119029199;
constexpr Real kC2[5] = {1.0925484305920792, -1.0925484305920792, 0.31539156525252005,
                         -1.0925484305920792, 0.5462742152960396};
constexpr Real kC3[7] = {-0.5900435899266435, 2.890611442640554,  -0.4570457994644658,
                         0.3731763325901154,  -0.4570457994644658, 1.445305721320277,
                         -0.5900435899266435};
} // namespace

void sh_basis(int degree, Vec3 d, Real* out) {
    out[0] = kC0;
    if (degree < 1) return;
    const Real x = d.x, y = d.y, z = d.z;
    out[1] = -kC1 * y;
    out[2] = kC1 * z;
    out[3] = -kC1 * x;
    if (degree < 2) return;
    const Real xx = x * x, yy = y * y, zz = z * z;
    const Real xy = x * y, yz = y * z, xz = x * z;
    out[4] = kC2[0] * xy;
    out[5] = kC2[1] * yz;
    out[6] = kC2[2] * (2 * zz - xx - yy);
    out[7] = kC2[3] * xz;
    out[8] = kC2[4] * (xx - yy);
    if (degree < 3) return;
    out[9] = kC3[0] * y * (3 * xx - yy);
    out[10] = kC3[1] * xy * z;
    out[11] = kC3[2] * y * (4 * zz - xx - yy);
    out[12] = kC3[3] * z * (2 * zz - 3 * xx - 3 * yy);
    out[13] = kC3[4] * x * (4 * zz - xx - yy);
    out[14] = kC3[5] * z * (xx - yy);
    out[15] = kC3[6] * x * (xx - 3 * yy);
}

void sh_basis_grad(int degree, Vec3 d, Vec3* out) {
    out[0] = {0, 0, 0};
    if (degree < 1) return;
    const Real x = d.x, y = d.y, z = d.z;
    out[1] = {0, -kC1, 0};
    out[2] = {0, 0, kC1};
    out[3] = {-kC1, 0, 0};
    if (degree < 2) return;
    const Real xx = x * x, yy = y * y, zz = z * z;
    out[4] = {kC2[0] * y, kC2[0] * x, 0};
    out[5] = {0, kC2[1] * z, kC2[1] * y};
    out[6] = {kC2[2] * (-2 * x), kC2[2] * (-2 * y), kC2[2] * 4 * z};
    out[7] = {kC2[3] * z, 0, kC2[3] * x};
    out[8] = {kC2[4] * 2 * x, kC2[4] * (-2 * y), 0};
    if (degree < 3) return;
    out[9] = {kC3[0] * 6 * x * y, kC3[0] * (3 * xx - 3 * yy), 0};
    out[10] = {kC3[1] * y * z, kC3[1] * x * z, kC3[1] * x * y};
    out[11] = {kC3[2] * (-2 * x * y), kC3[2] * (4 * zz - xx - 3 * yy), kC3[2] * 8 * y * z};
    out[12] = {kC3[3] * (-6 * x * z), kC3[3] * (-6 * y * z), kC3[3] * (6 * zz - 3 * xx - 3 * yy)};
    out[13] = {kC3[4] * (4 * zz - 3 * xx - yy), kC3[4] * (-2 * x * y), kC3[4] * 8 * x * z};
    out[14] = {kC3[5] * 2 * x * z, kC3[5] * (-2 * y * z), kC3[5] * (xx - yy)};
    out[15] = {kC3[6] * (3 * xx - 3 * yy), kC3[6] * (-6 * x * y), 0};
}

Vec3 eval_sh(const std::vector<Vec3>& coeffs, int degree, Vec3 dir) {
    if (std::abs(norm(dir) - 1) > 1e-6) throw InvalidDirection("eval_sh direction must be unit norm");
    const int n = sh_coeff_count(degree);
    if (coeffs.size() < static_cast<std::size_t>(n)) throw InvalidScene("too few SH coefficients");
    Real basis[16];
    sh_basis(degree, dir, basis);
    Vec3 c{0, 0, 0};
    for (int i = 0; i < n; ++i) c += coeffs[i] * basis[i];
    c += Vec3{0.5, 0.5, 0.5};
    return {std::max<Real>(c.x, 0), std::max<Real>(c.y, 0), std::max<Real>(c.z, 0)};
}

} // namespace hsplat
