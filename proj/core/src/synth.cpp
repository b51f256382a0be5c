// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/synth.hpp"

#include "hsplat/config.hpp"
#include "hsplat/rng.hpp"

#include <cmath>

namespace hsplat {

namespace {

constexpr Real kShC0 = 0.28209479177387814;

GaussianPrimitive random_base(Rng& rng, const Aabb3& bounds, int sh_degree) {
    GaussianPrimitive g;
    g.kind = GaussianKind::Base;
    const Vec3 ext = bounds.extent();
    g.position = {rng.uniform(bounds.lo.x, bounds.hi.x), rng.uniform(bounds.lo.y, bounds.hi.y),
                  rng.uniform(bounds.lo.z, bounds.hi.z)};
    const Mat3 frame = rng.rotation();
    g.tangent_u = frame.col(0);
    g.tangent_v = frame.col(1);
    const Real max_ext = std::max({ext.x, ext.y, ext.z, 1e-3});
    g.scale_u = max_ext * std::exp(rng.uniform(std::log(0.01), std::log(0.06)));
    g.scale_v = g.scale_u * std::exp(rng.uniform(-1.2, 1.2));
    g.opacity = rng.uniform(0.2, 0.95);
    g.blend_weight = rng.uniform(0.0, 1.0);
    g.sh_coeffs.assign(static_cast<std::size_t>(sh_coeff_count(sh_degree)), Vec3{0, 0, 0});
    const Vec3 color{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
    g.sh_coeffs[0] = (color - Vec3{0.5, 0.5, 0.5}) / kShC0;
    for (std::size_t i = 1; i < g.sh_coeffs.size(); ++i)
        g.sh_coeffs[i] = {rng.uniform(-0.15, 0.15), rng.uniform(-0.15, 0.15),
                          rng.uniform(-0.15, 0.15)};
    return g;
}

GaussianPrimitive random_reflective(Rng& rng, const Aabb3& bounds) {
    GaussianPrimitive g;
    g.kind = GaussianKind::Reflective;
    const Vec3 ext = bounds.extent();
    g.position = {rng.uniform(bounds.lo.x, bounds.hi.x), rng.uniform(bounds.lo.y, bounds.hi.y),
                  rng.uniform(bounds.lo.z, bounds.hi.z)};
    const Mat3 frame = rng.rotation();
    g.tangent_u = frame.col(0);
    g.tangent_v = frame.col(1);
    const Real max_ext = std::max({ext.x, ext.y, ext.z, 1e-3});
    g.scale_u = max_ext * std::exp(rng.uniform(std::log(0.01), std::log(0.06)));
    g.scale_v = g.scale_u * std::exp(rng.uniform(-1.2, 1.2));
    g.opacity = rng.uniform(0.2, 0.95);
    g.reflection_coeffs = {rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)};
    return g;
}

} // namespace

Scene gen_random(std::uint64_t seed, int base_count, int reflective_count, const Aabb3& bounds,
                 int sh_degree) {
    Rng rng(seed);
    Scene scene;
    scene.sh_degree = sh_degree;
    scene.base.reserve(static_cast<std::size_t>(base_count));
    scene.reflective.reserve(static_cast<std::size_t>(reflective_count));
    for (int i = 0; i < base_count; ++i) scene.base.push_back(random_base(rng, bounds, sh_degree));
    for (int i = 0; i < reflective_count; ++i)
        scene.reflective.push_back(random_reflective(rng, bounds));
    return scene;
}

namespace {

GaussianPrimitive make_surfel(Vec3 position, Vec3 tangent_u, Vec3 tangent_v, Real scale_u,
                              Real scale_v, Real opacity) {
    GaussianPrimitive g;
    g.position = position;
    g.tangent_u = tangent_u;
    g.tangent_v = tangent_v;
    g.scale_u = scale_u;
    g.scale_v = scale_v;
    g.opacity = opacity;
    return g;
}

GaussianPrimitive as_base(GaussianPrimitive g, Vec3 color, Real blend_weight, int sh_degree) {
    g.kind = GaussianKind::Base;
    g.blend_weight = blend_weight;
    g.sh_coeffs.assign(static_cast<std::size_t>(sh_coeff_count(sh_degree)), Vec3{0, 0, 0});
    g.sh_coeffs[0] = (color - Vec3{0.5, 0.5, 0.5}) / kShC0;
    return g;
}

GaussianPrimitive as_reflective(GaussianPrimitive g, Vec3 coeffs) {
    g.kind = GaussianKind::Reflective;
    g.reflection_coeffs = coeffs;
    return g;
}

} // namespace

MirrorScene gen_mirror_probe(std::uint64_t seed, Real mirror_extent, Real probe_height,
                             int mirror_grid, int clutter) {
    Rng rng(seed);
    MirrorScene out;
    Scene& scene = out.scene;
    scene.sh_degree = 1;

    const Real e = mirror_extent;
    const Real h = probe_height;
    out.info.probe_center = {0.35 * e, 0.0, h};
    out.info.virtual_center = {0.35 * e, 0.0, -h};
    out.info.mirror_extent = e;
    out.info.probe_color = {1.0, 0.25, 0.1};

    const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ey_neg{0, -1, 0};

    if (e > 0) {
        // Mirror plane: reflective grid with dark coincident base surfels at
        // full blend weight, so mirror pixels show baked reflection.
        const Real spacing = 2.0 * e / mirror_grid;
        for (int j = 0; j < mirror_grid; ++j)
            for (int i = 0; i < mirror_grid; ++i) {
                const Vec3 p{-e + (i + 0.5) * spacing, -e + (j + 0.5) * spacing, 0.0};
                auto surf = make_surfel(p, ex, ey, 0.75 * spacing, 0.75 * spacing, 0.92);
                scene.reflective.push_back(as_reflective(surf, {0.03, 0.03, 0.03}));
                scene.base.push_back(as_base(surf, {0.08, 0.09, 0.11}, 1.0, scene.sh_degree));
            }

        // Probe cluster: bright reflection coefficients, disks facing the
        // mirror so reflected rays hit them broadside.
        const int probe_n = 6;
        for (int i = 0; i < probe_n; ++i) {
            const Vec3 jitter{rng.uniform(-0.06, 0.06) * e, rng.uniform(-0.06, 0.06) * e,
                              rng.uniform(-0.03, 0.03) * e};
            const Vec3 p = out.info.probe_center + jitter;
            auto surf = make_surfel(p, ex, ey_neg, 0.09 * e, 0.09 * e, 0.9);
            scene.reflective.push_back(as_reflective(surf, out.info.probe_color));
            scene.base.push_back(as_base(surf, {0.9, 0.35, 0.2}, 0.0, scene.sh_degree));
        }
    }

    // Low-contribution clutter; pruning should remove these first.
    for (int i = 0; i < clutter; ++i) {
        const Vec3 p{rng.uniform(-e, e), rng.uniform(-e, e), rng.uniform(0.2 * h, 2.0 * h)};
        const Mat3 frame = rng.rotation();
        auto surf = make_surfel(p, frame.col(0), frame.col(1), rng.uniform(0.006, 0.02) * e,
                                rng.uniform(0.006, 0.02) * e, rng.uniform(0.02, 0.05));
        if (e > 0 && rng.uniform() < 0.4) {
            scene.reflective.push_back(
                as_reflective(surf, {rng.uniform(0.0, 0.2), rng.uniform(0.0, 0.2), rng.uniform(0.0, 0.2)}));
        } else {
            const Vec3 color{rng.uniform(0.2, 0.6), rng.uniform(0.2, 0.6), rng.uniform(0.2, 0.6)};
            scene.base.push_back(as_base(surf, color, rng.uniform(0.0, 0.3), scene.sh_degree));
        }
    }
    return out;
}

CameraView mirror_default_view(const MirrorSceneInfo& info, int width, int height) {
    const Real e = std::max<Real>(info.mirror_extent, 1e-3);
    const Vec3 eye{-1.2 * e, 0.05 * e, 1.0 * e};
    return make_lookat_camera(eye, {0.1 * e, 0.0, 0.0}, {0, 0, 1}, 55.0, width, height);
}

std::vector<CameraView> orbit_views(const Aabb3& bounds, int count, int width, int height,
                                    Real elevation_deg) {
    std::vector<CameraView> views;
    const Vec3 center = bounds.center();
    const Vec3 ext = bounds.extent();
    const Real radius = 1.6 * std::max({ext.x, ext.y, ext.z, 1e-3});
    const Real el = elevation_deg * M_PI / 180.0;
    for (int i = 0; i < count; ++i) {
        const Real az = 2.0 * M_PI * i / std::max(count, 1);
        const Vec3 eye = center + Vec3{radius * std::cos(el) * std::cos(az),
                                       radius * std::cos(el) * std::sin(az),
                                       radius * std::sin(el)};
        views.push_back(make_lookat_camera(eye, center, {0, 0, 1}, 50.0, width, height));
    }
    return views;
}

} // namespace hsplat
