// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/camera.hpp"
#include "hsplat/scene.hpp"

#include <cstdint>
#include <vector>

namespace hsplat {

/// Deterministic random scene: positions inside `bounds`, uniformly random
/// orientations, bounded scale anisotropy, opacities away from the clamp
/// region. Same seed, same scene, on any platform.
Scene gen_random(std::uint64_t seed, int base_count, int reflective_count, const Aabb3& bounds,
                 int sh_degree = 1);

/// Planar mirror at z = 0 plus a bright probe cluster above it, with enough
/// low-contribution clutter to make pruning experiments meaningful.
/// The mirror is a grid of coplanar reflective primitives with blend weight 1
/// on coincident base primitives, so the final image at mirror pixels is
/// dominated by baked reflection.
struct MirrorSceneInfo {
    Vec3 probe_center;
    Vec3 virtual_center; // probe mirrored through the plane z = 0
    Vec3 mirror_normal{0, 0, 1};
    Real mirror_extent = 0;
    Vec3 probe_color;
};

struct MirrorScene {
    Scene scene;
    MirrorSceneInfo info;
};

MirrorScene gen_mirror_probe(std::uint64_t seed, Real mirror_extent, Real probe_height,
                             int mirror_grid = 12, int clutter = 60);

/// Camera with a clear view of both the mirror and the probe's virtual image.
CameraView mirror_default_view(const MirrorSceneInfo& info, int width, int height);

/// Deterministic ring of cameras looking at the center of `bounds`.
std::vector<CameraView> orbit_views(const Aabb3& bounds, int count, int width, int height,
                                    Real elevation_deg = 30.0);

} // namespace hsplat
