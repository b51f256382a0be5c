// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/scene.hpp"

#include <cstdint>
#include <vector>

namespace hsplat {

/// Binary BVH over the cutoff disks of reflective primitives. Traversal is
/// conservative: every primitive whose disk a ray can hit is visited, so hit
/// lists match a linear scan exactly.
struct BvhTree {
    struct Node {
        Aabb3 box;
        std::int32_t left = -1;   // internal: child node ids
        std::int32_t right = -1;
        std::int32_t first = 0;   // leaf: range into prim_indices
        std::int32_t count = 0;   // > 0 marks a leaf

        bool is_leaf() const { return count > 0; }
    };

    std::vector<Node> nodes;
    std::vector<std::int32_t> prim_indices;

    bool empty() const { return nodes.empty(); }
};

/// World-space box of a splat's visibility disk (radius scales with the
/// opacity cutoff; zero-contribution primitives get a point box).
Aabb3 splat_bounds(const GaussianPrimitive& g);

BvhTree build_bvh(const std::vector<GaussianPrimitive>& reflective, int leaf_size = 4);

/// Appends indices of every primitive whose box the ray may hit for t in
/// [t_min, inf). Returns the number of nodes visited.
std::uint64_t bvh_candidates(const BvhTree& bvh, Vec3 origin, Vec3 dir, Real t_min,
                             std::vector<std::int32_t>& out);

} // namespace hsplat
