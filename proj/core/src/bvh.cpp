// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/bvh.hpp"

#include "hsplat/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hsplat {

Aabb3 splat_bounds(const GaussianPrimitive& g) {
    const Real cut2 = 2.0 * std::log(g.opacity / config::min_alpha);
    const Real radius = cut2 > 0 ? std::sqrt(cut2) * std::max(g.scale_u, g.scale_v) : 0.0;
    const Vec3 n = normal_of(g);
    Aabb3 box;
    for (int i = 0; i < 3; ++i) {
        // Disk extent along axis i; small pad keeps the slab test conservative.
        const Real e = radius * std::sqrt(std::max<Real>(0.0, 1.0 - n[i] * n[i])) + 1e-9;
        box.lo[i] = g.position[i] - e;
        box.hi[i] = g.position[i] + e;
    }
    return box;
}

namespace {

std::int32_t build_node(BvhTree& bvh, std::vector<Aabb3>& boxes, std::vector<Vec3>& centers,
                        std::int32_t first, std::int32_t count, int leaf_size) {
    Aabb3 box = Aabb3::empty();
    for (std::int32_t i = first; i < first + count; ++i)
        box.grow(boxes[static_cast<std::size_t>(bvh.prim_indices[static_cast<std::size_t>(i)])]);

    const auto node_id = static_cast<std::int32_t>(bvh.nodes.size());
    bvh.nodes.push_back({});
    bvh.nodes[static_cast<std::size_t>(node_id)].box = box;

    if (count <= leaf_size) {
        bvh.nodes[static_cast<std::size_t>(node_id)].first = first;
        bvh.nodes[static_cast<std::size_t>(node_id)].count = count;
        return node_id;
    }

    Aabb3 cbox = Aabb3::empty();
    for (std::int32_t i = first; i < first + count; ++i)
        cbox.grow(centers[static_cast<std::size_t>(bvh.prim_indices[static_cast<std::size_t>(i)])]);
    const Vec3 ext = cbox.extent();
    int axis = 0;
    if (ext.y > ext[axis]) axis = 1;
    if (ext.z > ext[axis]) axis = 2;

    const std::int32_t mid = first + count / 2;
    auto* begin = bvh.prim_indices.data() + first;
    std::nth_element(begin, bvh.prim_indices.data() + mid, begin + count,
                     [&](std::int32_t a, std::int32_t b) {
                         const Real ca = centers[static_cast<std::size_t>(a)][axis];
                         const Real cb = centers[static_cast<std::size_t>(b)][axis];
                         return ca < cb || (ca == cb && a < b);
                     });

    const std::int32_t left = build_node(bvh, boxes, centers, first, mid - first, leaf_size);
    const std::int32_t right = build_node(bvh, boxes, centers, mid, first + count - mid, leaf_size);
    bvh.nodes[static_cast<std::size_t>(node_id)].left = left;
    bvh.nodes[static_cast<std::size_t>(node_id)].right = right;
    return node_id;
}

} // namespace

BvhTree build_bvh(const std::vector<GaussianPrimitive>& reflective, int leaf_size) {
    BvhTree bvh;
    const auto n = static_cast<std::int32_t>(reflective.size());
    if (n == 0) return bvh;

    std::vector<Aabb3> boxes(reflective.size());
    std::vector<Vec3> centers(reflective.size());
    for (std::size_t i = 0; i < reflective.size(); ++i) {
        boxes[i] = splat_bounds(reflective[i]);
        centers[i] = boxes[i].center();
    }
    bvh.prim_indices.resize(reflective.size());
    std::iota(bvh.prim_indices.begin(), bvh.prim_indices.end(), 0);
    bvh.nodes.reserve(reflective.size() * 2);
    build_node(bvh, boxes, centers, 0, n, std::max(1, leaf_size));
    return bvh;
}

namespace {

inline bool slab_hit(const Aabb3& box, Vec3 origin, Vec3 inv_dir, Real t_min) {
    Real t0 = t_min, t1 = std::numeric_limits<Real>::infinity();
    for (int i = 0; i < 3; ++i) {
        if (std::isinf(inv_dir[i])) {
            // Ray parallel to this slab: inside test only.
            if (origin[i] < box.lo[i] || origin[i] > box.hi[i]) return false;
            continue;
        }
        Real a = (box.lo[i] - origin[i]) * inv_dir[i];
        Real b = (box.hi[i] - origin[i]) * inv_dir[i];
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
        if (t0 > t1) return false;
    }
    return true;
}

} // namespace

std::uint64_t bvh_candidates(const BvhTree& bvh, Vec3 origin, Vec3 dir, Real t_min,
                             std::vector<std::int32_t>& out) {
    if (bvh.empty()) return 0;
    const Vec3 inv_dir{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};

    std::uint64_t visited = 0;
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const auto& node = bvh.nodes[static_cast<std::size_t>(stack[--top])];
        ++visited;
        if (!slab_hit(node.box, origin, inv_dir, t_min)) continue;
        if (node.is_leaf()) {
            for (std::int32_t i = node.first; i < node.first + node.count; ++i)
                out.push_back(bvh.prim_indices[static_cast<std::size_t>(i)]);
        } else {
            stack[top++] = node.right;
            stack[top++] = node.left;
        }
    }
    return visited;
}

} // namespace hsplat
