// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/compositor.hpp"

#include <functional>
#include <vector>

namespace hsplat {

/// Per-primitive parameter gradients. The tangent frame is parameterized by
/// two infinitesimal rotations about tangent_u and tangent_v, which keeps
/// updates on the orthonormal manifold; in-plane spin is not a coordinate.
struct GaussianGrads {
    Vec3 position;
    Vec2 rotation; // about tangent_u, tangent_v
    Vec2 scale;    // d/d scale_u, d/d scale_v
    Real opacity = 0;
    Real blend_weight = 0;  // base only
    std::vector<Vec3> sh;   // base only, one entry per coefficient
    Vec3 reflection;        // reflective only
};

struct ParamGradients {
    std::vector<GaussianGrads> base;
    std::vector<GaussianGrads> reflective;
};

struct BackwardOptions {
    /// Treat the blend-weight map as a constant: no adjoint flows into it and
    /// blend_weight gradients stay zero.
    bool freeze_beta = false;
};

/// Reverse-mode gradients of sum(final_adjoint * final_color) with respect to
/// every primitive parameter. Requires the cache filled by render_full for
/// the same scene revision; throws StaleCache otherwise.
///
/// The reflected-ray geometry is treated as constant: baked-reflection
/// gradients flow into reflection coefficients and hit opacities but not into
/// positions, frames, or scales through the trace.
ParamGradients backward(const Scene& scene, const ForwardCache& cache, const Image& final_adjoint,
                        const BackwardOptions& opts = {});

/// Adds gradients of sum(normal_adjoint * normal_map) + sum(depth_adjoint *
/// depth_map) through the geometry pass. Pass empty images to skip either.
void backward_geometry(const Scene& scene, const ForwardCache& cache, const Image& normal_adjoint,
                       const Image& depth_adjoint, ParamGradients& grads);

/// Screen-space-to-parameter chain for one projected primitive: pulls
/// gradients at (2D mean, packed conic) back to position, frame rotations,
/// and scales. Shared between backward and the pruning sensitivity pass.
struct SpatialGrads {
    Vec3 position;
    Vec2 rotation;
    Vec2 scale;
};
SpatialGrads projection_vjp(const GaussianPrimitive& g, const CameraView& view,
                            const ProjectedGaussian& pg, Vec2 d_mean, Vec3 d_conic_packed);

/// d(SH payload channel c)/d(position), plus the clamp mask. Rows of `jac`
/// are per channel.
void sh_position_jacobian(const GaussianPrimitive& g, const CameraView& view, int degree,
                          Vec3 jac[3]);

// ---- finite-difference oracle ----------------------------------------------

enum class ParamId { Position, Rotation, Scale, Opacity, BlendWeight, Sh, Reflection };

struct ParamCoord {
    GaussianKind branch = GaussianKind::Base;
    int index = 0;     // primitive index within the branch
    ParamId id = ParamId::Position;
    int component = 0; // e.g. sh coordinate = 3 * coeff + channel
};

using SceneLoss = std::function<Real(const Scene&)>;

/// Central difference (f(x+h) - f(x-h)) / (2h).
Real finite_diff_central(const std::function<Real(Real)>& f, Real x, Real h);

/// Scene with one coordinate perturbed by delta; rotations are applied as
/// exact rotations of the frame.
Scene perturb_scene(const Scene& scene, const ParamCoord& coord, Real delta);

/// Central-difference gradient estimate with step h = h_scale * (1 + |theta|).
Real finite_diff_oracle(const Scene& scene, const ParamCoord& coord, const SceneLoss& loss,
                        Real h_scale = 1e-4);

/// Every differentiable coordinate of the scene. With spatial_only, restricts
/// to position / rotation / scale.
std::vector<ParamCoord> enumerate_coords(const Scene& scene, bool spatial_only = false);

/// Reads one coordinate's analytic gradient (rotation coordinates read the
/// rotation slots).
Real grad_component(const ParamGradients& grads, const Scene& scene, const ParamCoord& coord);

/// Reads a coordinate's current value (rotations read as 0).
Real param_value(const Scene& scene, const ParamCoord& coord);

} // namespace hsplat
