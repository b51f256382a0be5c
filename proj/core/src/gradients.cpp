// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/gradients.hpp"

#include "hsplat/thread_pool.hpp"

#include <algorithm>
#include <cmath>

namespace hsplat {

namespace {

// Gradients accumulated at the screen-space inputs of the blend, per
// instance row of one tile frame.
struct RowGrads {
    std::vector<Vec2> mean;
    std::vector<Vec3> conic; // packed (q00, q01, q11)
    std::vector<Real> opacity;
    std::vector<Real> payload; // rows * channels
};

// Reverse pass through one frame's alpha blend. Parallel over tiles into
// per-tile buffers, merged in tile order so results do not depend on the
// schedule.
RowGrads blend_backward(const TileFrame& frame, const Image& adjoint, int threads) {
    const std::size_t rows = frame.row_count();
    const int ch = frame.channels;
    RowGrads out;
    out.mean.assign(rows, {0, 0});
    out.conic.assign(rows, {0, 0, 0});
    out.opacity.assign(rows, 0.0);
    out.payload.assign(rows * static_cast<std::size_t>(ch), 0.0);

    const int stride = 6 + ch; // mx, my, qa, qb, qc, op, payload...
    std::vector<std::vector<Real>> partials(static_cast<std::size_t>(frame.grid.tile_count()));

    parallel_for(frame.grid.tile_count(), threads, [&](std::int64_t tile) {
        const auto& list = frame.tile_rows[static_cast<std::size_t>(tile)];
        if (list.empty()) return;

        const int col = frame.grid.tile_col(static_cast<int>(tile));
        const int row = frame.grid.tile_row(static_cast<int>(tile));
        const int ts = frame.grid.tile_size;
        const int x0 = col * ts, y0 = row * ts;
        const int x1 = std::min((col + 1) * ts, frame.width);
        const int y1 = std::min((row + 1) * ts, frame.height);

        auto& buf = partials[static_cast<std::size_t>(tile)];
        buf.assign(list.size() * static_cast<std::size_t>(stride), 0.0);

        struct Contrib {
            std::uint32_t slot;
            Real alpha, g, t_before;
            bool clamped;
        };
        std::vector<Contrib> stack;
        stack.reserve(list.size());
        std::vector<Real> w_acc(static_cast<std::size_t>(ch));

        for (int py = y0; py < y1; ++py) {
            for (int px = x0; px < x1; ++px) {
                const Real* adj = adjoint.pixel(px, py);
                bool any = false;
                for (int c = 0; c < ch; ++c) any = any || adj[c] != 0.0;
                if (!any) continue;

                const Real cx = px + 0.5, cy = py + 0.5;
                stack.clear();
                Real t = 1.0;
                for (std::uint32_t s = 0; s < list.size(); ++s) {
                    const std::uint32_t r = list[s];
                    const BlendEval e =
                        blend_eval(cx - frame.means[r].x, cy - frame.means[r].y, frame.conic_a[r],
                                   frame.conic_b[r], frame.conic_c[r], frame.opacities[r],
                                   frame.power_cutoffs[r]);
                    if (!e.keep) continue;
                    stack.push_back({s, e.alpha, e.g, t, e.clamped});
                    t *= 1.0 - e.alpha;
                    if (t < config::transmittance_floor) break;
                }

                std::fill(w_acc.begin(), w_acc.end(), 0.0);
                for (std::size_t i = stack.size(); i-- > 0;) {
                    const Contrib& cb = stack[i];
                    const std::uint32_t r = list[cb.slot];
                    const Real* p = &frame.payloads[static_cast<std::size_t>(r) * ch];
                    Real* slot_buf = &buf[static_cast<std::size_t>(cb.slot) * stride];

                    // d/d payload and d/d alpha of sum_c adj_c * blended_c.
                    Real d_alpha = 0;
                    for (int c = 0; c < ch; ++c) {
                        slot_buf[6 + c] += adj[c] * cb.t_before * cb.alpha;
                        d_alpha += adj[c] * cb.t_before * (p[c] - w_acc[static_cast<std::size_t>(c)]);
                    }

                    if (!cb.clamped) {
                        const Real dx = cx - frame.means[r].x;
                        const Real dy = cy - frame.means[r].y;
                        const Real d_power = d_alpha * cb.alpha;
                        slot_buf[0] += d_power * (frame.conic_a[r] * dx + frame.conic_b[r] * dy);
                        slot_buf[1] += d_power * (frame.conic_b[r] * dx + frame.conic_c[r] * dy);
                        slot_buf[2] += d_power * (-0.5 * dx * dx);
                        slot_buf[3] += d_power * (-dx * dy);
                        slot_buf[4] += d_power * (-0.5 * dy * dy);
                        slot_buf[5] += d_alpha * cb.g;
                    }

                    for (int c = 0; c < ch; ++c) {
                        auto& w = w_acc[static_cast<std::size_t>(c)];
                        w = cb.alpha * p[c] + (1.0 - cb.alpha) * w;
                    }
                }
            }
        }
    });

    for (std::size_t tile = 0; tile < partials.size(); ++tile) {
        const auto& buf = partials[tile];
        if (buf.empty()) continue;
        const auto& list = frame.tile_rows[tile];
        for (std::size_t s = 0; s < list.size(); ++s) {
            const Real* b = &buf[s * static_cast<std::size_t>(stride)];
            const std::uint32_t r = list[s];
            out.mean[r].x += b[0];
            out.mean[r].y += b[1];
            out.conic[r].x += b[2];
            out.conic[r].y += b[3];
            out.conic[r].z += b[4];
            out.opacity[r] += b[5];
            for (int c = 0; c < ch; ++c)
                out.payload[static_cast<std::size_t>(r) * ch + static_cast<std::size_t>(c)] += b[6 + c];
        }
    }
    return out;
}

} // namespace

SpatialGrads projection_vjp(const GaussianPrimitive& g, const CameraView& view,
                            const ProjectedGaussian& pg, Vec2 d_mean, Vec3 d_conic_packed) {
    SpatialGrads out{};

    const Vec3 pc = view.world_to_camera(g.position);
    const Real z = pc.z;
    const Real fx = view.focal_x, fy = view.focal_y;
    const Real iz = 1.0 / z, iz2 = iz * iz, iz3 = iz2 * iz;

    const Thin3d aug = augment_thin3d(g);
    const Vec3 tu = aug.rotation.col(0), tv = aug.rotation.col(1), n = aug.rotation.col(2);
    const Vec3 s2{aug.scales.x * aug.scales.x, aug.scales.y * aug.scales.y,
                  aug.scales.z * aug.scales.z};

    const Mat3 wt = transpose(view.rotation);
    const Vec3 j0{fx * iz, 0.0, -fx * pc.x * iz2};
    const Vec3 j1{0.0, fy * iz, -fy * pc.y * iz2};
    const Vec3 m0 = wt * j0;
    const Vec3 m1 = wt * j1;
    const Vec3 v0{dot(m0, tu), dot(m0, tv), dot(m0, n)};
    const Vec3 v1{dot(m1, tu), dot(m1, tv), dot(m1, n)};

    // Packed conic adjoint -> symmetric matrix adjoints.
    Mat2 dq;
    dq(0, 0) = d_conic_packed.x;
    dq(0, 1) = dq(1, 0) = 0.5 * d_conic_packed.y;
    dq(1, 1) = d_conic_packed.z;
    const Mat2 q = pg.cov_inv;
    const Mat2 dcov = (q * dq * q) * -1.0;

    const Real dc00 = dcov(0, 0), dc01 = dcov(0, 1), dc11 = dcov(1, 1);

    // Scale path (the thin axis is treated as constant).
    Vec3 ds2;
    Vec3 dv0, dv1;
    for (int i = 0; i < 3; ++i) {
        ds2[i] = v0[i] * v0[i] * dc00 + 2.0 * v0[i] * v1[i] * dc01 + v1[i] * v1[i] * dc11;
        dv0[i] = 2.0 * s2[i] * (v0[i] * dc00 + v1[i] * dc01);
        dv1[i] = 2.0 * s2[i] * (v1[i] * dc11 + v0[i] * dc01);
    }
    out.scale.x = ds2.x * 2.0 * g.scale_u;
    out.scale.y = ds2.y * 2.0 * g.scale_v;

    // Frame path: adjoints of the three frame vectors, then the projection
    // onto the two rotation directions (axes tangent_u, tangent_v).
    const Vec3 dtu = dv0.x * m0 + dv1.x * m1;
    const Vec3 dtv = dv0.y * m0 + dv1.y * m1;
    const Vec3 dn = dv0.z * m0 + dv1.z * m1;
    out.rotation.x = dot(dtv, n) - dot(dn, tv);
    out.rotation.y = -dot(dtu, n) + dot(dn, tu);

    // Position path through the Jacobian, the camera point, and the mean.
    const Vec3 dm0 = dv0.x * tu + dv0.y * tv + dv0.z * n;
    const Vec3 dm1 = dv1.x * tu + dv1.y * tv + dv1.z * n;
    const Vec3 dj0 = view.rotation * dm0;
    const Vec3 dj1 = view.rotation * dm1;

    Vec3 dpc{0, 0, 0};
    dpc.x += dj0.z * (-fx * iz2);
    dpc.y += dj1.z * (-fy * iz2);
    dpc.z += dj0.x * (-fx * iz2) + dj0.z * (2.0 * fx * pc.x * iz3);
    dpc.z += dj1.y * (-fy * iz2) + dj1.z * (2.0 * fy * pc.y * iz3);

    dpc.x += d_mean.x * fx * iz;
    dpc.y += d_mean.y * fy * iz;
    dpc.z += -d_mean.x * fx * pc.x * iz2 - d_mean.y * fy * pc.y * iz2;

    out.position = wt * dpc;
    return out;
}

void sh_position_jacobian(const GaussianPrimitive& g, const CameraView& view, int degree,
                          Vec3 jac[3]) {
    const Vec3 rel = g.position - view.center;
    const Real len = norm(rel);
    const Vec3 dir = rel / len;

    Real basis[16];
    Vec3 basis_grad[16];
    sh_basis(degree, dir, basis);
    sh_basis_grad(degree, dir, basis_grad);
    const int n = sh_coeff_count(degree);

    for (int c = 0; c < 3; ++c) {
        Real pre = 0.5;
        Vec3 ddir{0, 0, 0};
        for (int i = 0; i < n; ++i) {
            pre += g.sh_coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] * basis[i];
            ddir += g.sh_coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] * basis_grad[i];
        }
        if (pre <= 0) {
            jac[c] = {0, 0, 0}; // clamped channel
            continue;
        }
        jac[c] = (ddir - dir * dot(dir, ddir)) / len;
    }
}

namespace {

void init_grads(ParamGradients& grads, const Scene& scene) {
    grads.base.assign(scene.base.size(), {});
    grads.reflective.assign(scene.reflective.size(), {});
    const auto n = static_cast<std::size_t>(sh_coeff_count(scene.sh_degree));
    for (auto& g : grads.base) g.sh.assign(n, Vec3{0, 0, 0});
}

void check_cache(const Scene& scene, const ForwardCache& cache) {
    if (!cache.valid) throw StaleCache("backward requires a forward cache from render_full");
    if (cache.scene_revision != scene.revision ||
        cache.base_projected.size() != scene.base.size() ||
        cache.ref_projected.size() != scene.reflective.size())
        throw StaleCache("forward cache does not match the scene revision");
}

// Applies screen-space row gradients of one frame to world parameters.
// source_of maps a row's source index to (primitive, projected, grads slot).
struct RowTarget {
    const GaussianPrimitive* g;
    const ProjectedGaussian* pg;
    GaussianGrads* grads;
};

void apply_row_grads(const TileFrame& frame, const RowGrads& rg, const CameraView& view,
                     const std::function<RowTarget(int)>& source_of, int threads) {
    parallel_for(static_cast<std::int64_t>(frame.row_count()), threads, [&](std::int64_t row) {
        const auto r = static_cast<std::size_t>(row);
        const RowTarget t = source_of(frame.sources[r]);
        const SpatialGrads sg = projection_vjp(*t.g, view, *t.pg, rg.mean[r], rg.conic[r]);
        t.grads->position += sg.position;
        t.grads->rotation.x += sg.rotation.x;
        t.grads->rotation.y += sg.rotation.y;
        t.grads->scale.x += sg.scale.x;
        t.grads->scale.y += sg.scale.y;
        t.grads->opacity += rg.opacity[r];
    });
}

} // namespace

ParamGradients backward(const Scene& scene, const ForwardCache& cache, const Image& final_adjoint,
                        const BackwardOptions& opts) {
    check_cache(scene, cache);
    if (final_adjoint.width != cache.view.width || final_adjoint.height != cache.view.height ||
        final_adjoint.channels != 3)
        throw ShapeError("final adjoint must be a 3-channel image matching the view");

    ParamGradients grads;
    init_grads(grads, scene);
    const int threads = cache.opts.threads;
    const CameraView& view = cache.view;

    // Composite backward: final = (1 - beta) * base + beta * ref.
    Image adj_base(view.width, view.height, 4);
    Image adj_ref(view.width, view.height, 3);
    for (int y = 0; y < view.height; ++y)
        for (int x = 0; x < view.width; ++x) {
            const Real* adj = final_adjoint.pixel(x, y);
            const Real beta = cache.beta_map.at(x, y, 0);
            const Real* base_px = cache.base_rgbw.color.pixel(x, y);
            const Real* ref_px = cache.ref_rgb.color.pixel(x, y);
            Real* ab = adj_base.pixel(x, y);
            Real* ar = adj_ref.pixel(x, y);
            Real d_beta = 0;
            for (int c = 0; c < 3; ++c) {
                ab[c] = (1.0 - beta) * adj[c];
                ar[c] = beta * adj[c];
                d_beta += adj[c] * (ref_px[c] - base_px[c]);
            }
            ab[3] = opts.freeze_beta ? 0.0 : d_beta;
        }

    // Base branch: blend -> payload (SH color + blend weight) -> projection.
    {
        const RowGrads rg = blend_backward(cache.base_frame, adj_base, threads);
        apply_row_grads(cache.base_frame, rg, view,
                        [&](int src) {
                            return RowTarget{&scene.base[static_cast<std::size_t>(src)],
                                             &*cache.base_projected[static_cast<std::size_t>(src)],
                                             &grads.base[static_cast<std::size_t>(src)]};
                        },
                        threads);

        parallel_for(static_cast<std::int64_t>(cache.base_frame.row_count()), threads,
                     [&](std::int64_t row) {
                         const auto r = static_cast<std::size_t>(row);
                         const int src = cache.base_frame.sources[r];
                         const auto& g = scene.base[static_cast<std::size_t>(src)];
                         auto& gg = grads.base[static_cast<std::size_t>(src)];
                         const Vec3 d_rgb{rg.payload[r * 4 + 0], rg.payload[r * 4 + 1],
                                          rg.payload[r * 4 + 2]};
                         gg.blend_weight += rg.payload[r * 4 + 3];

                         // SH backward: coefficients and the direction path.
                         const Vec3 rel = g.position - view.center;
                         const Real len = norm(rel);
                         const Vec3 dir = rel / len;
                         Real basis[16];
                         Vec3 basis_grad[16];
                         sh_basis(scene.sh_degree, dir, basis);
                         sh_basis_grad(scene.sh_degree, dir, basis_grad);
                         const int nc = sh_coeff_count(scene.sh_degree);
                         for (int c = 0; c < 3; ++c) {
                             Real pre = 0.5;
                             for (int i = 0; i < nc; ++i)
                                 pre += g.sh_coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] * basis[i];
                             if (pre <= 0) continue; // clamped: no gradient
                             Vec3 ddir{0, 0, 0};
                             for (int i = 0; i < nc; ++i) {
                                 gg.sh[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] +=
                                     d_rgb[static_cast<std::size_t>(c)] * basis[i];
                                 ddir += g.sh_coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
                                         basis_grad[i];
                             }
                             gg.position +=
                                 d_rgb[static_cast<std::size_t>(c)] * ((ddir - dir * dot(dir, ddir)) / len);
                         }
                     });
    }

    // Reflective branch: blend -> baked payload -> reflection coefficients
    // and hit opacities (trace geometry is constant by design).
    {
        const RowGrads rg = blend_backward(cache.ref_frame, adj_ref, threads);
        apply_row_grads(cache.ref_frame, rg, view,
                        [&](int src) {
                            return RowTarget{&scene.reflective[static_cast<std::size_t>(src)],
                                             &*cache.ref_projected[static_cast<std::size_t>(src)],
                                             &grads.reflective[static_cast<std::size_t>(src)]};
                        },
                        threads);

        // Cross-primitive writes: keep this loop serial and in source order.
        for (std::size_t r = 0; r < cache.ref_frame.row_count(); ++r) {
            const int src = cache.ref_frame.sources[r];
            const Vec3 dval{rg.payload[r * 3 + 0], rg.payload[r * 3 + 1], rg.payload[r * 3 + 2]};
            if (dval.x == 0 && dval.y == 0 && dval.z == 0) continue;
            const auto& record = cache.bake.records[static_cast<std::size_t>(src)];

            Vec3 w{0, 0, 0};
            for (std::size_t i = record.hits.size(); i-- > 0;) {
                const BakeHit& hit = record.hits[i];
                const auto& hg = scene.reflective[static_cast<std::size_t>(hit.index)];
                auto& hg_grads = grads.reflective[static_cast<std::size_t>(hit.index)];
                const Vec3 phi = hg.reflection_coeffs * hit.phi_scale;

                // phi is linear in the coefficients for both modes.
                hg_grads.reflection += dval * (hit.alpha * hit.weight * hit.phi_scale);

                const Real d_alpha = dot(dval, hit.weight * (phi - w));
                const Real density = hit.alpha / hg.opacity;
                hg_grads.opacity += d_alpha * density;

                w = hit.alpha * phi + (1.0 - hit.alpha) * w;
            }
        }
    }

    return grads;
}

void backward_geometry(const Scene& scene, const ForwardCache& cache, const Image& normal_adjoint,
                       const Image& depth_adjoint, ParamGradients& grads) {
    check_cache(scene, cache);
    if (grads.base.size() != scene.base.size() || grads.reflective.size() != scene.reflective.size())
        init_grads(grads, scene);
    const int threads = cache.opts.threads;
    const CameraView& view = cache.view;

    const bool has_normal = !normal_adjoint.data.empty();
    const bool has_depth = !depth_adjoint.data.empty();
    if (!has_normal && !has_depth) return;

    Image adj(view.width, view.height, 4);
    for (int y = 0; y < view.height; ++y)
        for (int x = 0; x < view.width; ++x) {
            Real* a = adj.pixel(x, y);
            if (has_normal)
                for (int c = 0; c < 3; ++c) a[c] = normal_adjoint.at(x, y, c);
            if (has_depth) a[3] = depth_adjoint.at(x, y, 0);
        }

    const RowGrads rg = blend_backward(cache.geo_frame, adj, threads);
    const int base_count = static_cast<int>(scene.base.size());

    auto source_of = [&](int src) {
        if (src < base_count)
            return RowTarget{&scene.base[static_cast<std::size_t>(src)],
                             &*cache.geo_projected[static_cast<std::size_t>(src)],
                             &grads.base[static_cast<std::size_t>(src)]};
        return RowTarget{&scene.reflective[static_cast<std::size_t>(src - base_count)],
                         &*cache.geo_projected[static_cast<std::size_t>(src)],
                         &grads.reflective[static_cast<std::size_t>(src - base_count)]};
    };
    apply_row_grads(cache.geo_frame, rg, view, source_of, threads);

    // Payload backward: oriented normal and camera depth.
    parallel_for(static_cast<std::int64_t>(cache.geo_frame.row_count()), threads,
                 [&](std::int64_t row) {
                     const auto r = static_cast<std::size_t>(row);
                     const RowTarget t = source_of(cache.geo_frame.sources[r]);
                     const Vec3 d_normal{rg.payload[r * 4 + 0], rg.payload[r * 4 + 1],
                                         rg.payload[r * 4 + 2]};
                     const Real d_depth = rg.payload[r * 4 + 3];

                     const Vec3 n = normal_of(*t.g);
                     const Real sign = dot(n, t.g->position - view.center) > 0 ? -1.0 : 1.0;
                     const Vec3 dn = sign * d_normal;
                     t.grads->rotation.x += -dot(dn, t.g->tangent_v);
                     t.grads->rotation.y += dot(dn, t.g->tangent_u);

                     t.grads->position += d_depth * view.rotation.row(2);
                 });
}

Real finite_diff_central(const std::function<Real(Real)>& f, Real x, Real h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

Scene perturb_scene(const Scene& scene, const ParamCoord& coord, Real delta) {
    Scene out = scene;
    auto& list = coord.branch == GaussianKind::Base ? out.base : out.reflective;
    auto& g = list[static_cast<std::size_t>(coord.index)];
    switch (coord.id) {
        case ParamId::Position:
            g.position[static_cast<std::size_t>(coord.component)] += delta;
            break;
        case ParamId::Rotation: {
            const Vec3 axis = coord.component == 0 ? g.tangent_u : g.tangent_v;
            const Mat3 rot = axis_angle_rotation(axis, delta);
            g.tangent_u = rot * g.tangent_u;
            g.tangent_v = rot * g.tangent_v;
            break;
        }
        case ParamId::Scale:
            (coord.component == 0 ? g.scale_u : g.scale_v) += delta;
            break;
        case ParamId::Opacity:
            g.opacity += delta;
            break;
        case ParamId::BlendWeight:
            g.blend_weight += delta;
            break;
        case ParamId::Sh:
            g.sh_coeffs[static_cast<std::size_t>(coord.component / 3)]
                       [static_cast<std::size_t>(coord.component % 3)] += delta;
            break;
        case ParamId::Reflection:
            g.reflection_coeffs[static_cast<std::size_t>(coord.component)] += delta;
            break;
    }
    out.revision = scene.revision + 1;
    return out;
}

Real param_value(const Scene& scene, const ParamCoord& coord) {
    const auto& list = coord.branch == GaussianKind::Base ? scene.base : scene.reflective;
    const auto& g = list[static_cast<std::size_t>(coord.index)];
    switch (coord.id) {
        case ParamId::Position: return g.position[static_cast<std::size_t>(coord.component)];
        case ParamId::Rotation: return 0.0;
        case ParamId::Scale: return coord.component == 0 ? g.scale_u : g.scale_v;
        case ParamId::Opacity: return g.opacity;
        case ParamId::BlendWeight: return g.blend_weight;
        case ParamId::Sh:
            return g.sh_coeffs[static_cast<std::size_t>(coord.component / 3)]
                              [static_cast<std::size_t>(coord.component % 3)];
        case ParamId::Reflection:
            return g.reflection_coeffs[static_cast<std::size_t>(coord.component)];
    }
    return 0.0;
}

Real finite_diff_oracle(const Scene& scene, const ParamCoord& coord, const SceneLoss& loss,
                        Real h_scale) {
    const Real h = h_scale * (1.0 + std::abs(param_value(scene, coord)));
    const Scene plus = perturb_scene(scene, coord, h);
    const Scene minus = perturb_scene(scene, coord, -h);
    return (loss(plus) - loss(minus)) / (2.0 * h);
}

std::vector<ParamCoord> enumerate_coords(const Scene& scene, bool spatial_only) {
    std::vector<ParamCoord> coords;
    const int n_sh = sh_coeff_count(scene.sh_degree);
    for (int b = 0; b < 2; ++b) {
        const GaussianKind kind = b == 0 ? GaussianKind::Base : GaussianKind::Reflective;
        const auto& list = b == 0 ? scene.base : scene.reflective;
        for (int i = 0; i < static_cast<int>(list.size()); ++i) {
            for (int c = 0; c < 3; ++c) coords.push_back({kind, i, ParamId::Position, c});
            for (int c = 0; c < 2; ++c) coords.push_back({kind, i, ParamId::Rotation, c});
            for (int c = 0; c < 2; ++c) coords.push_back({kind, i, ParamId::Scale, c});
            if (spatial_only) continue;
            coords.push_back({kind, i, ParamId::Opacity, 0});
            if (kind == GaussianKind::Base) {
                coords.push_back({kind, i, ParamId::BlendWeight, 0});
                for (int c = 0; c < 3 * n_sh; ++c) coords.push_back({kind, i, ParamId::Sh, c});
            } else {
                for (int c = 0; c < 3; ++c) coords.push_back({kind, i, ParamId::Reflection, c});
            }
        }
    }
    return coords;
}

Real grad_component(const ParamGradients& grads, const Scene& scene, const ParamCoord& coord) {
    (void)scene;
    const auto& list = coord.branch == GaussianKind::Base ? grads.base : grads.reflective;
    const auto& g = list[static_cast<std::size_t>(coord.index)];
    switch (coord.id) {
        case ParamId::Position: return g.position[static_cast<std::size_t>(coord.component)];
        case ParamId::Rotation: return coord.component == 0 ? g.rotation.x : g.rotation.y;
        case ParamId::Scale: return coord.component == 0 ? g.scale.x : g.scale.y;
        case ParamId::Opacity: return g.opacity;
        case ParamId::BlendWeight: return g.blend_weight;
        case ParamId::Sh:
            return g.sh[static_cast<std::size_t>(coord.component / 3)]
                       [static_cast<std::size_t>(coord.component % 3)];
        case ParamId::Reflection: return g.reflection[static_cast<std::size_t>(coord.component)];
    }
    return 0.0;
}

} // namespace hsplat
