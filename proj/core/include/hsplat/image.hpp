// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/error.hpp"
#include "hsplat/vec_math.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hsplat {

/// Dense interleaved image with a runtime channel count.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<Real> data;

    Image() = default;
    Image(int w, int h, int c) : width(w), height(h), channels(c), data(static_cast<std::size_t>(w) * h * c, 0.0) {}

    Real* pixel(int x, int y) { return data.data() + (static_cast<std::size_t>(y) * width + x) * channels; }
    const Real* pixel(int x, int y) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * channels;
    }
    Real& at(int x, int y, int c) { return pixel(x, y)[c]; }
    Real at(int x, int y, int c) const { return pixel(x, y)[c]; }

    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

/// Splatted output of one branch: blended channels plus the per-pixel
/// transmittance left after blending.
struct ChannelImage {
    Image color;          // width x height x channels
    Image transmittance;  // width x height x 1, in [0,1]
};

inline Real max_abs_diff(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw ShapeError("image dimensions differ");
    Real m = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

inline Real mse(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw ShapeError("image dimensions differ");
    if (a.data.empty()) return 0;
    Real s = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const Real d = a.data[i] - b.data[i];
        s += d * d;
    }
    return s / static_cast<Real>(a.data.size());
}

/// Peak signal-to-noise ratio for unit-range images, in dB.
inline Real psnr(const Image& a, const Image& b) {
    const Real m = mse(a, b);
    if (m <= 0) return std::numeric_limits<Real>::infinity();
    return -10.0 * std::log10(m);
}

inline Real srgb_encode(Real linear) {
    const Real c = std::clamp(linear, 0.0, 1.0);
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

inline Real srgb_decode(Real encoded) {
    const Real c = std::clamp(encoded, 0.0, 1.0);
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

} // namespace hsplat
