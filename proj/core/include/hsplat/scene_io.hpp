// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hsplat/camera.hpp"
#include "hsplat/image.hpp"
#include "hsplat/scene.hpp"

#include <string>
#include <vector>

namespace hsplat {

/// Scene container, magic "HSPL" version 1. Little-endian 32-bit float
/// arrays per field in declared order; base section then reflective section.
/// Files with a ".json" suffix use the human-readable mirror of the same
/// schema. Saving quantizes through 32-bit floats, so save -> load -> save
/// is byte-identical.
void save_scene(const std::string& path, const Scene& scene);
Scene load_scene(const std::string& path);

/// Quantizes every field through its file representation. load(save(x))
/// equals canonical(x) exactly.
Scene canonical_scene(const Scene& scene);

void save_camera(const std::string& path, const CameraView& view);
CameraView load_camera(const std::string& path);

void save_views(const std::string& path, const std::vector<CameraView>& views);
std::vector<CameraView> load_views(const std::string& path);

/// Binary PPM (P6), 8 bits per channel. `encode_srgb` applies the sRGB
/// transfer function on write; reading returns values in [0,1] with the
/// matching optional decode.
void write_ppm(const std::string& path, const Image& rgb, bool encode_srgb = true);
Image read_ppm(const std::string& path, bool decode_srgb = true);

/// 8-bit quantization as written by write_ppm, without the file round trip.
Image quantize_unit8(const Image& img, bool encode_srgb = true);

} // namespace hsplat
