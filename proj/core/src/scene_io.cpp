// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#include "hsplat/scene_io.hpp"

#include "hsplat/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace hsplat {

namespace {

using nlohmann::json;

// Tolerance for invariants of fields that passed through 32-bit storage.
constexpr Real kFileFrameTol = 4e-6;

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

float q32(Real v) { return static_cast<float>(v); }

struct LeWriter {
    std::ofstream out;

    explicit LeWriter(const std::string& path) : out(path, std::ios::binary) {
        if (!out) throw IoError("cannot open for writing: " + path);
    }
    void bytes(const void* p, std::size_t n) { out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
    void u32(std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
        bytes(b, 4);
    }
    void f32(float v) {
        std::uint32_t u;
        std::memcpy(&u, &v, 4);
        u32(u);
    }
    void vec3(Vec3 v) {
        f32(q32(v.x));
        f32(q32(v.y));
        f32(q32(v.z));
    }
};

struct LeReader {
    std::ifstream in;
    std::string path;

    explicit LeReader(const std::string& p) : in(p, std::ios::binary), path(p) {
        if (!in) throw IoError("cannot open for reading: " + p);
    }
    void bytes(void* p, std::size_t n) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (in.gcount() != static_cast<std::streamsize>(n)) throw IoError("truncated file: " + path);
    }
    std::uint32_t u32() {
        unsigned char b[4];
        bytes(b, 4);
        return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
               static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
    }
    float f32() {
        const std::uint32_t u = u32();
        float v;
        std::memcpy(&v, &u, 4);
        return v;
    }
    Vec3 vec3() {
        const Real x = f32(), y = f32(), z = f32();
        return {x, y, z};
    }
};

void save_scene_binary(const std::string& path, const Scene& scene) {
    LeWriter w(path);
    w.bytes("HSPL", 4);
    w.u32(1);
    w.u32(static_cast<std::uint32_t>(scene.base.size()));
    w.u32(static_cast<std::uint32_t>(scene.reflective.size()));
    w.u32(static_cast<std::uint32_t>(scene.sh_degree));

    const auto write_common_field = [&](const std::vector<GaussianPrimitive>& list, auto&& per) {
        for (const auto& g : list) per(g);
    };
    for (const auto* list : {&scene.base, &scene.reflective}) {
        write_common_field(*list, [&](const GaussianPrimitive& g) { w.vec3(g.position); });
        write_common_field(*list, [&](const GaussianPrimitive& g) { w.vec3(g.tangent_u); });
        write_common_field(*list, [&](const GaussianPrimitive& g) { w.vec3(g.tangent_v); });
        write_common_field(*list, [&](const GaussianPrimitive& g) { w.f32(q32(g.scale_u)); });
        write_common_field(*list, [&](const GaussianPrimitive& g) { w.f32(q32(g.scale_v)); });
        write_common_field(*list, [&](const GaussianPrimitive& g) { w.f32(q32(g.opacity)); });
        if (list == &scene.base) {
            write_common_field(*list, [&](const GaussianPrimitive& g) {
                for (const Vec3& c : g.sh_coeffs) w.vec3(c);
            });
            write_common_field(*list, [&](const GaussianPrimitive& g) { w.f32(q32(g.blend_weight)); });
        } else {
            write_common_field(*list, [&](const GaussianPrimitive& g) { w.vec3(g.reflection_coeffs); });
        }
    }
    if (!w.out) throw IoError("write failed: " + path);
}

Scene load_scene_binary(const std::string& path) {
    LeReader r(path);
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, "HSPL", 4) != 0) throw IoError("not a scene file (bad magic): " + path);
    const std::uint32_t version = r.u32();
    if (version != 1) throw IoError("unsupported scene file version " + std::to_string(version));
    const std::uint32_t mb = r.u32();
    const std::uint32_t mr = r.u32();
    const std::uint32_t degree = r.u32();
    if (degree > static_cast<std::uint32_t>(config::max_sh_degree))
        throw IoError("unsupported SH degree in scene file");

    Scene scene;
    scene.sh_degree = static_cast<int>(degree);
    scene.base.resize(mb);
    scene.reflective.resize(mr);
    const int n_coeffs = sh_coeff_count(scene.sh_degree);

    for (auto* list : {&scene.base, &scene.reflective}) {
        const bool is_base = list == &scene.base;
        for (auto& g : *list) g.kind = is_base ? GaussianKind::Base : GaussianKind::Reflective;
        for (auto& g : *list) g.position = r.vec3();
        for (auto& g : *list) g.tangent_u = r.vec3();
        for (auto& g : *list) g.tangent_v = r.vec3();
        for (auto& g : *list) g.scale_u = r.f32();
        for (auto& g : *list) g.scale_v = r.f32();
        for (auto& g : *list) g.opacity = r.f32();
        if (is_base) {
            for (auto& g : *list) {
                g.sh_coeffs.resize(static_cast<std::size_t>(n_coeffs));
                for (auto& c : g.sh_coeffs) c = r.vec3();
            }
            for (auto& g : *list) g.blend_weight = r.f32();
        } else {
            for (auto& g : *list) g.reflection_coeffs = r.vec3();
        }
    }
    validate(scene, kFileFrameTol);
    return scene;
}

json vec3_to_json(Vec3 v) { return json::array({q32(v.x), q32(v.y), q32(v.z)}); }

Vec3 vec3_from_json(const json& j) {
    const Real x = j.at(0).get<float>(), y = j.at(1).get<float>(), z = j.at(2).get<float>();
    return {x, y, z};
}

void save_scene_json(const std::string& path, const Scene& scene) {
    json root;
    root["magic"] = "HSPL";
    root["version"] = 1;
    root["sh_degree"] = scene.sh_degree;
    for (const auto* list : {&scene.base, &scene.reflective}) {
        json section;
        json position = json::array(), tangent_u = json::array(), tangent_v = json::array();
        json scale_u = json::array(), scale_v = json::array(), opacity = json::array();
        for (const auto& g : *list) {
            position.push_back(vec3_to_json(g.position));
            tangent_u.push_back(vec3_to_json(g.tangent_u));
            tangent_v.push_back(vec3_to_json(g.tangent_v));
            scale_u.push_back(q32(g.scale_u));
            scale_v.push_back(q32(g.scale_v));
            opacity.push_back(q32(g.opacity));
        }
        section["position"] = std::move(position);
        section["tangent_u"] = std::move(tangent_u);
        section["tangent_v"] = std::move(tangent_v);
        section["scale_u"] = std::move(scale_u);
        section["scale_v"] = std::move(scale_v);
        section["opacity"] = std::move(opacity);
        if (list == &scene.base) {
            json sh = json::array(), beta = json::array();
            for (const auto& g : *list) {
                json coeffs = json::array();
                for (const Vec3& c : g.sh_coeffs) coeffs.push_back(vec3_to_json(c));
                sh.push_back(std::move(coeffs));
                beta.push_back(q32(g.blend_weight));
            }
            section["sh_coeffs"] = std::move(sh);
            section["blend_weight"] = std::move(beta);
            root["base"] = std::move(section);
        } else {
            json rc = json::array();
            for (const auto& g : *list) rc.push_back(vec3_to_json(g.reflection_coeffs));
            section["reflection_coeffs"] = std::move(rc);
            root["reflective"] = std::move(section);
        }
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << root.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

Scene load_scene_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw IoError(std::string("scene json parse error: ") + e.what());
    }
    if (root.value("magic", "") != std::string("HSPL")) throw IoError("not a scene file (bad magic): " + path);
    if (root.value("version", 0) != 1) throw IoError("unsupported scene file version");

    Scene scene;
    scene.sh_degree = root.at("sh_degree").get<int>();
    if (scene.sh_degree < 0 || scene.sh_degree > config::max_sh_degree)
        throw IoError("unsupported SH degree in scene file");

    const auto read_section = [&](const json& section, bool is_base) {
        const auto& position = section.at("position");
        const std::size_t n = position.size();
        std::vector<GaussianPrimitive> list(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto& g = list[i];
            g.kind = is_base ? GaussianKind::Base : GaussianKind::Reflective;
            g.position = vec3_from_json(position.at(i));
            g.tangent_u = vec3_from_json(section.at("tangent_u").at(i));
            g.tangent_v = vec3_from_json(section.at("tangent_v").at(i));
            g.scale_u = section.at("scale_u").at(i).get<float>();
            g.scale_v = section.at("scale_v").at(i).get<float>();
            g.opacity = section.at("opacity").at(i).get<float>();
            if (is_base) {
                for (const auto& c : section.at("sh_coeffs").at(i)) g.sh_coeffs.push_back(vec3_from_json(c));
                g.blend_weight = section.at("blend_weight").at(i).get<float>();
            } else {
                g.reflection_coeffs = vec3_from_json(section.at("reflection_coeffs").at(i));
            }
        }
        return list;
    };
    scene.base = read_section(root.at("base"), true);
    scene.reflective = read_section(root.at("reflective"), false);
    validate(scene, kFileFrameTol);
    return scene;
}

} // namespace

void save_scene(const std::string& path, const Scene& scene) {
    validate(scene, kFileFrameTol);
    if (has_suffix(path, ".json"))
        save_scene_json(path, scene);
    else
        save_scene_binary(path, scene);
}

Scene load_scene(const std::string& path) {
    return has_suffix(path, ".json") ? load_scene_json(path) : load_scene_binary(path);
}

Scene canonical_scene(const Scene& scene) {
    Scene out = scene;
    const auto q = [](Real& v) { v = static_cast<Real>(static_cast<float>(v)); };
    const auto qv = [&](Vec3& v) {
        q(v.x);
        q(v.y);
        q(v.z);
    };
    for (auto* list : {&out.base, &out.reflective}) {
        for (auto& g : *list) {
            qv(g.position);
            qv(g.tangent_u);
            qv(g.tangent_v);
            q(g.scale_u);
            q(g.scale_v);
            q(g.opacity);
            q(g.blend_weight);
            qv(g.reflection_coeffs);
            for (auto& c : g.sh_coeffs) qv(c);
        }
    }
    out.revision = scene.revision;
    return out;
}

namespace {

CameraView camera_from_json(const json& j) {
    CameraView v;
    v.center = {j.at("center").at(0).get<Real>(), j.at("center").at(1).get<Real>(),
                j.at("center").at(2).get<Real>()};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) v.rotation(i, k) = j.at("rotation").at(i * 3 + k).get<Real>();
    v.focal_x = j.at("focal_x").get<Real>();
    v.focal_y = j.at("focal_y").get<Real>();
    v.principal_x = j.at("principal_x").get<Real>();
    v.principal_y = j.at("principal_y").get<Real>();
    v.width = j.at("width").get<int>();
    v.height = j.at("height").get<int>();
    validate(v, 1e-6);
    return v;
}

json camera_to_json(const CameraView& view) {
    json j;
    j["center"] = {view.center.x, view.center.y, view.center.z};
    j["rotation"] = json::array();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) j["rotation"].push_back(view.rotation(i, k));
    j["focal_x"] = view.focal_x;
    j["focal_y"] = view.focal_y;
    j["principal_x"] = view.principal_x;
    j["principal_y"] = view.principal_y;
    j["width"] = view.width;
    j["height"] = view.height;
    return j;
}

} // namespace

void save_camera(const std::string& path, const CameraView& view) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << camera_to_json(view).dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

CameraView load_camera(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(std::string("camera json parse error: ") + e.what());
    }
    try {
        return camera_from_json(j);
    } catch (const json::exception& e) {
        throw IoError(std::string("camera json schema error: ") + e.what());
    }
}

void save_views(const std::string& path, const std::vector<CameraView>& views) {
    json arr = json::array();
    for (const auto& v : views) arr.push_back(camera_to_json(v));
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << arr.dump(2) << "\n";
}

std::vector<CameraView> load_views(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    json arr;
    try {
        in >> arr;
    } catch (const json::exception& e) {
        throw IoError(std::string("views json parse error: ") + e.what());
    }
    std::vector<CameraView> views;
    try {
        if (arr.is_object()) {
            views.push_back(camera_from_json(arr)); // single camera file also accepted
        } else {
            for (const auto& j : arr) views.push_back(camera_from_json(j));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("views json schema error: ") + e.what());
    }
    return views;
}

Image quantize_unit8(const Image& img, bool encode_srgb) {
    Image out(img.width, img.height, img.channels);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        const Real encoded = encode_srgb ? srgb_encode(img.data[i]) : std::clamp(img.data[i], 0.0, 1.0);
        out.data[i] = std::round(encoded * 255.0) / 255.0;
    }
    return out;
}

void write_ppm(const std::string& path, const Image& rgb, bool encode_srgb) {
    if (rgb.channels != 3) throw ShapeError("write_ppm expects a 3-channel image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "P6\n" << rgb.width << " " << rgb.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(rgb.width) * 3);
    for (int y = 0; y < rgb.height; ++y) {
        for (int x = 0; x < rgb.width; ++x) {
            const Real* p = rgb.pixel(x, y);
            for (int c = 0; c < 3; ++c) {
                const Real encoded = encode_srgb ? srgb_encode(p[c]) : std::clamp(p[c], 0.0, 1.0);
                row[static_cast<std::size_t>(x) * 3 + static_cast<std::size_t>(c)] =
                    static_cast<unsigned char>(std::lround(encoded * 255.0));
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError("write failed: " + path);
}

Image read_ppm(const std::string& path, bool decode_srgb) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string magic;
    in >> magic;
    if (magic != "P6") throw IoError("unsupported image format (want binary P6): " + path);
    int width = 0, height = 0, maxval = 0;
    in >> width >> height >> maxval;
    if (width <= 0 || height <= 0 || maxval != 255) throw IoError("unsupported PPM header: " + path);
    in.get(); // single whitespace after the header
    Image img(width, height, 3);
    std::vector<unsigned char> row(static_cast<std::size_t>(width) * 3);
    for (int y = 0; y < height; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (in.gcount() != static_cast<std::streamsize>(row.size())) throw IoError("truncated PPM: " + path);
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < 3; ++c) {
                const Real v = row[static_cast<std::size_t>(x) * 3 + static_cast<std::size_t>(c)] / 255.0;
                img.at(x, y, c) = decode_srgb ? srgb_decode(v) : v;
            }
    }
    return img;
}

} // namespace hsplat
