#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "erpbench/geometry.hpp"
#include "erpbench/image.hpp"

namespace erpbench {

// Six 90-degree-FOV square faces. Face frames are pinned so layouts are
// bit-reproducible; a face pixel (a, b) looks along
//
//     dir = axis + s * right + t * down,
//     s = 2*(a + 0.5)/face_size - 1,   t = 2*(b + 0.5)/face_size - 1.
//
//   face   | axis       | right      | down
//   -------+------------+------------+-----------
//   front  | (+1, 0, 0) | ( 0,+1, 0) | ( 0, 0,-1)
//   back   | (-1, 0, 0) | ( 0,-1, 0) | ( 0, 0,-1)
//   left   | ( 0,+1, 0) | (-1, 0, 0) | ( 0, 0,-1)
//   right  | ( 0,-1, 0) | (+1, 0, 0) | ( 0, 0,-1)
//   up     | ( 0, 0,+1) | ( 0,+1, 0) | (+1, 0, 0)
//   down   | ( 0, 0,-1) | ( 0,+1, 0) | (-1, 0, 0)

enum class CubeFace { front = 0, back, left, right, up, down };

constexpr int kNumCubeFaces = 6;

struct FaceFrame {
    Vec3 axis, right, down;
};

inline const FaceFrame& face_frame(CubeFace f) {
    static const std::array<FaceFrame, 6> frames = {{
        {{+1, 0, 0}, {0, +1, 0}, {0, 0, -1}},
        {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
        {{0, +1, 0}, {-1, 0, 0}, {0, 0, -1}},
        {{0, -1, 0}, {+1, 0, 0}, {0, 0, -1}},
        {{0, 0, +1}, {0, +1, 0}, {+1, 0, 0}},
        {{0, 0, -1}, {0, +1, 0}, {-1, 0, 0}},
    }};
    return frames[static_cast<int>(f)];
}

inline const char* face_suffix(CubeFace f) {
    static const char* names[6] = {"px", "nx", "py", "ny", "pz", "nz"};
    return names[static_cast<int>(f)];
}

struct CubeFaceSet {
    int face_size = 0;
    int channels = 1;
    std::array<Image, 6> faces;

    Image& face(CubeFace f) { return faces[static_cast<int>(f)]; }
    const Image& face(CubeFace f) const { return faces[static_cast<int>(f)]; }
};

inline void require_cubefaces(const CubeFaceSet& set) {
    if (set.face_size < 2) throw DataError("face_size must be >= 2");
    for (const Image& f : set.faces) {
        if (f.width != set.face_size || f.height != set.face_size || f.channels != set.channels)
            throw DataError("cube faces disagree on size or channel count");
        if (f.data.size() != static_cast<std::size_t>(f.width) * f.height * f.channels)
            throw DataError("cube face data size does not match dimensions");
    }
}

// Maximal dot product with the face axis; ties broken by face order
// (front, back, left, right, up, down) so the sphere is partitioned.
inline CubeFace select_face(const Vec3& d) {
    const double dots[6] = {d.x, -d.x, d.y, -d.y, d.z, -d.z};
    int best = 0;
    for (int i = 1; i < 6; ++i)
        if (dots[i] > dots[best]) best = i;
    return static_cast<CubeFace>(best);
}

namespace detail {

// Face-local bilinear sample, clamped at face borders (faces are processed
// independently; no cross-face reads). With propagate_invalid, any touched
// invalid pixel makes the sample invalid.
inline double sample_face(const Image& face, double a, double b, int channel,
                          bool propagate_invalid) {
    const double xf = a - 0.5, yf = b - 0.5;
    const double xb = std::floor(xf), yb = std::floor(yf);
    const double fx = xf - xb, fy = yf - yb;
    const int x0 = clamp_row(static_cast<int>(xb), face.width);
    const int x1 = clamp_row(static_cast<int>(xb) + 1, face.width);
    const int y0 = clamp_row(static_cast<int>(yb), face.height);
    const int y1 = clamp_row(static_cast<int>(yb) + 1, face.height);
    const double v00 = face.at(x0, y0, channel), v10 = face.at(x1, y0, channel);
    const double v01 = face.at(x0, y1, channel), v11 = face.at(x1, y1, channel);
    if (propagate_invalid) {
        const double w00 = (1 - fx) * (1 - fy), w10 = fx * (1 - fy);
        const double w01 = (1 - fx) * fy, w11 = fx * fy;
        if ((w00 > 0 && !depth_valid(v00)) || (w10 > 0 && !depth_valid(v10)) ||
            (w01 > 0 && !depth_valid(v01)) || (w11 > 0 && !depth_valid(v11)))
            return std::numeric_limits<double>::quiet_NaN();
    }
    return bilinear_from_corners(v00, v10, v01, v11, fx, fy);
}

}  // namespace detail

inline CubeFaceSet erp_to_cubemap(const Image& erp, int face_size) {
    require_erp(erp);
    if (face_size < 2) throw DataError("face_size must be >= 2");
    CubeFaceSet set;
    set.face_size = face_size;
    set.channels = erp.channels;
    for (int fi = 0; fi < kNumCubeFaces; ++fi) {
        const FaceFrame& fr = face_frame(static_cast<CubeFace>(fi));
        Image face(face_size, face_size, erp.channels);
        for (int b = 0; b < face_size; ++b) {
            const double t = 2.0 * (b + 0.5) / face_size - 1.0;
            for (int a = 0; a < face_size; ++a) {
                const double s = 2.0 * (a + 0.5) / face_size - 1.0;
                const Vec3 dir = fr.axis + fr.right * s + fr.down * t;
                const Pixel p = ray_to_pixel(dir, erp.width, erp.height);
                for (int c = 0; c < erp.channels; ++c)
                    face.at(a, b, c) =
                        static_cast<float>(sample_erp(erp, p.u, p.v, c, Interp::bilinear));
            }
        }
        set.faces[fi] = std::move(face);
    }
    return set;
}

inline Image cubemap_to_erp(const CubeFaceSet& set, int width, int height,
                            bool propagate_invalid = false) {
    require_cubefaces(set);
    if (width < 2 || height < 1) throw DataError("bad output dimensions");
    const int n = set.face_size;
    Image out(width, height, set.channels);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Vec3 d = pixel_to_ray(x + 0.5, y + 0.5, width, height);
            const CubeFace f = select_face(d);
            const FaceFrame& fr = face_frame(f);
            const double k = d.dot(fr.axis);
            const double a = (d.dot(fr.right) / k + 1.0) / 2.0 * n;
            const double b = (d.dot(fr.down) / k + 1.0) / 2.0 * n;
            for (int c = 0; c < set.channels; ++c)
                out.at(x, y, c) = static_cast<float>(
                    detail::sample_face(set.face(f), a, b, c, propagate_invalid));
        }
    }
    return out;
}

enum class FaceDepthMode { planar, ray };

// planar: values measure distance along the face axis and get multiplied by
// the secant sqrt(1 + s^2 + t^2) to become ray lengths. ray: identity.
inline Image face_planar_to_ray_depth(const Image& face_depth, FaceDepthMode mode) {
    if (face_depth.channels != 1) throw DataError("depth faces must be single-channel");
    Image out = face_depth;
    if (mode == FaceDepthMode::ray) return out;
    const int n = face_depth.width;
    for (int b = 0; b < face_depth.height; ++b) {
        const double t = 2.0 * (b + 0.5) / face_depth.height - 1.0;
        for (int a = 0; a < n; ++a) {
            const double v = face_depth.at(a, b);
            if (std::isfinite(v) && v < 0.0) throw DataError("negative planar depth");
            if (!depth_valid(v)) continue;  // sentinel passes through
            const double s = 2.0 * (a + 0.5) / n - 1.0;
            out.at(a, b) = static_cast<float>(v * std::sqrt(1.0 + s * s + t * t));
        }
    }
    return out;
}

// Per-face depth predictions -> spherical depth map. Invalid sentinels
// propagate through the bilinear resampling.
inline Image reproject_cubemap_depth(const CubeFaceSet& face_depths, int width, int height,
                                     FaceDepthMode mode) {
    require_cubefaces(face_depths);
    if (face_depths.channels != 1) throw DataError("depth faces must be single-channel");
    CubeFaceSet ray_set;
    ray_set.face_size = face_depths.face_size;
    ray_set.channels = 1;
    for (int fi = 0; fi < kNumCubeFaces; ++fi)
        ray_set.faces[fi] = face_planar_to_ray_depth(face_depths.faces[fi], mode);
    return cubemap_to_erp(ray_set, width, height, /*propagate_invalid=*/true);
}

}  // namespace erpbench
