#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "erpbench/image.hpp"

// Spherical <-> equirectangular mapping conventions used throughout:
//
//   longitude theta = 2*pi*(u/width) - pi      (theta in [-pi, pi), left to right)
//   latitude  phi   = pi/2 - pi*(v/height)     (phi in [pi/2, -pi/2], top to bottom)
//   direction       = (cos phi cos theta, cos phi sin theta, sin phi)
//
// Pixel index i has its center at continuous coordinate i + 0.5. The
// horizontal axis is circular, the vertical axis is not. World axes: +X is
// the image center direction, +Z is up (north pole at v = 0).

namespace erpbench {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 normalized() const {
        const double n = norm();
        if (n <= 0.0 || !std::isfinite(n)) throw DataError("degenerate direction");
        return {x / n, y / n, z / n};
    }
};

struct Mat3 {
    // Row-major.
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    double at(int r, int c) const { return m[r * 3 + c]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.m[i * 3 + j] = m[i * 3] * o.m[j] + m[i * 3 + 1] * o.m[3 + j] + m[i * 3 + 2] * o.m[6 + j];
        return r;
    }

    Mat3 transposed() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    bool is_exact_identity() const {
        return m[0] == 1 && m[1] == 0 && m[2] == 0 && m[3] == 0 && m[4] == 1 && m[5] == 0 &&
               m[6] == 0 && m[7] == 0 && m[8] == 1;
    }
};

// yaw about world Z (up), pitch about Y, roll about X; intrinsic composition
// order yaw -> pitch -> roll. Degrees everywhere at the API surface.
struct EulerAngles {
    double yaw_deg = 0;
    double pitch_deg = 0;
    double roll_deg = 0;
};

struct CameraPose {
    Vec3 position;  // meters, World frame
    EulerAngles orientation;
};

inline Mat3 rotation_x(double rad) {
    const double c = std::cos(rad), s = std::sin(rad);
    return Mat3{{1, 0, 0, 0, c, -s, 0, s, c}};
}

inline Mat3 rotation_y(double rad) {
    const double c = std::cos(rad), s = std::sin(rad);
    return Mat3{{c, 0, s, 0, 1, 0, -s, 0, c}};
}

inline Mat3 rotation_z(double rad) {
    const double c = std::cos(rad), s = std::sin(rad);
    return Mat3{{c, -s, 0, s, c, 0, 0, 0, 1}};
}

// R = Rz(yaw) * Ry(pitch) * Rx(roll).
inline Mat3 euler_to_rotation(const EulerAngles& e) {
    if (!std::isfinite(e.yaw_deg) || !std::isfinite(e.pitch_deg) || !std::isfinite(e.roll_deg))
        throw DataError("non-finite Euler angles");
    return rotation_z(deg_to_rad(e.yaw_deg)) * rotation_y(deg_to_rad(e.pitch_deg)) *
           rotation_x(deg_to_rad(e.roll_deg));
}

inline void validate_rotation(const Mat3& r, double tol = 1e-9) {
    const Mat3 g = r.transposed() * r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double expect = (i == j) ? 1.0 : 0.0;
            if (!(std::abs(g.at(i, j) - expect) <= tol))
                throw DataError("matrix is not orthonormal");
        }
    if (!(std::abs(r.determinant() - 1.0) <= tol))
        throw DataError("matrix is not a proper rotation");
}

inline Vec3 pixel_to_ray(double u, double v, int width, int height) {
    if (width <= 0 || height <= 0) throw DataError("pixel_to_ray: non-positive dimensions");
    u = u - width * std::floor(u / width);              // horizontal wrap
    v = std::clamp(v, 0.0, static_cast<double>(height));  // vertical clamp
    const double theta = 2.0 * kPi * (u / width) - kPi;
    const double phi = kPi / 2.0 - kPi * (v / height);
    const double cp = std::cos(phi);
    return {cp * std::cos(theta), cp * std::sin(theta), std::sin(phi)};
}

struct Pixel {
    double u = 0, v = 0;
};

inline Pixel ray_to_pixel(const Vec3& dir, int width, int height) {
    const Vec3 d = dir.normalized();
    double u;
    if (d.x == 0.0 && d.y == 0.0) {
        u = width / 2.0;  // poles: longitude undefined, pinned by convention
    } else {
        const double theta = std::atan2(d.y, d.x);
        u = width * (theta + kPi) / (2.0 * kPi);
    }
    const double phi = std::asin(std::clamp(d.z, -1.0, 1.0));
    const double v = height * (kPi / 2.0 - phi) / kPi;
    return {u, v};
}

enum class Interp { bilinear, nearest };

namespace detail {

inline int wrap_col(int x, int width) {
    x %= width;
    return x < 0 ? x + width : x;
}

inline int clamp_row(int y, int height) { return std::clamp(y, 0, height - 1); }

// Bilinear with nested lerps, then clamped to the corner hull: a constant
// neighborhood samples exactly, and output never leaves the input range.
inline double bilinear_from_corners(double v00, double v10, double v01, double v11, double fx,
                                    double fy) {
    const double top = v00 + fx * (v10 - v00);
    const double bot = v01 + fx * (v11 - v01);
    double val = top + fy * (bot - top);
    const double lo = std::min(std::min(v00, v10), std::min(v01, v11));
    const double hi = std::max(std::max(v00, v10), std::max(v01, v11));
    return std::clamp(val, lo, hi);
}

}  // namespace detail

// Sample an ERP image at continuous coordinates (pixel centers at i + 0.5),
// wrapping horizontally and clamping vertically.
inline double sample_erp(const Image& img, double u, double v, int channel, Interp interp) {
    if (interp == Interp::nearest) {
        const int ix = detail::wrap_col(static_cast<int>(std::floor(u)), img.width);
        const int iy = detail::clamp_row(static_cast<int>(std::floor(v)), img.height);
        return img.at(ix, iy, channel);
    }
    const double xf = u - 0.5, yf = v - 0.5;
    const double xb = std::floor(xf), yb = std::floor(yf);
    const double fx = xf - xb, fy = yf - yb;
    const int x0 = detail::wrap_col(static_cast<int>(xb), img.width);
    const int x1 = detail::wrap_col(x0 + 1, img.width);
    const int y0 = detail::clamp_row(static_cast<int>(yb), img.height);
    const int y1 = detail::clamp_row(static_cast<int>(yb) + 1, img.height);
    return detail::bilinear_from_corners(img.at(x0, y0, channel), img.at(x1, y0, channel),
                                         img.at(x0, y1, channel), img.at(x1, y1, channel), fx, fy);
}

// Backward warp: output(x, y) samples the input along the rotated pixel-center
// ray. output(x,y) = input at ray_to_pixel(R * pixel_to_ray(x+0.5, y+0.5)).
inline Image rotate_erp(const Image& img, const Mat3& rotation, Interp interp = Interp::bilinear) {
    require_erp(img);
    validate_rotation(rotation);
    Image out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const Vec3 ray = pixel_to_ray(x + 0.5, y + 0.5, img.width, img.height);
            const Pixel src = ray_to_pixel(rotation * ray, img.width, img.height);
            for (int c = 0; c < img.channels; ++c)
                out.at(x, y, c) = static_cast<float>(sample_erp(img, src.u, src.v, c, interp));
        }
    }
    return out;
}

// Undo the camera orientation so the result corresponds to pitch = roll = 0.
// With keep_yaw the heading survives and only pitch/roll are removed.
inline Image gravity_align(const Image& img, const CameraPose& pose, bool keep_yaw = false,
                           Interp interp = Interp::bilinear) {
    const Mat3 r_cam =
        keep_yaw ? rotation_y(deg_to_rad(pose.orientation.pitch_deg)) *
                       rotation_x(deg_to_rad(pose.orientation.roll_deg))
                 : euler_to_rotation(pose.orientation);
    return rotate_erp(img, r_cam.transposed(), interp);
}

// Apply a simulated camera misalignment (pitch then roll; yaw deliberately
// excluded) to a gravity-aligned image.
inline Image simulate_pose(const Image& img, double pitch_deg, double roll_deg,
                           Interp interp = Interp::bilinear) {
    return rotate_erp(img, euler_to_rotation({0.0, pitch_deg, roll_deg}), interp);
}

}  // namespace erpbench
