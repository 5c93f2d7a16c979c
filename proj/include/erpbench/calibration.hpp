#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "erpbench/geometry.hpp"
#include "erpbench/image.hpp"

namespace erpbench {

// Inverse transform for models that emit disparity-like raw outputs:
//   d = clip(1 / (alpha * sigmoid(raw) + eps_stability), clip_min, clip_max)
struct DisparityParams {
    double alpha = 1.0;           // model-specific scale, > 0
    double eps_stability = 1e-6;  // keeps the inversion finite near sigmoid ~ 0
    double clip_min = 0.0;        // meters
    double clip_max = 10.0;       // meters

    void validate() const {
        if (!(alpha > 0)) throw DataError("alpha must be positive");
        if (!(eps_stability > 0 && eps_stability < 1)) throw DataError("bad eps_stability");
        if (!(clip_min < clip_max)) throw DataError("clip_min must be below clip_max");
    }
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline Image disparity_to_depth(const Image& raw, const DisparityParams& params) {
    params.validate();
    if (raw.channels != 1) throw DataError("disparity maps must be single-channel");
    Image out = raw;
    for (float& v : out.data) {
        if (!std::isfinite(v)) {
            v = std::numeric_limits<float>::quiet_NaN();
            continue;
        }
        const double d = 1.0 / (params.alpha * sigmoid(v) + params.eps_stability);
        v = static_cast<float>(std::clamp(d, params.clip_min, params.clip_max));
    }
    return out;
}

struct CalibrationResult {
    double lambda = 0;       // least-squares scale aligning pred to gt
    int n_train = 0;
    double residual_rms = 0;  // meters, on the training pairs
};

// Closed-form minimizer of sum((lambda * pred_i - gt_i)^2):
//   lambda = sum(pred_i * gt_i) / sum(pred_i^2)
inline CalibrationResult fit_scale(std::span<const double> pred, std::span<const double> gt) {
    if (pred.size() != gt.size()) throw DataError("fit_scale: length mismatch");
    if (pred.empty()) throw DataError("fit_scale: empty input");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!std::isfinite(pred[i]) || pred[i] < 0) throw DataError("fit_scale: bad prediction value");
        if (!std::isfinite(gt[i])) throw DataError("fit_scale: bad ground-truth value");
        num += pred[i] * gt[i];
        den += pred[i] * pred[i];
    }
    if (den == 0) throw DataError("degenerate calibration");
    CalibrationResult r;
    r.lambda = num / den;
    r.n_train = static_cast<int>(pred.size());
    double ss = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double e = r.lambda * pred[i] - gt[i];
        ss += e * e;
    }
    r.residual_rms = std::sqrt(ss / pred.size());
    return r;
}

enum class ErrorMetric { mse, rmse, mae };

inline const char* metric_name(ErrorMetric m) {
    switch (m) {
        case ErrorMetric::mse: return "mse";
        case ErrorMetric::rmse: return "rmse";
        default: return "mae";
    }
}

inline ErrorMetric metric_from_name(const std::string& s) {
    if (s == "mse") return ErrorMetric::mse;
    if (s == "rmse") return ErrorMetric::rmse;
    if (s == "mae") return ErrorMetric::mae;
    throw DataError("unknown metric: " + s);
}

inline double depth_error(std::span<const double> pred, std::span<const double> gt, double lambda,
                          ErrorMetric metric) {
    if (pred.size() != gt.size()) throw DataError("depth_error: length mismatch");
    if (pred.empty()) throw DataError("depth_error: empty input");
    double acc = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double r = lambda * pred[i] - gt[i];
        acc += (metric == ErrorMetric::mae) ? std::abs(r) : r * r;
    }
    acc /= static_cast<double>(pred.size());
    return metric == ErrorMetric::rmse ? std::sqrt(acc) : acc;
}

// Images weigh equally regardless of how many landmarks each contributed.
inline double average_image_errors(std::span<const double> per_image_errors) {
    if (per_image_errors.empty()) throw DataError("average_image_errors: empty input");
    double acc = 0;
    for (double v : per_image_errors) acc += v;
    return acc / static_cast<double>(per_image_errors.size());
}

struct DepthSample {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
    bool used_fallback = false;
};

// Bilinear read of a depth map at a landmark pixel. If the bilinear
// neighborhood touches an invalid pixel (with nonzero weight), falls back to
// the nearest valid pixel within a 3-pixel radius; beyond that the sample is
// invalid and the landmark drops out of scoring.
inline DepthSample sample_depth_at_pixel(const Image& depth, double u, double v) {
    if (depth.channels != 1) throw DataError("depth maps must be single-channel");
    require_erp(depth);
    DepthSample out;
    const double xf = u - 0.5, yf = v - 0.5;
    const double xb = std::floor(xf), yb = std::floor(yf);
    const double fx = xf - xb, fy = yf - yb;
    const int x0 = detail::wrap_col(static_cast<int>(xb), depth.width);
    const int x1 = detail::wrap_col(x0 + 1, depth.width);
    const int y0 = detail::clamp_row(static_cast<int>(yb), depth.height);
    const int y1 = detail::clamp_row(static_cast<int>(yb) + 1, depth.height);
    const double v00 = depth.at(x0, y0), v10 = depth.at(x1, y0);
    const double v01 = depth.at(x0, y1), v11 = depth.at(x1, y1);
    const double w00 = (1 - fx) * (1 - fy), w10 = fx * (1 - fy);
    const double w01 = (1 - fx) * fy, w11 = fx * fy;
    const bool clean = (w00 <= 0 || depth_valid(v00)) && (w10 <= 0 || depth_valid(v10)) &&
                       (w01 <= 0 || depth_valid(v01)) && (w11 <= 0 || depth_valid(v11));
    if (clean) {
        out.value = detail::bilinear_from_corners(v00, v10, v01, v11, fx, fy);
        out.valid = true;
        return out;
    }
    // Nearest valid pixel center within radius 3; ties by row then column.
    constexpr double kRadius = 3.0;
    double best_d2 = kRadius * kRadius + 1e-12;
    const int cy = static_cast<int>(std::floor(v));
    for (int dy = -3; dy <= 3; ++dy) {
        const int iy = cy + dy;
        if (iy < 0 || iy >= depth.height) continue;
        for (int dx = -3; dx <= 3; ++dx) {
            const int ix = detail::wrap_col(static_cast<int>(std::floor(u)) + dx, depth.width);
            const double val = depth.at(ix, iy);
            if (!depth_valid(val)) continue;
            double du = (ix + 0.5) - u;
            // compare against the wrapped horizontal distance
            du -= depth.width * std::round(du / depth.width);
            const double dv = (iy + 0.5) - v;
            const double d2 = du * du + dv * dv;
            if (d2 < best_d2) {
                best_d2 = d2;
                out.value = val;
                out.valid = true;
                out.used_fallback = true;
            }
        }
    }
    return out;
}

}  // namespace erpbench
