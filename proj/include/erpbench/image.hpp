#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "erpbench/errors.hpp"

namespace erpbench {

// Row-major float grid, top row first, channels interleaved. Used both for
// equirectangular images (width ~ 2*height, horizontal axis circular) and for
// square cube faces. Depth maps are single-channel with ray length in meters;
// values <= 0 or non-finite are the invalid sentinel.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {
        if (w < 1 || h < 1 || (c != 1 && c != 3))
            throw DataError("bad image dimensions");
    }

    float& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    float at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

inline bool depth_valid(double v) { return std::isfinite(v) && v > 0.0; }

inline void require_erp(const Image& img) {
    if (img.width < 2 || img.height < 1)
        throw DataError("equirectangular image must be at least 2x1");
    if (img.channels != 1 && img.channels != 3)
        throw DataError("image must have 1 or 3 channels");
    if (img.data.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        throw DataError("image data size does not match dimensions");
}

}  // namespace erpbench
