#include <algorithm>

#include "grainsight/image.hpp"

namespace grainsight {

GrayImage crop(const GrayImage& img, const BoundingBox& box) {
    if (box.w <= 0 || box.h <= 0 || box.x < 0 || box.y < 0 || box.x + box.w > img.width() ||
        box.y + box.h > img.height()) {
        throw InvalidArgument("crop box outside image");
    }
    GrayImage out(box.w, box.h);
    for (int y = 0; y < box.h; ++y) {
        auto src = img.row(box.y + y).subspan(box.x, box.w);
        std::copy(src.begin(), src.end(), out.row(y).begin());
    }
    return out;
}

GrayImage flip_horizontal(const GrayImage& img) {
    GrayImage out = img;
    for (int y = 0; y < out.height(); ++y) {
        auto r = out.row(y);
        std::reverse(r.begin(), r.end());
    }
    return out;
}

GrayImage flip_vertical(const GrayImage& img) {
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        auto src = img.row(img.height() - 1 - y);
        std::copy(src.begin(), src.end(), out.row(y).begin());
    }
    return out;
}

}  // namespace grainsight
