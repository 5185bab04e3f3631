#pragma once

#include <array>

#include "grainsight/image.hpp"
#include "grainsight/kernels.hpp"

namespace grainsight {

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B).
GrayImage to_grayscale(const RgbImage& img);

/// Normalized 5x5 sampled Gaussian, full matrix (row = dy + 2, col = dx + 2).
std::array<std::array<double, 5>, 5> gaussian_kernel_5x5(double sigma);

/// The same kernel collapsed to its six distinct weights.
kernels::BlurWeights gaussian_weights_5x5(double sigma);

/// 5x5 Gaussian smoothing with reflect-101 borders, rounded to nearest.
/// Throws InvalidArgument for sigma <= 0 or non-finite sigma.
GrayImage gaussian_blur_5x5(const GrayImage& img, double sigma = 1.0);

}  // namespace grainsight
