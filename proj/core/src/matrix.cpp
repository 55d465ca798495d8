#include "gelinspect/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gelinspect {

void require_finite(const RealMatrix& m, const char* what) {
  for (double v : m.values()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::nonfinite_input, what);
    }
  }
}

GrayImage::GrayImage(RealMatrix pixels) : pixels_(std::move(pixels)) {
  if (pixels_.rows() == 0 || pixels_.cols() == 0) {
    throw Error(ErrorCode::invalid_size, "image must have at least one row and one column");
  }
  for (double v : pixels_.values()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::nonfinite_input, "image pixel is not finite");
    }
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::out_of_range_input,
                  "image pixel " + std::to_string(v) + " outside [0,1]");
    }
  }
}

GrayImage::GrayImage(std::size_t rows, std::size_t cols, double fill)
    : GrayImage(RealMatrix(rows, cols, fill)) {}

GrayImage GrayImage::clamped(RealMatrix m) {
  for (double& v : m.values()) {
    if (std::isnan(v)) {
      throw Error(ErrorCode::nonfinite_input, "cannot clamp NaN");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return GrayImage(std::move(m));
}

}  // namespace gelinspect
