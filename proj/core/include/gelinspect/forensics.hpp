#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "gelinspect/matrix.hpp"

namespace gelinspect {

struct RegionSpec {
  std::size_t top = 0;
  std::size_t left = 0;
  std::size_t height = 1;
  std::size_t width = 1;

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// Parses "top,left,height,width". Throws invalid_spec.
RegionSpec parse_region(const std::string& text);

/// Throws out_of_bounds unless r has positive size and lies inside rows x cols.
void require_inside(const RegionSpec& r, std::size_t rows, std::size_t cols);

GrayImage extract_region(const GrayImage& image, const RegionSpec& r);
RealMatrix extract_region(const RealMatrix& m, const RegionSpec& r);

struct PsnrMatch {
  std::ptrdiff_t dy = 0;
  std::ptrdiff_t dx = 0;
  double mse = 0.0;
  /// +infinity when mse == 0.
  double psnr_db = std::numeric_limits<double>::infinity();

  bool exact_match() const noexcept { return mse == 0.0; }
};

/// 10 log10(1 / mse) for peak value 1; +infinity for mse == 0.
double psnr_from_mse(double mse);

/// Exhaustive template matching: evaluates every offset at which the
/// template fits inside `search`, returning the minimum-MSE offset. Ties go
/// to the smallest dy, then the smallest dx. Throws template_too_large.
PsnrMatch template_match_psnr(const RealMatrix& templ, const RealMatrix& search);
PsnrMatch template_match_psnr(const GrayImage& templ, const GrayImage& search);

}  // namespace gelinspect
