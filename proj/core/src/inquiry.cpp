#include "gelinspect/inquiry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gelinspect/serialize.hpp"

namespace gelinspect {

SolverConfig InquiryParams::solver_config() const {
  SolverConfig cfg;
  cfg.lambda = lambda;
  cfg.kernel = build_highpass_kernel(build_gaussian_kernel(kernel_size, kernel_sigma));
  return cfg;
}

void validate(const InquiryParams& params) {
  if (!(params.lambda >= 0.0) || !std::isfinite(params.lambda)) {
    throw Error(ErrorCode::invalid_lambda, "lambda must be finite and nonnegative");
  }
  if (!(params.gamma > 0.0 && params.gamma < 1.0)) {
    throw Error(ErrorCode::gamma_out_of_range, "gamma must lie in (0,1)");
  }
  if (!(params.blend_alpha > 0.0 && params.blend_alpha <= 1.0)) {
    throw Error(ErrorCode::alpha_out_of_range, "blend alpha must lie in (0,1]");
  }
  for (double c : params.stain_rgb) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw Error(ErrorCode::out_of_range_input, "stain color channels must lie in [0,1]");
    }
  }
  // Raises invalid_size / invalid_sigma.
  (void)build_gaussian_kernel(params.kernel_size, params.kernel_sigma);
}

RealMatrix normalize_residue(const RealMatrix& residue) {
  require_finite(residue, "residue is not finite");
  RealMatrix out(residue.rows(), residue.cols(), 0.0);
  if (residue.empty()) return out;
  const auto [lo, hi] = std::minmax_element(residue.values().begin(), residue.values().end());
  const double min = *lo;
  const double range = *hi - min;
  if (range == 0.0) return out;
  const auto src = residue.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (src[i] - min) / range;
  return out;
}

IndicatorMap threshold_binarize(const RealMatrix& normalized, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::gamma_out_of_range, "gamma must lie in (0,1), got " + std::to_string(gamma));
  }
  IndicatorMap map(normalized.rows(), normalized.cols(), 0);
  const auto src = normalized.values();
  auto dst = map.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] >= gamma ? 1 : 0;
  return map;
}

OverlayImage stain_and_blend(const GrayImage& image, const IndicatorMap& map,
                             const InquiryParams& params) {
  require_same_shape(image.matrix(), map, "overlay needs an indicator map of the image's shape");
  const double a = params.blend_alpha;
  if (!(a > 0.0 && a <= 1.0)) {
    throw Error(ErrorCode::alpha_out_of_range, "blend alpha must lie in (0,1]");
  }
  const auto& stain = params.stain_rgb;
  OverlayImage out(image.rows(), image.cols());
  const auto gray = image.matrix().values();
  const auto bits = map.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const double g = gray[i];
    if (bits[i] != 0) {
      dst[i] = Rgb{std::clamp((1.0 - a) * g + a * stain[0], 0.0, 1.0),
                   std::clamp((1.0 - a) * g + a * stain[1], 0.0, 1.0),
                   std::clamp((1.0 - a) * g + a * stain[2], 0.0, 1.0)};
    } else {
      dst[i] = Rgb{g, g, g};
    }
  }
  return out;
}

double white_fraction(const IndicatorMap& map) {
  if (map.empty()) return 0.0;
  std::size_t ones = 0;
  for (auto b : map.values()) ones += b != 0 ? 1 : 0;
  return static_cast<double>(ones) / static_cast<double>(map.size());
}

InquiryResult run_inquiry(const GrayImage& image, const InquiryParams& params) {
  validate(params);
  InquiryResult result;
  result.background = solve_pseudo_background(image, params.solver_config());
  result.residue = compute_residue(image, result.background);
  for (double& v : result.residue.values()) {
    if (v <= kResidueRoundoffFloor) v = 0.0;
  }
  result.normalized = normalize_residue(result.residue);
  result.indicator = threshold_binarize(result.normalized, params.gamma);
  result.overlay = stain_and_blend(image, result.indicator, params);

  InquiryReport& report = result.report;
  report.params = params;
  report.height = image.rows();
  report.width = image.cols();
  const auto e = result.residue.values();
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  report.residue_min = *lo;
  report.residue_max = *hi;
  double sum = 0.0;
  for (double v : e) sum += v;
  report.residue_mean = sum / static_cast<double>(e.size());
  report.white_fraction = white_fraction(result.indicator);
  report.input_digest = pixel_digest(image.matrix());
  return result;
}

}  // namespace gelinspect
