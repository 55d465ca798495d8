#pragma once

#include <array>
#include <string>
#include <vector>

#include "gelinspect/matrix.hpp"
#include "gelinspect/solver.hpp"

namespace gelinspect {

struct InquiryParams {
  double lambda = 0.00005;
  double gamma = 0.0001;
  double blend_alpha = 0.5;
  std::array<double, 3> stain_rgb{1.0, 1.0, 0.0};
  std::size_t kernel_size = 3;
  double kernel_sigma = 1.0;

  SolverConfig solver_config() const;
};

/// Throws gamma_out_of_range, alpha_out_of_range, invalid_lambda,
/// invalid_size or invalid_sigma.
void validate(const InquiryParams& params);

/// Residue entries at or below this value are treated as exact zeros before
/// normalization. Transform round-off on [0,1] images stays below 1e-14,
/// while any structure representable at 16-bit depth yields residues above
/// 1e-10 at the default lambda.
inline constexpr double kResidueRoundoffFloor = 1e-12;

/// Min-max normalization into [0,1]. A constant residue maps to all zeros.
RealMatrix normalize_residue(const RealMatrix& residue);

/// bit = 1 where value >= gamma. gamma must lie in (0,1).
IndicatorMap threshold_binarize(const RealMatrix& normalized, double gamma);

/// Alpha-blends the stain color over the grayscale image wherever bit = 1.
OverlayImage stain_and_blend(const GrayImage& image, const IndicatorMap& map,
                             const InquiryParams& params);

struct InquiryReport {
  static constexpr int kSchemaVersion = 1;

  InquiryParams params;
  std::size_t height = 0;
  std::size_t width = 0;
  double residue_min = 0.0;
  double residue_max = 0.0;
  double residue_mean = 0.0;
  double white_fraction = 0.0;
  std::string input_digest;
  std::vector<std::string> artifact_paths;
};

struct InquiryResult {
  RealMatrix background;  // J
  RealMatrix residue;     // E
  RealMatrix normalized;  // E scaled into [0,1]
  IndicatorMap indicator;
  OverlayImage overlay;
  InquiryReport report;
};

/// solve -> residue -> normalize -> threshold -> stain/blend.
/// The report digest covers the pixel content of `image`.
InquiryResult run_inquiry(const GrayImage& image, const InquiryParams& params);

double white_fraction(const IndicatorMap& map);

}  // namespace gelinspect
