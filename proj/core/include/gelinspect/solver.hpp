#pragma once

#include <span>
#include <vector>

#include "gelinspect/kernel.hpp"
#include "gelinspect/matrix.hpp"

namespace gelinspect {

struct SolverConfig {
  double lambda = 0.00005;
  Kernel kernel = build_highpass_kernel(build_gaussian_kernel(3, 1.0));

  /// The default inquiry setup: lambda = 0.00005, h = delta - Gaussian(3, 1.0).
  static SolverConfig defaults();
  static SolverConfig with_lambda(double lambda);
};

/// Throws invalid_lambda or wrong_kind.
void validate(const SolverConfig& cfg);

/// Pseudo-background J minimizing ||I - J||_F^2 + lambda ||h * J||_F^2
/// under circular boundaries, in closed form:
///   J = F^-1{ F{I} / (1 + lambda F{h^t} . F{h}) }
/// where h^t = reflect_kernel(h), the adjoint of convolution by h.
/// lambda == 0 returns the input unchanged. Accepts arbitrary finite input.
RealMatrix solve_pseudo_background(const RealMatrix& image, const SolverConfig& cfg);
RealMatrix solve_pseudo_background(const GrayImage& image, const SolverConfig& cfg);

/// J + lambda * h^t * (h * J) in the spatial domain: the forward model the
/// solver inverts.
RealMatrix apply_forward_operator(const RealMatrix& j, const SolverConfig& cfg);

/// ||I - J||_F^2 + lambda ||h * J||_F^2 with circular convolution.
double objective(const RealMatrix& image, const RealMatrix& j, const SolverConfig& cfg);
double objective(const GrayImage& image, const RealMatrix& j, const SolverConfig& cfg);

/// E = |I - J| elementwise.
RealMatrix compute_residue(const RealMatrix& image, const RealMatrix& j);
RealMatrix compute_residue(const GrayImage& image, const RealMatrix& j);

/// 1D series with its trend; the cycle is always samples - trend.
struct Series1D {
  std::vector<double> samples;
  std::vector<double> trend;

  std::vector<double> cycle() const;
};

/// Circular Hodrick-Prescott trend:
///   argmin_tau sum (y_t - tau_t)^2 + lambda sum (tau_{t+1} - 2 tau_t + tau_{t-1})^2
/// with wrapped indices, solved through the analytic transfer function of
/// the second difference. Throws series_too_short for fewer than 3 samples.
std::vector<double> hp1d_solve(std::span<const double> samples, double lambda);

/// Fills series.trend from series.samples.
void hp1d_solve(Series1D& series, double lambda);

}  // namespace gelinspect
