#include "gelinspect/solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gelinspect/spectral.hpp"

namespace gelinspect {

SolverConfig SolverConfig::defaults() { return SolverConfig{}; }

SolverConfig SolverConfig::with_lambda(double lambda) {
  SolverConfig cfg;
  cfg.lambda = lambda;
  return cfg;
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) {
    throw Error(ErrorCode::invalid_lambda, "lambda must be finite and nonnegative");
  }
  if (cfg.kernel.kind() != KernelKind::highpass) {
    throw Error(ErrorCode::wrong_kind, "solver needs a highpass kernel");
  }
}

RealMatrix solve_pseudo_background(const RealMatrix& image, const SolverConfig& cfg) {
  validate(cfg);
  require_finite(image, "solver input is not finite");
  const std::size_t rows = image.rows();
  const std::size_t cols = image.cols();
  // Embedding first also enforces the grid-vs-kernel precondition for lambda == 0.
  const RealMatrix h = embed_kernel(cfg.kernel, rows, cols);
  if (cfg.lambda == 0.0) {
    return image;
  }
  const RealMatrix h_adj = embed_kernel(reflect_kernel(cfg.kernel), rows, cols);

  ComplexMatrix spectrum = dft2_forward(image);
  const ComplexMatrix fh = dft2_forward(h);
  const ComplexMatrix fh_adj = dft2_forward(h_adj);
  auto s = spectrum.values();
  const auto a = fh.values();
  const auto b = fh_adj.values();
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] /= 1.0 + cfg.lambda * (b[i] * a[i]);
  }
  return dft2_inverse(spectrum);
}

RealMatrix solve_pseudo_background(const GrayImage& image, const SolverConfig& cfg) {
  return solve_pseudo_background(image.matrix(), cfg);
}

RealMatrix apply_forward_operator(const RealMatrix& j, const SolverConfig& cfg) {
  validate(cfg);
  const RealMatrix hj = circular_convolve(j, cfg.kernel);
  const RealMatrix hthj = circular_convolve(hj, reflect_kernel(cfg.kernel));
  RealMatrix out = j;
  auto o = out.values();
  const auto t = hthj.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += cfg.lambda * t[i];
  return out;
}

double objective(const RealMatrix& image, const RealMatrix& j, const SolverConfig& cfg) {
  validate(cfg);
  require_same_shape(image, j, "objective needs matching image and background shapes");
  double fidelity = 0.0;
  const auto iv = image.values();
  const auto jv = j.values();
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const double d = iv[i] - jv[i];
    fidelity += d * d;
  }
  if (cfg.lambda == 0.0) return fidelity;
  double roughness = 0.0;
  const RealMatrix hj = circular_convolve(j, cfg.kernel);
  for (double v : hj.values()) roughness += v * v;
  return fidelity + cfg.lambda * roughness;
}

double objective(const GrayImage& image, const RealMatrix& j, const SolverConfig& cfg) {
  return objective(image.matrix(), j, cfg);
}

RealMatrix compute_residue(const RealMatrix& image, const RealMatrix& j) {
  require_same_shape(image, j, "residue needs matching image and background shapes");
  RealMatrix e(image.rows(), image.cols());
  const auto iv = image.values();
  const auto jv = j.values();
  auto ev = e.values();
  for (std::size_t i = 0; i < ev.size(); ++i) ev[i] = std::abs(iv[i] - jv[i]);
  return e;
}

RealMatrix compute_residue(const GrayImage& image, const RealMatrix& j) {
  return compute_residue(image.matrix(), j);
}

std::vector<double> Series1D::cycle() const {
  if (trend.size() != samples.size()) {
    throw Error(ErrorCode::dimension_mismatch, "trend has not been computed for this series");
  }
  std::vector<double> c(samples.size());
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = samples[t] - trend[t];
  return c;
}

std::vector<double> hp1d_solve(std::span<const double> samples, double lambda) {
  const std::size_t n = samples.size();
  if (n < 3) {
    throw Error(ErrorCode::series_too_short, "need at least 3 samples, got " + std::to_string(n));
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::invalid_lambda, "lambda must be finite and nonnegative");
  }
  RealMatrix column(n, 1);
  for (std::size_t t = 0; t < n; ++t) column(t, 0) = samples[t];
  require_finite(column, "series contains a non-finite sample");
  if (lambda == 0.0) return {samples.begin(), samples.end()};

  // The circular second difference has transfer function 2 cos(w) - 2.
  ComplexMatrix spectrum = dft2_forward(column);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const double d = 2.0 * std::cos(w) - 2.0;
    spectrum(k, 0) /= 1.0 + lambda * d * d;
  }
  const RealMatrix trend = dft2_inverse(spectrum);
  return {trend.values().begin(), trend.values().end()};
}

void hp1d_solve(Series1D& series, double lambda) {
  series.trend = hp1d_solve(series.samples, lambda);
}

}  // namespace gelinspect
