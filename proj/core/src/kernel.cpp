#include "gelinspect/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gelinspect {

namespace {

double coefficient_sum(const RealMatrix& m) {
  double sum = 0.0;
  for (double v : m.values()) sum += v;
  return sum;
}

}  // namespace

Kernel::Kernel(RealMatrix coefficients, KernelKind kind)
    : coefficients_(std::move(coefficients)), kind_(kind) {
  if (coefficients_.rows() != coefficients_.cols() || coefficients_.rows() % 2 == 0) {
    throw Error(ErrorCode::invalid_size, "kernel must be square with odd size");
  }
  require_finite(coefficients_, "kernel coefficient is not finite");
  const double sum = coefficient_sum(coefficients_);
  const double expected = kind_ == KernelKind::lowpass ? 1.0 : 0.0;
  if (std::abs(sum - expected) > kKernelSumTolerance) {
    throw Error(ErrorCode::invalid_kernel,
                std::string(kind_ == KernelKind::lowpass ? "lowpass" : "highpass") +
                    " kernel sums to " + std::to_string(sum));
  }
}

std::pair<std::size_t, std::size_t> Kernel::support_extent() const noexcept {
  std::size_t r_min = size(), r_max = 0, c_min = size(), c_max = 0;
  bool any = false;
  for (std::size_t r = 0; r < size(); ++r) {
    for (std::size_t c = 0; c < size(); ++c) {
      if (coefficients_(r, c) != 0.0) {
        any = true;
        r_min = std::min(r_min, r);
        r_max = std::max(r_max, r);
        c_min = std::min(c_min, c);
        c_max = std::max(c_max, c);
      }
    }
  }
  if (!any) return {1, 1};
  return {r_max - r_min + 1, c_max - c_min + 1};
}

Kernel build_gaussian_kernel(std::size_t size, double sigma) {
  if (size == 0 || size % 2 == 0) {
    throw Error(ErrorCode::invalid_size, "gaussian size must be odd and positive");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::invalid_sigma, "gaussian sigma must be positive");
  }
  const auto half = static_cast<std::ptrdiff_t>(size / 2);
  RealMatrix g(size, size);
  double sum = 0.0;
  for (std::ptrdiff_t y = -half; y <= half; ++y) {
    for (std::ptrdiff_t x = -half; x <= half; ++x) {
      const double v = std::exp(-static_cast<double>(x * x + y * y) / (2.0 * sigma * sigma));
      g(static_cast<std::size_t>(y + half), static_cast<std::size_t>(x + half)) = v;
      sum += v;
    }
  }
  for (double& v : g.values()) v /= sum;
  return Kernel(std::move(g), KernelKind::lowpass);
}

Kernel build_highpass_kernel(const Kernel& lowpass) {
  if (lowpass.kind() != KernelKind::lowpass) {
    throw Error(ErrorCode::wrong_kind, "highpass construction needs a lowpass kernel");
  }
  RealMatrix h = lowpass.coefficients();
  for (double& v : h.values()) v = -v;
  const std::size_t c = lowpass.center();
  h(c, c) += 1.0;
  return Kernel(std::move(h), KernelKind::highpass);
}

Kernel transpose_kernel(const Kernel& k) {
  const std::size_t n = k.size();
  RealMatrix t(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) t(c, r) = k.coefficients()(r, c);
  }
  return Kernel(std::move(t), k.kind());
}

Kernel reflect_kernel(const Kernel& k) {
  const std::size_t n = k.size();
  RealMatrix f(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) f(n - 1 - r, n - 1 - c) = k.coefficients()(r, c);
  }
  return Kernel(std::move(f), k.kind());
}

Kernel second_difference_kernel() {
  RealMatrix d(3, 3, 0.0);
  d(0, 1) = 1.0;
  d(1, 1) = -2.0;
  d(2, 1) = 1.0;
  return Kernel(std::move(d), KernelKind::highpass);
}

}  // namespace gelinspect
