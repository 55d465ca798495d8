#pragma once

#include <cstddef>
#include <utility>

#include "gelinspect/matrix.hpp"

namespace gelinspect {

enum class KernelKind { lowpass, highpass };

/// Odd-sized square stencil. Tap (dy, dx) lives at coefficient
/// (center + dy, center + dx) with dy, dx in [-center, center].
///
/// Lowpass kernels sum to 1 and highpass kernels sum to 0, both within
/// kKernelSumTolerance; construction rejects anything else.
class Kernel {
 public:
  static constexpr double kKernelSumTolerance = 1e-12;

  /// Throws invalid_size for a non-square or even-sized matrix and
  /// invalid_kernel when the coefficient sum contradicts the kind.
  Kernel(RealMatrix coefficients, KernelKind kind);

  std::size_t size() const noexcept { return coefficients_.rows(); }
  std::size_t center() const noexcept { return size() / 2; }
  KernelKind kind() const noexcept { return kind_; }
  const RealMatrix& coefficients() const noexcept { return coefficients_; }

  /// Coefficient at signed offset (dy, dx) from the center tap.
  double tap(std::ptrdiff_t dy, std::ptrdiff_t dx) const noexcept {
    const auto c = static_cast<std::ptrdiff_t>(center());
    return coefficients_(static_cast<std::size_t>(c + dy), static_cast<std::size_t>(c + dx));
  }

  /// Height and width of the bounding box of nonzero taps. A grid must be at
  /// least this large for wrapped taps not to collide.
  std::pair<std::size_t, std::size_t> support_extent() const noexcept;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  RealMatrix coefficients_;
  KernelKind kind_;
};

/// Normalized size x size Gaussian, matching MATLAB's fspecial('gaussian').
Kernel build_gaussian_kernel(std::size_t size, double sigma);

/// delta - lowpass. Throws wrong_kind for a highpass argument.
Kernel build_highpass_kernel(const Kernel& lowpass);

Kernel transpose_kernel(const Kernel& k);

/// Point reflection k(-dy, -dx): the adjoint of circular convolution by k.
/// Coincides with transpose_kernel for the symmetric Gaussian highpass.
Kernel reflect_kernel(const Kernel& k);

/// 3x3 kernel whose middle column is the second difference [1, -2, 1]:
/// the vertical operator that reduces the 2D objective to the 1D
/// Hodrick-Prescott filter on an M x 1 image.
Kernel second_difference_kernel();

}  // namespace gelinspect
