#pragma once

#include <cstddef>

#include "gelinspect/kernel.hpp"
#include "gelinspect/matrix.hpp"

namespace gelinspect {

/// Largest imaginary part (relative to max(1, max |real part|)) that
/// dft2_inverse silently discards.
inline constexpr double kImaginaryResidueBound = 1e-10;

/// Unnormalized forward 2D DFT of the exact M x N grid (no padding):
///   X(u,v) = sum_{y,x} m(y,x) exp(-2 pi i (u y / M + v x / N)).
ComplexMatrix dft2_forward(const RealMatrix& m);
ComplexMatrix dft2_forward(const ComplexMatrix& m);

/// Inverse with the 1/(MN) factor, keeping the complex result.
ComplexMatrix dft2_inverse_complex(const ComplexMatrix& spectrum);

/// Inverse with the 1/(MN) factor. The spectrum must be conjugate-symmetric;
/// throws imaginary_residue if the result is not real to kImaginaryResidueBound.
RealMatrix dft2_inverse(const ComplexMatrix& spectrum);

/// Places k on a rows x cols grid with the center tap at (0,0) and negative
/// offsets wrapped to the far border. Throws image_smaller_than_kernel when
/// the nonzero taps would collide after wrapping.
RealMatrix embed_kernel(const Kernel& k, std::size_t rows, std::size_t cols);

/// Circular convolution out(p) = sum_t k(t) * image(p - t), indices taken
/// modulo the image dimensions. Computed directly in the spatial domain.
RealMatrix circular_convolve(const RealMatrix& image, const Kernel& k);

}  // namespace gelinspect
