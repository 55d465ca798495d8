#pragma once

// Independent reference implementations. Nothing here calls into the FFT
// path of the library; the oracles are direct sums and dense eliminations.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "gelinspect/kernel.hpp"
#include "gelinspect/matrix.hpp"

namespace testsupport {

using gelinspect::ComplexMatrix;
using gelinspect::Kernel;
using gelinspect::RealMatrix;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline RealMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = 0.0, double hi = 1.0) {
  RealMatrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(lo, hi);
  return m;
}

inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  if (!a.same_shape(b)) throw std::logic_error("shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

/// out(y,x) = sum over taps k(dy,dx) * img(y - dy, x - dx), wrapped.
inline RealMatrix brute_convolve(const RealMatrix& img, const Kernel& k) {
  const auto c = static_cast<std::ptrdiff_t>(k.center());
  RealMatrix out(img.rows(), img.cols(), 0.0);
  for (std::size_t y = 0; y < img.rows(); ++y) {
    for (std::size_t x = 0; x < img.cols(); ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t dy = -c; dy <= c; ++dy) {
        for (std::ptrdiff_t dx = -c; dx <= c; ++dx) {
          acc += k.tap(dy, dx) * img(wrap(static_cast<std::ptrdiff_t>(y) - dy, img.rows()),
                                     wrap(static_cast<std::ptrdiff_t>(x) - dx, img.cols()));
        }
      }
      out(y, x) = acc;
    }
  }
  return out;
}

/// k(-dy,-dx), built tap by tap.
inline Kernel brute_reflect(const Kernel& k) {
  const std::size_t n = k.size();
  RealMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = k.coefficients()(n - 1 - i, n - 1 - j);
  }
  return Kernel(r, k.kind());
}

/// J + lambda * h^t * (h * J) with the oracle convolution.
inline RealMatrix brute_forward(const RealMatrix& j, const Kernel& h, double lambda) {
  const RealMatrix hj = brute_convolve(j, h);
  const RealMatrix hthj = brute_convolve(hj, brute_reflect(h));
  RealMatrix out = j;
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += lambda * hthj.values()[i];
  return out;
}

/// ||I - J||^2 + lambda ||h * J||^2 with the oracle convolution.
inline double brute_objective(const RealMatrix& image, const RealMatrix& j, const Kernel& h, double lambda) {
  const RealMatrix hj = brute_convolve(j, h);
  double fit = 0.0, smooth = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double d = image.values()[i] - j.values()[i];
    fit += d * d;
    smooth += hj.values()[i] * hj.values()[i];
  }
  return fit + lambda * smooth;
}

/// O((MN)^2) definition of the unnormalized forward DFT.
inline ComplexMatrix naive_dft2(const RealMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  ComplexMatrix out(rows, cols);
  for (std::size_t u = 0; u < rows; ++u) {
    for (std::size_t v = 0; v < cols; ++v) {
      std::complex<double> acc = 0.0;
      for (std::size_t y = 0; y < rows; ++y) {
        for (std::size_t x = 0; x < cols; ++x) {
          const double phase = -2.0 * std::numbers::pi *
                               (static_cast<double>(u * y % rows) / static_cast<double>(rows) +
                                static_cast<double>(v * x % cols) / static_cast<double>(cols));
          acc += m(y, x) * std::polar(1.0, phase);
        }
      }
      out(u, v) = acc;
    }
  }
  return out;
}

/// Gaussian elimination with partial pivoting on a dense copy of a.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Trend solving (I + lambda D^t D) tau = y for the circulant second
/// difference D (row t: 1 at t-1, -2 at t, 1 at t+1, wrapped).
inline std::vector<double> hp_dense_oracle(const std::vector<double>& y, double lambda) {
  const std::size_t n = y.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t t = 0; t < n; ++t) {
    d[t][wrap(static_cast<std::ptrdiff_t>(t) - 1, n)] += 1.0;
    d[t][t] += -2.0;
    d[t][(t + 1) % n] += 1.0;
  }
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double dtd = 0.0;
      for (std::size_t t = 0; t < n; ++t) dtd += d[t][i] * d[t][j];
      a[i][j] += lambda * dtd;
    }
  }
  return dense_solve(a, y);
}

inline double relative_error(const std::vector<double>& got, const std::vector<double>& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    num += (got[i] - want[i]) * (got[i] - want[i]);
    den += want[i] * want[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

/// Random perturbation scaled to the given Frobenius norm.
inline RealMatrix random_perturbation(std::size_t rows, std::size_t cols, double norm, Rng& rng) {
  RealMatrix e(rows, cols);
  double sq = 0.0;
  for (double& v : e.values()) {
    v = rng.normal();
    sq += v * v;
  }
  const double scale = norm / std::sqrt(sq);
  for (double& v : e.values()) v *= scale;
  return e;
}

}  // namespace testsupport
