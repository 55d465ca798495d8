#include "gelinspect/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <string>

namespace gelinspect {

namespace {

// FFTW's planner is not re-entrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t n)
      : data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * std::max<std::size_t>(n, 1)))) {
    if (data_ == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* get() noexcept { return data_; }
  std::complex<double>* as_complex() noexcept { return reinterpret_cast<std::complex<double>*>(data_); }

 private:
  fftw_complex* data_;
};

class FftwPlan {
 public:
  FftwPlan(std::size_t rows, std::size_t cols, fftw_complex* data, int sign) {
    // FFTW_ESTIMATE keeps plan selection independent of timing, and the
    // buffers always come from fftw_malloc, so identical inputs take the
    // identical code path on every call.
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), data, data, sign,
                             FFTW_ESTIMATE);
    if (plan_ == nullptr) throw Error(ErrorCode::invalid_size, "FFTW could not plan the transform");
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  void execute() const noexcept { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

template <typename Fill>
ComplexMatrix transform(std::size_t rows, std::size_t cols, int sign, Fill&& fill) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::invalid_size, "transform needs a nonempty grid");
  }
  const std::size_t n = rows * cols;
  FftwBuffer buffer(n);
  FftwPlan plan(rows, cols, buffer.get(), sign);
  fill(buffer.as_complex());
  plan.execute();
  ComplexMatrix out(rows, cols);
  std::copy_n(buffer.as_complex(), n, out.values().begin());
  return out;
}

}  // namespace

ComplexMatrix dft2_forward(const RealMatrix& m) {
  return transform(m.rows(), m.cols(), FFTW_FORWARD, [&](std::complex<double>* dst) {
    const auto src = m.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = {src[i], 0.0};
  });
}

ComplexMatrix dft2_forward(const ComplexMatrix& m) {
  return transform(m.rows(), m.cols(), FFTW_FORWARD, [&](std::complex<double>* dst) {
    std::copy(m.values().begin(), m.values().end(), dst);
  });
}

ComplexMatrix dft2_inverse_complex(const ComplexMatrix& spectrum) {
  ComplexMatrix out = transform(spectrum.rows(), spectrum.cols(), FFTW_BACKWARD,
                                [&](std::complex<double>* dst) {
                                  std::copy(spectrum.values().begin(), spectrum.values().end(), dst);
                                });
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : out.values()) v *= scale;
  return out;
}

RealMatrix dft2_inverse(const ComplexMatrix& spectrum) {
  const ComplexMatrix c = dft2_inverse_complex(spectrum);
  RealMatrix out(c.rows(), c.cols());
  double max_real = 0.0;
  double max_imag = 0.0;
  const auto src = c.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i].real();
    max_real = std::max(max_real, std::abs(src[i].real()));
    max_imag = std::max(max_imag, std::abs(src[i].imag()));
  }
  if (!(max_imag <= kImaginaryResidueBound * std::max(1.0, max_real))) {
    throw Error(ErrorCode::imaginary_residue,
                "inverse transform is not real (imaginary part " + std::to_string(max_imag) + ")");
  }
  return out;
}

namespace {

void require_fits(const Kernel& k, std::size_t rows, std::size_t cols) {
  const auto [span_r, span_c] = k.support_extent();
  if (rows < span_r || cols < span_c) {
    throw Error(ErrorCode::image_smaller_than_kernel,
                std::to_string(rows) + "x" + std::to_string(cols) + " grid cannot hold a " +
                    std::to_string(span_r) + "x" + std::to_string(span_c) + " kernel support");
  }
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) noexcept {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

RealMatrix embed_kernel(const Kernel& k, std::size_t rows, std::size_t cols) {
  require_fits(k, rows, cols);
  RealMatrix grid(rows, cols, 0.0);
  const auto half = static_cast<std::ptrdiff_t>(k.center());
  for (std::ptrdiff_t dy = -half; dy <= half; ++dy) {
    for (std::ptrdiff_t dx = -half; dx <= half; ++dx) {
      const double v = k.tap(dy, dx);
      if (v != 0.0) grid(wrap(dy, rows), wrap(dx, cols)) += v;
    }
  }
  return grid;
}

RealMatrix circular_convolve(const RealMatrix& image, const Kernel& k) {
  require_fits(k, image.rows(), image.cols());
  const std::size_t rows = image.rows();
  const std::size_t cols = image.cols();
  const auto half = static_cast<std::ptrdiff_t>(k.center());

  struct Tap {
    std::ptrdiff_t dy, dx;
    double w;
  };
  std::vector<Tap> taps;
  for (std::ptrdiff_t dy = -half; dy <= half; ++dy) {
    for (std::ptrdiff_t dx = -half; dx <= half; ++dx) {
      if (k.tap(dy, dx) != 0.0) taps.push_back({dy, dx, k.tap(dy, dx)});
    }
  }

  RealMatrix out(rows, cols, 0.0);
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t x = 0; x < cols; ++x) {
      double acc = 0.0;
      for (const Tap& t : taps) {
        acc += t.w * image(wrap(static_cast<std::ptrdiff_t>(y) - t.dy, rows),
                           wrap(static_cast<std::ptrdiff_t>(x) - t.dx, cols));
      }
      out(y, x) = acc;
    }
  }
  return out;
}

}  // namespace gelinspect
