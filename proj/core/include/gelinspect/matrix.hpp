#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gelinspect/error.hpp"

namespace gelinspect {

/// Dense row-major matrix. Dimensions are fixed at construction.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorCode::dimension_mismatch, "value count does not match rows*cols");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  // Views into a temporary would dangle (e.g. `for (v : f().values())`), so
  // the rvalue overloads are deleted.
  std::span<T> values() & noexcept { return data_; }
  std::span<const T> values() const& noexcept { return data_; }
  void values() && = delete;
  std::span<T> row(std::size_t r) & noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const& noexcept { return {data_.data() + r * cols_, cols_}; }
  void row(std::size_t) && = delete;

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;

/// Throws nonfinite_input if any entry is NaN or infinite.
void require_finite(const RealMatrix& m, const char* what);

/// Throws dimension_mismatch unless both matrices have identical shape.
template <typename A, typename B>
void require_same_shape(const Matrix<A>& a, const Matrix<B>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch, what);
  }
}

/// Grayscale intensity image with every pixel finite and inside [0,1].
class GrayImage {
 public:
  /// Validates shape and range; throws invalid_size, nonfinite_input or out_of_range_input.
  explicit GrayImage(RealMatrix pixels);
  GrayImage(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const noexcept { return pixels_.rows(); }
  std::size_t cols() const noexcept { return pixels_.cols(); }
  double operator()(std::size_t r, std::size_t c) const noexcept { return pixels_(r, c); }
  const RealMatrix& matrix() const noexcept { return pixels_; }

  /// Clamps every entry of m into [0,1] (NaN is rejected) and wraps it.
  static GrayImage clamped(RealMatrix m);

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  RealMatrix pixels_;
};

/// Binary map; entries are 0 or 1.
using IndicatorMap = Matrix<std::uint8_t>;

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

using OverlayImage = Matrix<Rgb>;

}  // namespace gelinspect
