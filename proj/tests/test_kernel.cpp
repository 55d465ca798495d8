#include <doctest.h>

#include <cmath>

#include "gelinspect/kernel.hpp"

using namespace gelinspect;

namespace {

// exp(-(x^2+y^2)/(2 s^2)) on the 3x3 grid, normalized; written out before
// looking at the library output.
double gaussian3_reference(int dy, int dx, double s) {
  double sum = 0.0;
  for (int y = -1; y <= 1; ++y) {
    for (int x = -1; x <= 1; ++x) sum += std::exp(-(x * x + y * y) / (2.0 * s * s));
  }
  return std::exp(-(dx * dx + dy * dy) / (2.0 * s * s)) / sum;
}

double coefficient_sum(const Kernel& k) {
  double s = 0.0;
  for (double v : k.coefficients().values()) s += v;
  return s;
}

}  // namespace

TEST_CASE("gaussian 3x3 sigma 1 matches the direct formula") {
  CHECK(gaussian3_reference(0, 0, 1.0) == doctest::Approx(0.204180).epsilon(1e-5));
  CHECK(gaussian3_reference(0, 1, 1.0) == doctest::Approx(0.123841).epsilon(1e-5));
  CHECK(gaussian3_reference(1, 1, 1.0) == doctest::Approx(0.075114).epsilon(1e-5));

  const Kernel g = build_gaussian_kernel(3, 1.0);
  CHECK(g.kind() == KernelKind::lowpass);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) CHECK(g.tap(dy, dx) == doctest::Approx(gaussian3_reference(dy, dx, 1.0)).epsilon(1e-14));
  }
  CHECK(std::abs(coefficient_sum(g) - 1.0) <= 1e-12);
}

TEST_CASE("gaussian degenerate sizes") {
  const Kernel one = build_gaussian_kernel(1, 1.0);
  CHECK(one.size() == 1);
  CHECK(one.tap(0, 0) == 1.0);

  const Kernel flat = build_gaussian_kernel(3, 1e6);
  for (double v : flat.coefficients().values()) CHECK(v == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("gaussian rejects bad arguments") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::invalid_spec;
  };
  CHECK(code_of([] { build_gaussian_kernel(4, 1.0); }) == ErrorCode::invalid_size);
  CHECK(code_of([] { build_gaussian_kernel(0, 1.0); }) == ErrorCode::invalid_size);
  CHECK(code_of([] { build_gaussian_kernel(3, 0.0); }) == ErrorCode::invalid_sigma);
  CHECK(code_of([] { build_gaussian_kernel(3, -1.0); }) == ErrorCode::invalid_sigma);
  CHECK(code_of([] { build_gaussian_kernel(3, std::nan("")); }) == ErrorCode::invalid_sigma);
}

TEST_CASE("highpass is delta minus lowpass") {
  const Kernel f = build_gaussian_kernel(3, 1.0);
  const Kernel h = build_highpass_kernel(f);
  CHECK(h.kind() == KernelKind::highpass);
  CHECK(h.tap(0, 0) == doctest::Approx(1.0 - 0.204180).epsilon(1e-5));
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dy != 0 || dx != 0) CHECK(h.tap(dy, dx) == -f.tap(dy, dx));
    }
  }
  CHECK(std::abs(coefficient_sum(h)) <= 1e-12);

  const Kernel zero = build_highpass_kernel(build_gaussian_kernel(1, 2.0));
  CHECK(zero.tap(0, 0) == 0.0);

  CHECK_THROWS_AS(build_highpass_kernel(h), Error);
  for (std::size_t size : {1u, 3u, 5u, 7u}) {
    for (double sigma : {0.3, 1.0, 2.5}) {
      CHECK(std::abs(coefficient_sum(build_highpass_kernel(build_gaussian_kernel(size, sigma)))) <= 1e-12);
    }
  }
}

TEST_CASE("kernel construction validates shape and sum") {
  CHECK_THROWS_AS(Kernel(RealMatrix(2, 2, 0.25), KernelKind::lowpass), Error);
  CHECK_THROWS_AS(Kernel(RealMatrix(3, 1, 1.0 / 3), KernelKind::lowpass), Error);
  CHECK_THROWS_AS(Kernel(RealMatrix(3, 3, 0.1), KernelKind::highpass), Error);
  CHECK_THROWS_AS(Kernel(RealMatrix(3, 3, 0.0), KernelKind::lowpass), Error);
  CHECK_NOTHROW(Kernel(RealMatrix(3, 3, 0.0), KernelKind::highpass));
}

TEST_CASE("transpose examples") {
  const Kernel h = build_highpass_kernel(build_gaussian_kernel(3, 1.0));
  CHECK(transpose_kernel(h) == h);

  RealMatrix m(3, 3, 0.0);
  m(0, 1) = 1.0;
  const Kernel k(m, KernelKind::lowpass);
  const Kernel t = transpose_kernel(k);
  RealMatrix expected(3, 3, 0.0);
  expected(1, 0) = 1.0;
  CHECK(t.coefficients() == expected);
  CHECK(transpose_kernel(t) == k);
}

TEST_CASE("reflection is the point mirror and an involution") {
  RealMatrix m(3, 3, 0.0);
  m(0, 1) = 1.0;
  m(1, 1) = -1.0;
  const Kernel k(m, KernelKind::highpass);
  const Kernel r = reflect_kernel(k);
  CHECK(r.tap(1, 0) == 1.0);
  CHECK(r.tap(-1, 0) == 0.0);
  CHECK(reflect_kernel(r) == k);
  const Kernel h = build_highpass_kernel(build_gaussian_kernel(5, 1.3));
  CHECK(reflect_kernel(h) == transpose_kernel(h));
}

TEST_CASE("second difference kernel and support extent") {
  const Kernel d = second_difference_kernel();
  CHECK(d.kind() == KernelKind::highpass);
  CHECK(d.tap(-1, 0) == 1.0);
  CHECK(d.tap(0, 0) == -2.0);
  CHECK(d.tap(1, 0) == 1.0);
  CHECK(d.tap(0, 1) == 0.0);
  CHECK(d.support_extent() == std::pair<std::size_t, std::size_t>{3, 1});

  CHECK(build_gaussian_kernel(5, 1.0).support_extent() == std::pair<std::size_t, std::size_t>{5, 5});
  CHECK(Kernel(RealMatrix(3, 3, 0.0), KernelKind::highpass).support_extent() ==
        std::pair<std::size_t, std::size_t>{1, 1});
}
