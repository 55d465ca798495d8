#include <doctest.h>

#include "gelinspect/spectral.hpp"
#include "support.hpp"

using namespace gelinspect;
using namespace testsupport;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

const Kernel& default_h() {
  static const Kernel h = build_highpass_kernel(build_gaussian_kernel(3, 1.0));
  return h;
}

}  // namespace

TEST_CASE("dft of a constant has only the DC bin") {
  const RealMatrix c(5, 7, 0.3);
  const ComplexMatrix s = dft2_forward(c);
  CHECK(s(0, 0).real() == doctest::Approx(0.3 * 35).epsilon(1e-14));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(std::abs(s.values()[i]) < 1e-12);
}

TEST_CASE("dft of the origin impulse is all ones") {
  RealMatrix d(4, 4, 0.0);
  d(0, 0) = 1.0;
  const ComplexMatrix s = dft2_forward(d);
  for (const auto& v : s.values()) CHECK(std::abs(v - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("dft matches the direct definition on odd and degenerate sizes") {
  Rng rng(11);
  for (auto [r, c] : {std::pair{1, 1}, {1, 5}, {7, 1}, {3, 5}, {6, 9}, {11, 13}}) {
    const RealMatrix m = random_matrix(r, c, rng, -1.0, 1.0);
    CHECK(max_abs_diff(dft2_forward(m), naive_dft2(m)) < 1e-10);
  }
}

TEST_CASE("inverse undoes forward") {
  Rng rng(12);
  for (auto [r, c] : {std::pair{1, 1}, {2, 3}, {17, 31}, {64, 48}, {127, 5}}) {
    const RealMatrix m = random_matrix(r, c, rng);
    CHECK(max_abs_diff(dft2_inverse(dft2_forward(m)), m) < 1e-10);
  }
}

TEST_CASE("inverse refuses a spectrum with a real imaginary part") {
  ComplexMatrix s(4, 4, 0.0);
  s(0, 1) = 1.0;  // no conjugate partner at (0,3)
  try {
    (void)dft2_inverse(s);
    FAIL("expected imaginary_residue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::imaginary_residue);
  }
  CHECK(dft2_inverse_complex(s)(0, 1).imag() != 0.0);
}

TEST_CASE("kernel embedding wraps negative offsets") {
  const Kernel delta = build_gaussian_kernel(1, 1.0);
  const RealMatrix e = embed_kernel(delta, 4, 4);
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(e.values()[i] == (i == 0 ? 1.0 : 0.0));

  const Kernel& h = default_h();
  const RealMatrix eh = embed_kernel(h, 8, 8);
  CHECK(eh(7, 7) == h.tap(-1, -1));
  CHECK(eh(0, 0) == h.tap(0, 0));
  CHECK(eh(0, 1) == h.tap(0, 1));
  CHECK(eh(1, 7) == h.tap(1, -1));
  CHECK(eh(3, 3) == 0.0);
}

TEST_CASE("embedding needs room for the kernel support") {
  CHECK_THROWS_AS(embed_kernel(default_h(), 2, 8), Error);
  // Column kernel fits a single-column grid.
  CHECK_NOTHROW(embed_kernel(second_difference_kernel(), 5, 1));
  try {
    (void)embed_kernel(second_difference_kernel(), 2, 1);
    FAIL("expected image_smaller_than_kernel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::image_smaller_than_kernel);
  }
}

TEST_CASE("circular convolution matches the nested-loop oracle") {
  Rng rng(13);
  const RealMatrix img = random_matrix(8, 8, rng);
  CHECK(max_abs_diff(circular_convolve(img, default_h()), brute_convolve(img, default_h())) < 1e-14);

  RealMatrix asym(3, 3);
  for (double& v : asym.values()) v = rng.uniform(-1, 1);
  double s = 0.0;
  for (double v : asym.values()) s += v;
  asym(1, 1) -= s;
  const Kernel k(asym, KernelKind::highpass);
  const RealMatrix odd = random_matrix(5, 9, rng);
  CHECK(max_abs_diff(circular_convolve(odd, k), brute_convolve(odd, k)) < 1e-14);
}

TEST_CASE("convolution identities") {
  Rng rng(14);
  const RealMatrix img = random_matrix(6, 10, rng);
  CHECK(circular_convolve(img, build_gaussian_kernel(1, 1.0)) == img);
  const RealMatrix flat(9, 9, 0.42);
  const RealMatrix out = circular_convolve(flat, default_h());
  for (double v : out.values()) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("convolution theorem with the embedded kernel") {
  Rng rng(15);
  for (auto [r, c] : {std::pair{8, 8}, {7, 13}, {16, 5}}) {
    const RealMatrix img = random_matrix(r, c, rng);
    const ComplexMatrix fi = dft2_forward(img);
    const ComplexMatrix fk = dft2_forward(embed_kernel(default_h(), r, c));
    ComplexMatrix prod(r, c);
    for (std::size_t i = 0; i < prod.size(); ++i) prod.values()[i] = fi.values()[i] * fk.values()[i];
    CHECK(max_abs_diff(dft2_inverse(prod), brute_convolve(img, default_h())) < 1e-12);
  }
}
