#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gelinspect/forensics.hpp"
#include "support.hpp"

using namespace gelinspect;
using namespace testsupport;

namespace {

struct Scan {
  std::size_t dy = 0, dx = 0;
  double mse = 0.0;
};

// Rescans every offset with a plain loop.
Scan brute_best(const RealMatrix& t, const RealMatrix& s) {
  Scan best{0, 0, std::numeric_limits<double>::infinity()};
  for (std::size_t dy = 0; dy + t.rows() <= s.rows(); ++dy) {
    for (std::size_t dx = 0; dx + t.cols() <= s.cols(); ++dx) {
      double acc = 0.0;
      for (std::size_t y = 0; y < t.rows(); ++y) {
        for (std::size_t x = 0; x < t.cols(); ++x) {
          const double d = t(y, x) - s(dy + y, dx + x);
          acc += d * d;
        }
      }
      acc /= static_cast<double>(t.size());
      if (acc < best.mse) best = {dy, dx, acc};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("region parsing") {
  CHECK(parse_region("1,2,3,4") == RegionSpec{1, 2, 3, 4});
  CHECK(parse_region(" 0, 0 ,10,20") == RegionSpec{0, 0, 10, 20});
  for (const char* bad : {"", "1,2,3", "1,2,3,4,5", "a,2,3,4", "-1,2,3,4", "1,2,0,4", "1.5,2,3,4"}) {
    try {
      (void)parse_region(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_spec);
    }
  }
}

TEST_CASE("region bounds and extraction") {
  Rng rng(41);
  const RealMatrix m = random_matrix(6, 8, rng);
  const RealMatrix crop = extract_region(m, {2, 3, 3, 4});
  CHECK(crop.rows() == 3);
  CHECK(crop(0, 0) == m(2, 3));
  CHECK(crop(2, 3) == m(4, 6));
  CHECK_NOTHROW(require_inside({0, 0, 6, 8}, 6, 8));
  for (RegionSpec r : {RegionSpec{0, 0, 7, 8}, RegionSpec{5, 0, 2, 1}, RegionSpec{0, 8, 1, 1}}) {
    try {
      require_inside(r, 6, 8);
      FAIL("accepted region");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::out_of_bounds);
    }
  }
}

TEST_CASE("psnr formula") {
  CHECK(std::isinf(psnr_from_mse(0.0)));
  CHECK(psnr_from_mse(0.01) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(psnr_from_mse(1.0) == 0.0);
}

TEST_CASE("exact clone gives the infinity sentinel") {
  Rng rng(42);
  const GrayImage a(random_matrix(9, 13, rng));
  const PsnrMatch m = template_match_psnr(a, a);
  CHECK(m.dy == 0);
  CHECK(m.dx == 0);
  CHECK(m.mse == 0.0);
  CHECK(m.exact_match());
  CHECK(std::isinf(m.psnr_db));
}

TEST_CASE("constant offset of 0.1 is 20 dB") {
  Rng rng(43);
  const RealMatrix search = random_matrix(20, 20, rng, 0.0, 0.9);
  RealMatrix templ = extract_region(search, {5, 7, 6, 8});
  for (double& v : templ.values()) v += 0.1;
  const PsnrMatch m = template_match_psnr(GrayImage(templ), GrayImage(search));
  CHECK(m.dy == 5);
  CHECK(m.dx == 7);
  CHECK(m.mse == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(m.psnr_db == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("ties go to the first offset in row-major order") {
  const PsnrMatch m = template_match_psnr(RealMatrix(2, 2, 0.5), RealMatrix(5, 6, 0.5));
  CHECK(m.dy == 0);
  CHECK(m.dx == 0);
}

TEST_CASE("matching agrees with an exhaustive rescan") {
  Rng rng(44);
  for (int trial = 0; trial < 25; ++trial) {
    const RealMatrix s = random_matrix(rng.index(4, 15), rng.index(4, 15), rng);
    const RealMatrix t = random_matrix(rng.index(1, s.rows()), rng.index(1, s.cols()), rng);
    const PsnrMatch m = template_match_psnr(t, s);
    const Scan b = brute_best(t, s);
    CHECK(static_cast<std::size_t>(m.dy) == b.dy);
    CHECK(static_cast<std::size_t>(m.dx) == b.dx);
    CHECK(m.mse == doctest::Approx(b.mse).epsilon(1e-12));
  }
}

TEST_CASE("template larger than the search window") {
  try {
    (void)template_match_psnr(RealMatrix(4, 2, 0.0), RealMatrix(3, 9, 0.0));
    FAIL("expected template_too_large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::template_too_large);
  }
}

TEST_CASE("noisier clones score lower psnr") {
  Rng rng(45);
  const std::vector<double> sigmas{0.01, 0.03, 0.1};
  std::vector<std::vector<double>> scores(sigmas.size());
  for (int seed = 0; seed < 15; ++seed) {
    const RealMatrix band = random_matrix(12, 20, rng, 0.2, 0.8);
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      RealMatrix clone = band;
      for (double& v : clone.values()) v = std::clamp(v + sigmas[k] * rng.normal(), 0.0, 1.0);
      scores[k].push_back(template_match_psnr(band, clone).psnr_db);
    }
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  CHECK(median(scores[0]) > median(scores[1]));
  CHECK(median(scores[1]) > median(scores[2]));
}
