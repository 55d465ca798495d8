#include "gelinspect/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gelinspect/kernel.hpp"
#include "gelinspect/spectral.hpp"

namespace gelinspect {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

bool inside(const RegionSpec& r, std::size_t rows, std::size_t cols) {
  return r.height > 0 && r.width > 0 && r.top <= rows && r.height <= rows - r.top && r.left <= cols &&
         r.width <= cols - r.left;
}

void paint(RealMatrix& canvas, const Shape& s) {
  const RegionSpec& g = s.geometry;
  for (std::size_t y = 0; y < g.height; ++y) {
    for (std::size_t x = 0; x < g.width; ++x) {
      if (s.kind == ShapeKind::triangle) {
        const double offset = std::abs(static_cast<double>(x) + 0.5 - g.width / 2.0);
        const double half = (static_cast<double>(y) + 0.5) * g.width / (2.0 * g.height);
        if (offset > half) continue;
      }
      canvas(g.top + y, g.left + x) = s.intensity;
    }
  }
}

// Same truncation radius (4 sigma) as common image libraries.
Kernel softening_kernel(double sigma) {
  const auto radius = static_cast<std::size_t>(std::ceil(4.0 * sigma));
  return build_gaussian_kernel(2 * radius + 1, sigma);
}

void require_sigma(double s, const char* what) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorCode::invalid_spec, what);
}

std::size_t image_index(const std::vector<BenchImage>& corpus, Scenario s, std::optional<int> q) {
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].scenario == s && corpus[i].quality == q) return i;
  }
  throw Error(ErrorCode::invalid_spec, "bench corpus lacks the " + to_string(s) + " image");
}

double fraction_in(const IndicatorMap& map, const RegionSpec& r) {
  return region_stats(map, {r}).front().white_fraction;
}

}  // namespace

void validate(const SceneSpec& spec) {
  if (spec.height == 0 || spec.width == 0) throw Error(ErrorCode::invalid_spec, "scene must be at least 1x1");
  if (!in_unit_interval(spec.background_intensity)) {
    throw Error(ErrorCode::invalid_spec, "background intensity must lie in [0,1]");
  }
  require_sigma(spec.edge_softness, "edge softness must be finite and nonnegative");
  for (const Shape& s : spec.shapes) {
    if (!in_unit_interval(s.intensity)) throw Error(ErrorCode::invalid_spec, "shape intensity must lie in [0,1]");
    if (!inside(s.geometry, spec.height, spec.width)) {
      throw Error(ErrorCode::invalid_spec, "shape leaves the canvas");
    }
  }
}

RealMatrix render_scene(const SceneSpec& spec) {
  validate(spec);
  RealMatrix canvas(spec.height, spec.width, spec.background_intensity);
  for (const Shape& s : spec.shapes) paint(canvas, s);
  if (spec.edge_softness > 0.0) {
    canvas = circular_convolve(canvas, softening_kernel(spec.edge_softness));
    // The blur is a convex combination; clamp away its round-off.
    for (double& v : canvas.values()) v = std::clamp(v, 0.0, 1.0);
  }
  return canvas;
}

RealMatrix standard_normal_field(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  constexpr double kScale = 0x1.0p-53;
  RealMatrix out(rows, cols);
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); i += 2) {
    const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * kScale;  // (0,1]
    const double u2 = static_cast<double>(gen() >> 11) * kScale;          // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    v[i] = r * std::cos(theta);
    if (i + 1 < v.size()) v[i + 1] = r * std::sin(theta);
  }
  return out;
}

GrayImage generate_unmodified(const SceneSpec& spec, double sigma) {
  require_sigma(sigma, "noise sigma must be finite and nonnegative");
  RealMatrix m = render_scene(spec);
  if (sigma > 0.0) {
    const RealMatrix noise = standard_normal_field(spec.height, spec.width, spec.seed);
    for (std::size_t i = 0; i < m.size(); ++i) m.values()[i] += sigma * noise.values()[i];
  }
  return GrayImage::clamped(std::move(m));
}

void validate(const ForgeryOp& op, std::size_t rows, std::size_t cols) {
  require_sigma(op.noise_sigma_fore, "foreground sigma must be finite and nonnegative");
  require_sigma(op.noise_sigma_back, "background sigma must be finite and nonnegative");
  require_inside(op.target_region, rows, cols);
  if (op.kind == ForgeryKind::copy_paste) {
    require_inside(op.source_region, rows, cols);
    if (op.source_region.height != op.target_region.height || op.source_region.width != op.target_region.width) {
      throw Error(ErrorCode::mismatched_regions, "copy-paste source and target differ in size");
    }
  } else if (!in_unit_interval(op.fill_intensity)) {
    throw Error(ErrorCode::invalid_spec, "fill intensity must lie in [0,1]");
  }
}

GrayImage apply_forgery(const GrayImage& image, const ForgeryOp& op, std::uint64_t seed) {
  validate(op, image.rows(), image.cols());
  RealMatrix m = image.matrix();
  const RegionSpec& t = op.target_region;
  auto in_target = [&](std::size_t y, std::size_t x) {
    return y >= t.top && y < t.top + t.height && x >= t.left && x < t.left + t.width;
  };
  if (op.kind == ForgeryKind::copy_paste) {
    const RealMatrix patch = extract_region(m, op.source_region);
    for (std::size_t y = 0; y < t.height; ++y) {
      for (std::size_t x = 0; x < t.width; ++x) m(t.top + y, t.left + x) = patch(y, x);
    }
    if (op.noise_sigma_fore > 0.0 || op.noise_sigma_back > 0.0) {
      const RealMatrix noise = standard_normal_field(m.rows(), m.cols(), seed);
      for (std::size_t y = 0; y < m.rows(); ++y) {
        for (std::size_t x = 0; x < m.cols(); ++x) {
          m(y, x) += (in_target(y, x) ? op.noise_sigma_fore : op.noise_sigma_back) * noise(y, x);
        }
      }
    }
  } else {
    const RealMatrix noise = op.noise_sigma_back > 0.0 ? standard_normal_field(m.rows(), m.cols(), seed)
                                                       : RealMatrix(m.rows(), m.cols(), 0.0);
    for (std::size_t y = t.top; y < t.top + t.height; ++y) {
      for (std::size_t x = t.left; x < t.left + t.width; ++x) {
        m(y, x) = op.fill_intensity + op.noise_sigma_back * noise(y, x);
      }
    }
  }
  return GrayImage::clamped(std::move(m));
}

std::vector<RegionStats> region_stats(const IndicatorMap& map, const std::vector<RegionSpec>& regions) {
  std::vector<RegionStats> out;
  out.reserve(regions.size());
  for (const RegionSpec& r : regions) {
    require_inside(r, map.rows(), map.cols());
    std::size_t ones = 0;
    for (std::size_t y = r.top; y < r.top + r.height; ++y) {
      for (std::size_t x = r.left; x < r.left + r.width; ++x) ones += map(y, x) != 0;
    }
    const double fraction = static_cast<double>(ones) / static_cast<double>(r.height * r.width);
    out.push_back(RegionStats{r, fraction, ones == 0});
  }
  return out;
}

int photoshop_to_ijg_quality(int photoshop_quality) {
  if (photoshop_quality < 0 || photoshop_quality > 12) {
    throw Error(ErrorCode::invalid_spec, "photoshop quality must lie in 0..12, got " + std::to_string(photoshop_quality));
  }
  return 60 + 3 * photoshop_quality;
}

std::vector<CompressedVariant> compression_sweep(const GrayImage& image, const std::vector<int>& qualities,
                                                 QualityScale scale) {
  std::vector<CompressedVariant> out;
  out.reserve(qualities.size());
  for (int q : qualities) {
    const int ijg = scale == QualityScale::photoshop ? photoshop_to_ijg_quality(q) : q;
    Bytes encoded = encode_jpeg_gray(image, ijg);
    GrayImage decoded = decode_image(encoded);
    const std::size_t n = encoded.size();
    out.push_back(CompressedVariant{q, ijg, n, std::move(encoded), std::move(decoded)});
  }
  return out;
}

BenchSuite default_bench_suite() {
  constexpr double kBackground = 0.6;
  constexpr double kShape = 0.5;
  constexpr double kBox = 0.55;
  constexpr std::size_t kBandCount = 7;
  const RegionSpec source{136, 40, 96, 112};
  const RegionSpec target{136, 360, 96, 112};

  BenchSuite s;
  for (std::size_t b = 0; b < kBandCount; ++b) s.bands.push_back(RegionSpec{40, 24 + 68 * b, 32, 48});

  auto motif = [&](const RegionSpec& box) {
    return std::vector<Shape>{
        Shape{ShapeKind::bounding_box, box, kBox},
        Shape{ShapeKind::triangle, RegionSpec{box.top + 8, box.left + 8, 88, 96}, kShape},
    };
  };
  SceneSpec base;
  base.height = 256;
  base.width = 512;
  base.background_intensity = kBackground;
  base.edge_softness = 2.0;
  for (const RegionSpec& b : s.bands) base.shapes.push_back(Shape{ShapeKind::rectangle_band, b, kShape});

  s.template_scene = base;
  for (const Shape& sh : motif(source)) s.template_scene.shapes.push_back(sh);
  s.unmodified_scene = s.template_scene;
  for (const Shape& sh : motif(target)) s.unmodified_scene.shapes.push_back(sh);

  s.copy_paste = ForgeryOp{ForgeryKind::copy_paste, source, target, 0.0, 0.01, 0.1};

  constexpr std::size_t kMargin = 8;
  s.erased_bands = {3, 4};
  for (std::size_t i : s.erased_bands) {
    const RegionSpec& b = s.bands[i];
    const RegionSpec area{b.top - kMargin, b.left - kMargin, b.height + 2 * kMargin, b.width + 2 * kMargin};
    s.erasures.push_back(ForgeryOp{ForgeryKind::erase, RegionSpec{}, area, kBackground, 0.0, 0.0});
  }

  s.foreground = target;
  s.background = RegionSpec{136, 200, 96, 112};
  s.params.gamma = 0.03;
  s.erasure_gammas = {0.0001, 0.01, 0.1, 0.5};
  s.qualities = {10, 7, 5, 3, 1};
  return s;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::unmodified: return "unmodified";
    case Scenario::copy_paste: return "copy_paste";
    case Scenario::erasure: return "erasure";
  }
  return "unmodified";
}

std::vector<BenchImage> generate_bench_corpus(const BenchSuite& suite, std::uint64_t seed) {
  SceneSpec unmodified_spec = suite.unmodified_scene;
  unmodified_spec.seed = seed;
  const GrayImage unmodified = generate_unmodified(unmodified_spec, suite.unmodified_sigma);

  SceneSpec template_spec = suite.template_scene;
  template_spec.seed = seed;
  const GrayImage pasted =
      apply_forgery(generate_unmodified(template_spec, 0.0), suite.copy_paste, seed + 1);

  GrayImage erased = quantize8(generate_unmodified(unmodified_spec, suite.erasure_base_sigma));
  for (std::size_t i = 0; i < suite.erasures.size(); ++i) {
    erased = apply_forgery(erased, suite.erasures[i], seed + 2 + i);
  }

  std::vector<BenchImage> corpus;
  const std::pair<Scenario, const GrayImage*> sources[] = {
      {Scenario::unmodified, &unmodified}, {Scenario::copy_paste, &pasted}, {Scenario::erasure, &erased}};
  for (const auto& [scenario, image] : sources) {
    GrayImage lossless = quantize8(*image);
    Bytes png = encode_png_gray8(lossless.matrix());
    corpus.push_back(BenchImage{scenario, std::nullopt, 0, std::move(lossless), std::move(png)});
  }
  for (const auto& [scenario, image] : sources) {
    for (CompressedVariant& v : compression_sweep(*image, suite.qualities, suite.quality_scale)) {
      corpus.push_back(BenchImage{scenario, v.quality, v.ijg_quality, std::move(v.decoded), std::move(v.encoded)});
    }
  }
  return corpus;
}

BenchTable run_bench_sweep(const BenchSuite& suite, const std::vector<BenchImage>& corpus) {
  validate(suite.params);
  if (suite.erasure_gammas.empty()) throw Error(ErrorCode::invalid_spec, "bench suite needs erasure gammas");
  const auto [gamma_lo, gamma_hi] = std::minmax_element(suite.erasure_gammas.begin(), suite.erasure_gammas.end());

  BenchTable table;
  BenchVerdicts& v = table.verdicts;
  v.worst_homogeneity = 0.0;
  v.worst_contrast = std::numeric_limits<double>::infinity();
  v.gamma_monotone = true;

  std::vector<NamedRegion> regions{{"foreground", suite.foreground}, {"background", suite.background}};
  for (std::size_t b = 0; b < suite.bands.size(); ++b) {
    regions.push_back({"band_" + std::to_string(b), suite.bands[b]});
  }

  for (const BenchImage& img : corpus) {
    const InquiryResult res = run_inquiry(img.image, suite.params);
    for (const NamedRegion& r : regions) {
      const RegionStats st = region_stats(res.indicator, {r.region}).front();
      table.rows.push_back(BenchRow{img.scenario, img.quality, suite.params.gamma, r.name, st.white_fraction,
                                    st.empty_zone});
    }

    const IndicatorMap loose = threshold_binarize(res.normalized, *gamma_lo);
    const IndicatorMap strict = threshold_binarize(res.normalized, *gamma_hi);
    for (std::size_t i = 0; i < loose.size(); ++i) {
      if (strict.values()[i] > loose.values()[i]) v.gamma_monotone = false;
    }

    if (img.quality && img.scenario != Scenario::erasure) {
      const double fg = fraction_in(res.indicator, suite.foreground);
      const double bg = fraction_in(res.indicator, suite.background);
      if (img.scenario == Scenario::unmodified) {
        v.worst_homogeneity = std::max(v.worst_homogeneity, relative_difference(fg, bg));
      } else {
        v.worst_contrast = std::min(v.worst_contrast, density_contrast(fg, bg));
      }
    }
  }

  const BenchImage& erased = corpus[image_index(corpus, Scenario::erasure, std::nullopt)];
  const RealMatrix normalized = run_inquiry(erased.image, suite.params).normalized;
  v.erasure_detected = true;
  for (double gamma : suite.erasure_gammas) {
    const IndicatorMap map = threshold_binarize(normalized, gamma);
    for (std::size_t b = 0; b < suite.bands.size(); ++b) {
      const RegionStats st = region_stats(map, {suite.bands[b]}).front();
      table.rows.push_back(BenchRow{Scenario::erasure, std::nullopt, gamma, "band_" + std::to_string(b),
                                    st.white_fraction, st.empty_zone});
      const bool expected_empty =
          std::find(suite.erased_bands.begin(), suite.erased_bands.end(), b) != suite.erased_bands.end();
      if (st.empty_zone != expected_empty) v.erasure_detected = false;
    }
  }
  return table;
}

double relative_difference(double a, double b) {
  const double hi = std::max(a, b);
  return hi == 0.0 ? 0.0 : std::abs(a - b) / hi;
}

double density_contrast(double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (hi == 0.0) return 1.0;
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace gelinspect
