#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gelinspect/forensics.hpp"
#include "gelinspect/image_io.hpp"
#include "gelinspect/inquiry.hpp"
#include "gelinspect/matrix.hpp"

namespace gelinspect {

enum class ShapeKind { rectangle_band, triangle, bounding_box };

/// A filled shape. For a triangle the geometry is its bounding rectangle and
/// the apex sits at the top center: row y covers the columns x with
/// |x + 0.5 - width/2| <= (y + 0.5) * width / (2 * height).
struct Shape {
  ShapeKind kind = ShapeKind::rectangle_band;
  RegionSpec geometry;
  double intensity = 0.0;
};

struct SceneSpec {
  std::size_t height = 256;
  std::size_t width = 512;
  double background_intensity = 0.6;
  /// Standard deviation (pixels) of the Gaussian that softens shape edges;
  /// 0 renders hard edges.
  double edge_softness = 0.0;
  std::vector<Shape> shapes;
  std::uint64_t seed = 0;
};

/// Throws invalid_spec when shapes leave the canvas or intensities leave [0,1].
void validate(const SceneSpec& spec);

/// Noiseless rendering: shapes are painted in order over the background,
/// then blurred (circularly) by edge_softness.
RealMatrix render_scene(const SceneSpec& spec);

/// Row-major i.i.d. standard normal samples from a 64-bit Mersenne Twister
/// (Box-Muller on 53-bit uniforms), identical on every conforming platform.
RealMatrix standard_normal_field(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// render_scene + sigma * noise(spec.seed), clamped to [0,1].
GrayImage generate_unmodified(const SceneSpec& spec, double sigma);

enum class ForgeryKind { copy_paste, erase };

struct ForgeryOp {
  ForgeryKind kind = ForgeryKind::copy_paste;
  RegionSpec source_region;  // copy_paste only
  RegionSpec target_region;
  double fill_intensity = 0.0;  // erase only
  double noise_sigma_fore = 0.0;
  double noise_sigma_back = 0.0;
};

void validate(const ForgeryOp& op, std::size_t rows, std::size_t cols);

/// copy_paste: the target is overwritten with the source pixels, then one
/// noise field drawn from `seed` is added with sigma_fore inside the target
/// and sigma_back everywhere else (the input is expected to be noiseless).
/// erase: the target is set to fill_intensity and sigma_back noise from
/// `seed` is re-applied inside it; pixels outside are untouched.
/// Results are clamped to [0,1].
GrayImage apply_forgery(const GrayImage& image, const ForgeryOp& op, std::uint64_t seed);

struct RegionStats {
  RegionSpec region;
  double white_fraction = 0.0;
  bool empty_zone = false;
};

std::vector<RegionStats> region_stats(const IndicatorMap& map,
                                      const std::vector<RegionSpec>& regions);

/// Quality scale used to interpret compression settings.
enum class QualityScale {
  ijg,        // libjpeg 1..100
  photoshop,  // 0..12, mapped onto libjpeg by photoshop_to_ijg_quality
};

/// 60 + 3q for q in 0..12. Throws invalid_spec outside that range.
int photoshop_to_ijg_quality(int photoshop_quality);

struct CompressedVariant {
  int quality = 0;      // as requested, on the caller's scale
  int ijg_quality = 0;  // what the encoder received
  std::size_t encoded_bytes = 0;
  Bytes encoded;
  GrayImage decoded;
};

/// Encodes with baseline JPEG at each quality and decodes the result back,
/// preserving input order.
std::vector<CompressedVariant> compression_sweep(const GrayImage& image,
                                                 const std::vector<int>& qualities,
                                                 QualityScale scale = QualityScale::ijg);

struct NamedRegion {
  std::string name;
  RegionSpec region;
};

/// Full description of the synthetic control group: scenes, forgeries,
/// evaluation regions and the thresholds the reproduction checks against.
struct BenchSuite {
  static constexpr int kSchemaVersion = 1;

  SceneSpec unmodified_scene;  // bands + motif at source and target
  SceneSpec template_scene;    // bands + motif at source only
  double unmodified_sigma = 0.01;
  ForgeryOp copy_paste;
  std::vector<ForgeryOp> erasures;
  double erasure_base_sigma = 0.01;
  std::vector<std::size_t> erased_bands;  // indices into `bands`

  RegionSpec foreground;
  RegionSpec background;
  std::vector<RegionSpec> bands;

  InquiryParams params;  // gamma here is the bench threshold
  std::vector<double> erasure_gammas;
  std::vector<int> qualities;
  QualityScale quality_scale = QualityScale::photoshop;
  double contrast_threshold = 2.0;
  double homogeneity_tolerance = 0.25;
};

BenchSuite default_bench_suite();

enum class Scenario { unmodified, copy_paste, erasure };
std::string to_string(Scenario s);

struct BenchImage {
  Scenario scenario = Scenario::unmodified;
  std::optional<int> quality;  // nullopt = lossless 8-bit source
  int ijg_quality = 0;
  GrayImage image;
  Bytes encoded;  // PNG for sources, JPEG for compressed variants
};

/// The bench corpus: the three 8-bit scenario images followed by their
/// compressed variants, in suite quality order.
std::vector<BenchImage> generate_bench_corpus(const BenchSuite& suite, std::uint64_t seed);

struct BenchRow {
  Scenario scenario = Scenario::unmodified;
  std::optional<int> quality;
  double gamma = 0.0;
  std::string region;
  double white_fraction = 0.0;
  bool empty_zone = false;
};

struct BenchVerdicts {
  /// max over qualities of |fg - bg| / max(fg, bg) on the unmodified scene.
  double worst_homogeneity = 0.0;
  /// min over qualities of max(fg,bg)/min(fg,bg) on the copy-paste scene.
  double worst_contrast = 0.0;
  bool erasure_detected = false;
  bool gamma_monotone = false;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  BenchVerdicts verdicts;
};

BenchTable run_bench_sweep(const BenchSuite& suite, const std::vector<BenchImage>& corpus);

/// |a - b| / max(a, b), 0 when both are 0.
double relative_difference(double a, double b);
/// max(a, b) / min(a, b), +infinity when exactly one is 0, 1 when both are.
double density_contrast(double a, double b);

}  // namespace gelinspect
