#include "gelinspect/serialize.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace gelinspect {

namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinity; the sentinel is the string "inf".
constexpr const char* kInfinitySentinel = "inf";

Json real_or_sentinel(double v) {
  if (std::isinf(v) && v > 0) return kInfinitySentinel;
  return v;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::rectangle_band: return "rectangle_band";
    case ShapeKind::triangle: return "triangle";
    case ShapeKind::bounding_box: return "bounding_box";
  }
  return "rectangle_band";
}

ShapeKind shape_kind_from(const std::string& s) {
  if (s == "rectangle_band") return ShapeKind::rectangle_band;
  if (s == "triangle") return ShapeKind::triangle;
  if (s == "bounding_box") return ShapeKind::bounding_box;
  throw Error(ErrorCode::invalid_spec, "unknown shape kind '" + s + "'");
}

std::string to_string(ForgeryKind k) { return k == ForgeryKind::copy_paste ? "copy_paste" : "erase"; }

ForgeryKind forgery_kind_from(const std::string& s) {
  if (s == "copy_paste") return ForgeryKind::copy_paste;
  if (s == "erase") return ForgeryKind::erase;
  throw Error(ErrorCode::invalid_spec, "unknown forgery kind '" + s + "'");
}

std::string to_string(QualityScale s) { return s == QualityScale::ijg ? "ijg" : "photoshop"; }

QualityScale quality_scale_from(const std::string& s) {
  if (s == "ijg") return QualityScale::ijg;
  if (s == "photoshop") return QualityScale::photoshop;
  throw Error(ErrorCode::invalid_spec, "unknown quality scale '" + s + "'");
}

std::size_t size_from(const Json& j) {
  if (!j.is_number_unsigned()) throw Error(ErrorCode::invalid_spec, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Json to_json_value(const RegionSpec& r) {
  return Json{{"top", r.top}, {"left", r.left}, {"height", r.height}, {"width", r.width}};
}

RegionSpec region_from(const Json& j) {
  return RegionSpec{size_from(j.at("top")), size_from(j.at("left")), size_from(j.at("height")),
                    size_from(j.at("width"))};
}

Json to_json_value(const InquiryParams& p) {
  return Json{{"lambda", p.lambda},           {"gamma", p.gamma},
              {"blend_alpha", p.blend_alpha}, {"stain_rgb", p.stain_rgb},
              {"kernel_size", p.kernel_size}, {"kernel_sigma", p.kernel_sigma}};
}

// Missing keys keep their defaults so a params file may override a subset.
InquiryParams params_from(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_spec, "params must be an object");
  InquiryParams p;
  if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
  if (j.contains("gamma")) p.gamma = j.at("gamma").get<double>();
  if (j.contains("blend_alpha")) p.blend_alpha = j.at("blend_alpha").get<double>();
  if (j.contains("stain_rgb")) p.stain_rgb = j.at("stain_rgb").get<std::array<double, 3>>();
  if (j.contains("kernel_size")) p.kernel_size = size_from(j.at("kernel_size"));
  if (j.contains("kernel_sigma")) p.kernel_sigma = j.at("kernel_sigma").get<double>();
  return p;
}

Json to_json_value(const SceneSpec& s) {
  Json shapes = Json::array();
  for (const Shape& sh : s.shapes) {
    shapes.push_back(Json{{"kind", to_string(sh.kind)},
                          {"geometry", to_json_value(sh.geometry)},
                          {"intensity", sh.intensity}});
  }
  return Json{{"height", s.height},
              {"width", s.width},
              {"background_intensity", s.background_intensity},
              {"edge_softness", s.edge_softness},
              {"seed", s.seed},
              {"shapes", shapes}};
}

SceneSpec scene_from(const Json& j) {
  SceneSpec s;
  s.height = size_from(j.at("height"));
  s.width = size_from(j.at("width"));
  s.background_intensity = j.at("background_intensity").get<double>();
  s.edge_softness = j.value("edge_softness", 0.0);
  if (!j.at("seed").is_number_unsigned()) throw Error(ErrorCode::invalid_spec, "seed must be unsigned");
  s.seed = j.at("seed").get<std::uint64_t>();
  for (const Json& sh : j.at("shapes")) {
    s.shapes.push_back(Shape{shape_kind_from(sh.at("kind").get<std::string>()), region_from(sh.at("geometry")),
                             sh.at("intensity").get<double>()});
  }
  return s;
}

Json to_json_value(const ForgeryOp& op) {
  return Json{{"kind", to_string(op.kind)},
              {"source_region", to_json_value(op.source_region)},
              {"target_region", to_json_value(op.target_region)},
              {"fill_intensity", op.fill_intensity},
              {"noise_sigma_fore", op.noise_sigma_fore},
              {"noise_sigma_back", op.noise_sigma_back}};
}

ForgeryOp forgery_from(const Json& j) {
  ForgeryOp op;
  op.kind = forgery_kind_from(j.at("kind").get<std::string>());
  if (j.contains("source_region")) op.source_region = region_from(j.at("source_region"));
  op.target_region = region_from(j.at("target_region"));
  op.fill_intensity = j.value("fill_intensity", 0.0);
  op.noise_sigma_fore = j.value("noise_sigma_fore", 0.0);
  op.noise_sigma_back = j.value("noise_sigma_back", 0.0);
  return op;
}

Json optional_quality(const std::optional<int>& q) { return q ? Json(*q) : Json(nullptr); }

template <typename F>
auto parse_or_throw(const std::string& text, const char* what, F&& build) {
  try {
    return build(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::invalid_spec, std::string(what) + ": " + e.what());
  }
}

void put_le64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

}  // namespace

std::string to_json(const InquiryParams& params) { return dump(to_json_value(params)); }

std::string to_json(const InquiryReport& report) {
  Json j{{"schema_version", InquiryReport::kSchemaVersion},
         {"params", to_json_value(report.params)},
         {"height", report.height},
         {"width", report.width},
         {"residue_min", report.residue_min},
         {"residue_max", report.residue_max},
         {"residue_mean", report.residue_mean},
         {"white_fraction", report.white_fraction},
         {"input_digest", report.input_digest},
         {"artifact_paths", report.artifact_paths}};
  return dump(j);
}

std::string to_json(const PsnrMatch& match) {
  Json j{{"best_offset", Json{{"dy", match.dy}, {"dx", match.dx}}},
         {"mse", match.mse},
         {"psnr_db", real_or_sentinel(match.psnr_db)},
         {"exact_match", match.exact_match()}};
  return dump(j);
}

std::string to_json(const BenchTable& table) {
  Json rows = Json::array();
  for (const BenchRow& r : table.rows) {
    rows.push_back(Json{{"scenario", to_string(r.scenario)},
                        {"quality", optional_quality(r.quality)},
                        {"gamma", r.gamma},
                        {"region", r.region},
                        {"white_fraction", r.white_fraction},
                        {"empty_zone", r.empty_zone}});
  }
  const BenchVerdicts& v = table.verdicts;
  Json j{{"schema_version", BenchSuite::kSchemaVersion},
         {"rows", rows},
         {"verdicts", Json{{"worst_homogeneity", v.worst_homogeneity},
                           {"worst_contrast", real_or_sentinel(v.worst_contrast)},
                           {"erasure_detected", v.erasure_detected},
                           {"gamma_monotone", v.gamma_monotone}}}};
  return dump(j);
}

std::string to_json(const SceneSpec& spec) { return dump(to_json_value(spec)); }

std::string to_json(const ForgeryOp& op) { return dump(to_json_value(op)); }

std::string to_json(const BenchSuite& s) {
  Json erasures = Json::array();
  for (const ForgeryOp& op : s.erasures) erasures.push_back(to_json_value(op));
  Json bands = Json::array();
  for (const RegionSpec& r : s.bands) bands.push_back(to_json_value(r));
  Json j{{"schema_version", BenchSuite::kSchemaVersion},
         {"unmodified_scene", to_json_value(s.unmodified_scene)},
         {"template_scene", to_json_value(s.template_scene)},
         {"unmodified_sigma", s.unmodified_sigma},
         {"copy_paste", to_json_value(s.copy_paste)},
         {"erasures", erasures},
         {"erasure_base_sigma", s.erasure_base_sigma},
         {"erased_bands", s.erased_bands},
         {"foreground", to_json_value(s.foreground)},
         {"background", to_json_value(s.background)},
         {"bands", bands},
         {"params", to_json_value(s.params)},
         {"erasure_gammas", s.erasure_gammas},
         {"qualities", s.qualities},
         {"quality_scale", to_string(s.quality_scale)},
         {"contrast_threshold", s.contrast_threshold},
         {"homogeneity_tolerance", s.homogeneity_tolerance}};
  return dump(j);
}

InquiryParams inquiry_params_from_json(const std::string& text) {
  return parse_or_throw(text, "inquiry params", [](const Json& j) { return params_from(j); });
}

SceneSpec scene_spec_from_json(const std::string& text) {
  return parse_or_throw(text, "scene spec", [](const Json& j) { return scene_from(j); });
}

ForgeryOp forgery_op_from_json(const std::string& text) {
  return parse_or_throw(text, "forgery op", [](const Json& j) { return forgery_from(j); });
}

BenchSuite bench_suite_from_json(const std::string& text) {
  return parse_or_throw(text, "bench suite", [](const Json& j) {
    if (j.at("schema_version").get<int>() != BenchSuite::kSchemaVersion) {
      throw Error(ErrorCode::invalid_spec, "unsupported bench suite schema_version");
    }
    BenchSuite s;
    s.unmodified_scene = scene_from(j.at("unmodified_scene"));
    s.template_scene = scene_from(j.at("template_scene"));
    s.unmodified_sigma = j.at("unmodified_sigma").get<double>();
    s.copy_paste = forgery_from(j.at("copy_paste"));
    for (const Json& op : j.at("erasures")) s.erasures.push_back(forgery_from(op));
    s.erasure_base_sigma = j.at("erasure_base_sigma").get<double>();
    for (const Json& b : j.at("erased_bands")) s.erased_bands.push_back(size_from(b));
    s.foreground = region_from(j.at("foreground"));
    s.background = region_from(j.at("background"));
    for (const Json& b : j.at("bands")) s.bands.push_back(region_from(b));
    s.params = params_from(j.at("params"));
    s.erasure_gammas = j.at("erasure_gammas").get<std::vector<double>>();
    s.qualities = j.at("qualities").get<std::vector<int>>();
    s.quality_scale = quality_scale_from(j.at("quality_scale").get<std::string>());
    s.contrast_threshold = j.at("contrast_threshold").get<double>();
    s.homogeneity_tolerance = j.at("homogeneity_tolerance").get<double>();
    return s;
  });
}

std::string sha256_digest(std::span<const std::uint8_t> bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::codec_failure, "SHA-256 computation failed");
  }
  std::string out = "sha256:";
  char hex[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(hex, sizeof(hex), "%02x", md[i]);
    out += hex;
  }
  return out;
}

std::string pixel_digest(const RealMatrix& m) {
  std::vector<std::uint8_t> buf;
  buf.reserve(16 + 8 * m.size());
  put_le64(buf, m.rows());
  put_le64(buf, m.cols());
  for (double v : m.values()) put_le64(buf, std::bit_cast<std::uint64_t>(v));
  return sha256_digest(buf);
}

}  // namespace gelinspect
