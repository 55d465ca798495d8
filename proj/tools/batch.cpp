#include "batch.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <thread>

#include <json.hpp>

#include "gelinspect/image_io.hpp"
#include "gelinspect/serialize.hpp"

namespace gelinspect::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSummarySchemaVersion = 1;

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

std::string artifact_name(const std::string& stem, ArtifactKind kind) {
  return stem + "." + to_string(kind) + (kind == ArtifactKind::report ? ".json" : ".png");
}

FileOutcome process(const fs::path& input, const std::string& stem, const JobConfig& cfg) {
  FileOutcome out{input, stem, false, {}, {}, {}};
  try {
    const Bytes raw = read_file(input);
    if (raw.empty()) throw Error(ErrorCode::unreadable_file, input.string() + " is empty");
    GrayImage image = [&] {
      try {
        return decode_image(raw);
      } catch (const Error& e) {
        throw Error(e.code(), input.string() + ": " + e.detail());
      }
    }();
    InquiryResult res = run_inquiry(image, cfg.params);

    for (ArtifactKind kind : cfg.emit) {
      if (kind == ArtifactKind::report) continue;
      Bytes bytes;
      switch (kind) {
        case ArtifactKind::background: bytes = encode_png_gray16(res.background); break;
        case ArtifactKind::residue: bytes = encode_png_gray16(res.normalized); break;
        case ArtifactKind::indicator: bytes = encode_png_mask(res.indicator); break;
        case ArtifactKind::overlay: bytes = encode_png_rgb8(res.overlay); break;
        case ArtifactKind::report: break;
      }
      const std::string name = artifact_name(stem, kind);
      write_file_atomic(cfg.out_dir / name, bytes);
      out.artifacts.push_back(name);
    }
    // File bytes rather than decoded pixels, so anyone can check the digest
    // against the evidence file with a stock sha256 tool.
    res.report.input_digest = sha256_digest(raw);
    res.report.artifact_paths = out.artifacts;
    const std::string report_name = artifact_name(stem, ArtifactKind::report);
    write_file_atomic(cfg.out_dir / report_name, to_json(res.report));
    out.artifacts.push_back(report_name);
    out.ok = true;
  } catch (const Error& e) {
    out.error_code = std::string(to_string(e.code()));
    out.message = e.detail();
  } catch (const std::exception& e) {
    out.error_code = "internal";
    out.message = e.what();
  }
  return out;
}

std::string summary_json(const JobConfig& cfg, const std::vector<FileOutcome>& outcomes) {
  Json files = Json::array();
  std::size_t failed = 0;
  for (const FileOutcome& o : outcomes) {
    Json f{{"input", o.input.generic_string()}, {"stem", o.stem}, {"status", o.ok ? "ok" : "error"}};
    if (o.ok) {
      f["artifacts"] = o.artifacts;
    } else {
      ++failed;
      f["error_code"] = o.error_code;
      f["message"] = o.message;
    }
    files.push_back(std::move(f));
  }
  Json emit = Json::array();
  for (ArtifactKind k : cfg.emit) emit.push_back(to_string(k));
  const Json params = Json::parse(to_json(cfg.params));
  Json j{{"schema_version", kSummarySchemaVersion},
         {"params", params},
         {"emit", emit},
         {"total", outcomes.size()},
         {"succeeded", outcomes.size() - failed},
         {"failed", failed},
         {"files", files}};
  return j.dump(2) + "\n";
}

}  // namespace

ArtifactKind artifact_kind_from(const std::string& name) {
  if (name == "background") return ArtifactKind::background;
  if (name == "residue") return ArtifactKind::residue;
  if (name == "indicator") return ArtifactKind::indicator;
  if (name == "overlay") return ArtifactKind::overlay;
  if (name == "report") return ArtifactKind::report;
  throw Error(ErrorCode::invalid_spec, "unknown artifact kind '" + name + "'");
}

std::string to_string(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::background: return "background";
    case ArtifactKind::residue: return "residue";
    case ArtifactKind::indicator: return "indicator";
    case ArtifactKind::overlay: return "overlay";
    case ArtifactKind::report: return "report";
  }
  return "report";
}

void validate(const JobConfig& cfg) {
  if (cfg.emit.empty()) throw Error(ErrorCode::invalid_spec, "emit set must not be empty");
  if (cfg.parallelism == 0) throw Error(ErrorCode::invalid_spec, "parallelism must be at least 1");
  validate(cfg.params);
}

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const fs::path& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      for (const fs::directory_entry& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && has_image_extension(e.path())) files.push_back(e.path().lexically_normal());
      }
    } else {
      // Missing files stay in the list and fail individually.
      files.push_back(in.lexically_normal());
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

std::vector<std::string> assign_stems(const std::vector<fs::path>& files) {
  std::map<std::string, int> stem_count;
  for (const fs::path& f : files) ++stem_count[f.stem().string()];
  std::vector<std::string> stems;
  std::map<std::string, int> name_seen;
  std::map<std::string, int> name_count;
  for (const fs::path& f : files) {
    const std::string s = f.stem().string();
    stems.push_back(stem_count[s] > 1 ? f.filename().string() : s);
    ++name_count[stems.back()];
  }
  for (std::string& s : stems) {
    if (name_count[s] > 1) s += "-" + std::to_string(++name_seen[s]);
  }
  return stems;
}

BatchResult run_batch(const JobConfig& cfg) {
  validate(cfg);
  fs::create_directories(cfg.out_dir);
  const std::vector<fs::path> files = expand_inputs(cfg.inputs);
  const std::vector<std::string> stems = assign_stems(files);

  BatchResult result;
  result.outcomes.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      result.outcomes[i] = process(files[i], stems[i], cfg);
    }
  };
  const auto workers = std::min<std::size_t>(cfg.parallelism, std::max<std::size_t>(files.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  for (const FileOutcome& o : result.outcomes) {
    if (!o.ok) result.exit_status = 1;
  }
  write_file_atomic(cfg.out_dir / "batch_summary.json", summary_json(cfg, result.outcomes));
  return result;
}

PsnrMatch compare_bands(const CompareRequest& req) {
  const GrayImage a = load_image(req.image_a);
  const GrayImage b = req.image_b == req.image_a ? a : load_image(req.image_b);
  require_inside(req.region_a, a.rows(), a.cols());
  require_inside(req.region_b, b.rows(), b.cols());
  if (!req.use_residue) {
    return template_match_psnr(extract_region(a, req.region_a), extract_region(b, req.region_b));
  }
  const RealMatrix ra = run_inquiry(a, req.params).normalized;
  const RealMatrix rb = req.image_b == req.image_a ? ra : run_inquiry(b, req.params).normalized;
  return template_match_psnr(extract_region(ra, req.region_a), extract_region(rb, req.region_b));
}

}  // namespace gelinspect::cli
