#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "batch.hpp"
#include "gelinspect/bench.hpp"
#include "gelinspect/image_io.hpp"
#include "gelinspect/serialize.hpp"

namespace fs = std::filesystem;
using namespace gelinspect;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Unset flags leave the caller's params untouched, so the same flags can
// override either the inquiry defaults or a bench suite's parameters.
struct ParamFlags {
  std::optional<double> lambda, gamma, alpha, kernel_sigma;
  std::optional<std::size_t> kernel_size;

  void attach(CLI::App* app) {
    app->add_option("--lambda", lambda, "Smoothness weight (default 0.00005)");
    app->add_option("--gamma", gamma, "Indicator threshold in (0,1) (default 0.0001)");
    app->add_option("--alpha", alpha, "Stain blend factor in (0,1] (default 0.5)");
    app->add_option("--kernel-size", kernel_size, "Odd Gaussian kernel size (default 3)");
    app->add_option("--kernel-sigma", kernel_sigma, "Gaussian kernel sigma (default 1.0)");
  }

  void apply(InquiryParams& p) const {
    if (lambda) p.lambda = *lambda;
    if (gamma) p.gamma = *gamma;
    if (alpha) p.blend_alpha = *alpha;
    if (kernel_size) p.kernel_size = *kernel_size;
    if (kernel_sigma) p.kernel_sigma = *kernel_sigma;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

InquiryParams checked(InquiryParams p) {
  try {
    validate(p);
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
  return p;
}

BenchSuite load_suite(const std::string& path) {
  if (path.empty()) return default_bench_suite();
  const Bytes raw = read_file(path);
  return bench_suite_from_json(std::string(raw.begin(), raw.end()));
}

std::string corpus_file_name(const BenchImage& img) {
  const std::string base = to_string(img.scenario);
  return img.quality ? base + ".q" + std::to_string(*img.quality) + ".jpg" : base + ".png";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residue-based inspection of gel and blot images for local manipulation"};
  app.set_version_flag("--version", "gelinspect 1.0.0");
  app.require_subcommand(1);

  ParamFlags inquire_flags;
  std::vector<std::string> inputs;
  std::vector<std::string> emit;
  std::string out_dir = ".";
  unsigned jobs = 1;
  auto* inquire = app.add_subcommand("inquire", "Compute indicator maps and overlays for images or directories");
  inquire->add_option("inputs", inputs, "Image files or directories");
  inquire->add_option("--emit", emit, "Artifacts: background,residue,indicator,overlay,report")
      ->delimiter(',');
  inquire->add_option("--out-dir", out_dir, "Output directory");
  inquire->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  inquire_flags.attach(inquire);

  ParamFlags compare_flags;
  std::string image_a, image_b, region_a, region_b;
  bool use_residue = false;
  auto* compare = app.add_subcommand("compare", "Best-alignment PSNR between two bands");
  compare->add_option("--image-a", image_a, "Image holding the template band")->required();
  compare->add_option("--region-a", region_a, "Template region top,left,height,width")->required();
  compare->add_option("--image-b", image_b, "Image holding the search window (default: image A)");
  compare->add_option("--region-b", region_b, "Search region top,left,height,width")->required();
  compare->add_flag("--residue", use_residue, "Match normalized residue maps instead of raw crops");
  compare_flags.attach(compare);

  std::uint64_t seed = 1;
  std::string suite_path;
  std::string bench_out_dir;
  auto* generate = app.add_subcommand("bench-generate", "Write the synthetic control-group corpus");
  generate->add_option("--out-dir", bench_out_dir, "Output directory")->required();
  generate->add_option("--seed", seed, "Noise seed");
  generate->add_option("--suite", suite_path, "Bench suite JSON (default: built-in suite)");

  ParamFlags sweep_flags;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("bench-sweep", "Region statistics of the synthetic corpus as a JSON table");
  sweep->add_option("--seed", seed, "Noise seed");
  sweep->add_option("--suite", suite_path, "Bench suite JSON (default: built-in suite)");
  sweep->add_option("--out", sweep_out, "Output file (default: standard output)");
  sweep_flags.attach(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*inquire) {
      cli::JobConfig cfg;
      for (const std::string& in : inputs) cfg.inputs.emplace_back(in);
      inquire_flags.apply(cfg.params);
      cfg.params = checked(cfg.params);
      if (!emit.empty()) {
        cfg.emit.clear();
        try {
          for (const std::string& k : emit) cfg.emit.insert(cli::artifact_kind_from(k));
        } catch (const Error& e) {
          throw UsageError(e.detail());
        }
      }
      cfg.out_dir = out_dir;
      cfg.parallelism = jobs;
      const cli::BatchResult result = cli::run_batch(cfg);
      for (const cli::FileOutcome& o : result.outcomes) {
        if (!o.ok) std::cerr << "gelinspect: " << o.error_code << ": " << o.message << "\n";
      }
      return result.exit_status;
    }
    if (*compare) {
      cli::CompareRequest req;
      req.image_a = image_a;
      req.image_b = image_b.empty() ? image_a : image_b;
      try {
        req.region_a = parse_region(region_a);
        req.region_b = parse_region(region_b);
      } catch (const Error& e) {
        throw UsageError(e.detail());
      }
      req.use_residue = use_residue;
      compare_flags.apply(req.params);
      req.params = checked(req.params);
      std::cout << to_json(cli::compare_bands(req));
      return 0;
    }
    if (*generate) {
      const BenchSuite suite = load_suite(suite_path);
      fs::create_directories(bench_out_dir);
      write_file_atomic(fs::path(bench_out_dir) / "suite.json", to_json(suite));
      for (const BenchImage& img : generate_bench_corpus(suite, seed)) {
        write_file_atomic(fs::path(bench_out_dir) / corpus_file_name(img), img.encoded);
      }
      return 0;
    }
    if (*sweep) {
      BenchSuite suite = load_suite(suite_path);
      sweep_flags.apply(suite.params);
      suite.params = checked(suite.params);
      const std::string table = to_json(run_bench_sweep(suite, generate_bench_corpus(suite, seed)));
      if (sweep_out.empty()) {
        std::cout << table;
      } else {
        write_file_atomic(sweep_out, table);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "gelinspect: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "gelinspect: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "gelinspect: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
