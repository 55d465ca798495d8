#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "gelinspect/forensics.hpp"
#include "gelinspect/inquiry.hpp"

namespace gelinspect::cli {

enum class ArtifactKind { background, residue, indicator, overlay, report };

/// Throws invalid_spec for an unknown name.
ArtifactKind artifact_kind_from(const std::string& name);
std::string to_string(ArtifactKind kind);

struct JobConfig {
  std::vector<std::filesystem::path> inputs;  // files or directories
  InquiryParams params;
  std::set<ArtifactKind> emit{ArtifactKind::indicator, ArtifactKind::overlay, ArtifactKind::report};
  std::filesystem::path out_dir = ".";
  unsigned parallelism = 1;
};

/// Throws on an empty emit set or zero parallelism, plus InquiryParams errors.
void validate(const JobConfig& cfg);

/// Directories contribute their PNG/JPEG/BMP files (non-recursive); the
/// result is sorted by path and free of duplicates.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs);

/// Artifact stem per input: the file stem, or the whole file name when two
/// inputs share a stem, or that plus "-<n>" when even names collide.
std::vector<std::string> assign_stems(const std::vector<std::filesystem::path>& files);

struct FileOutcome {
  std::filesystem::path input;
  std::string stem;
  bool ok = false;
  std::string error_code;
  std::string message;
  std::vector<std::string> artifacts;  // relative to out_dir
};

struct BatchResult {
  std::vector<FileOutcome> outcomes;  // sorted by input path
  int exit_status = 0;                // 0 iff every input succeeded
};

/// Processes every input on up to cfg.parallelism workers and writes the
/// requested artifacts, one <stem>.report.json per success and
/// batch_summary.json. Output bytes do not depend on parallelism.
BatchResult run_batch(const JobConfig& cfg);

struct CompareRequest {
  std::filesystem::path image_a;
  RegionSpec region_a;
  std::filesystem::path image_b;
  RegionSpec region_b;
  bool use_residue = false;  // match normalized residue maps instead of raw crops
  InquiryParams params;      // only used with use_residue
};

/// Region A is the template, region B the search window.
PsnrMatch compare_bands(const CompareRequest& req);

}  // namespace gelinspect::cli
