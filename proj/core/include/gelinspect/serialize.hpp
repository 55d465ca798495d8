#pragma once

#include <span>
#include <string>

#include "gelinspect/bench.hpp"
#include "gelinspect/forensics.hpp"
#include "gelinspect/inquiry.hpp"

// JSON encodings. All writers emit UTF-8 with keys in a fixed order and a
// trailing newline, so identical values always serialize to identical bytes.

namespace gelinspect {

std::string to_json(const InquiryParams& params);
std::string to_json(const InquiryReport& report);
std::string to_json(const PsnrMatch& match);
std::string to_json(const BenchTable& table);
std::string to_json(const SceneSpec& spec);
std::string to_json(const ForgeryOp& op);
std::string to_json(const BenchSuite& suite);

/// Throw invalid_spec on malformed documents.
InquiryParams inquiry_params_from_json(const std::string& text);
SceneSpec scene_spec_from_json(const std::string& text);
ForgeryOp forgery_op_from_json(const std::string& text);
BenchSuite bench_suite_from_json(const std::string& text);

/// "sha256:<hex>" of the bytes.
std::string sha256_digest(std::span<const std::uint8_t> bytes);
/// Digest of the canonical pixel encoding: rows and cols as little-endian
/// u64, then each pixel as a little-endian IEEE-754 double in row-major order.
std::string pixel_digest(const RealMatrix& m);

}  // namespace gelinspect
