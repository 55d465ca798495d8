#include "gelinspect/error.hpp"

namespace gelinspect {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_size: return "invalid-size";
    case ErrorCode::invalid_sigma: return "invalid-sigma";
    case ErrorCode::wrong_kind: return "wrong-kind";
    case ErrorCode::invalid_kernel: return "invalid-kernel";
    case ErrorCode::image_smaller_than_kernel: return "image-smaller-than-kernel";
    case ErrorCode::nonfinite_input: return "nonfinite-input";
    case ErrorCode::out_of_range_input: return "out-of-range-input";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::series_too_short: return "series-too-short";
    case ErrorCode::invalid_lambda: return "invalid-lambda";
    case ErrorCode::gamma_out_of_range: return "gamma-out-of-range";
    case ErrorCode::alpha_out_of_range: return "alpha-out-of-range";
    case ErrorCode::imaginary_residue: return "imaginary-residue";
    case ErrorCode::out_of_bounds: return "out-of-bounds";
    case ErrorCode::template_too_large: return "template-too-large";
    case ErrorCode::mismatched_regions: return "mismatched-regions";
    case ErrorCode::invalid_spec: return "invalid-spec";
    case ErrorCode::codec_failure: return "codec-failure";
    case ErrorCode::unreadable_file: return "unreadable-file";
    case ErrorCode::unsupported_format: return "unsupported-format";
    case ErrorCode::write_failure: return "write-failure";
  }
  return "unknown";
}

}  // namespace gelinspect
