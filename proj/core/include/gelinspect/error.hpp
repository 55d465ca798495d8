#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gelinspect {

enum class ErrorCode {
  invalid_size,
  invalid_sigma,
  wrong_kind,
  invalid_kernel,
  image_smaller_than_kernel,
  nonfinite_input,
  out_of_range_input,
  dimension_mismatch,
  series_too_short,
  invalid_lambda,
  gamma_out_of_range,
  alpha_out_of_range,
  imaginary_residue,
  out_of_bounds,
  template_too_large,
  mismatched_regions,
  invalid_spec,
  codec_failure,
  unreadable_file,
  unsupported_format,
  write_failure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI's per-file summaries) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace gelinspect
