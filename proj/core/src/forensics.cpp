#include "gelinspect/forensics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace gelinspect {

RegionSpec parse_region(const std::string& text) {
  std::vector<std::size_t> fields;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::size_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    while (first < last && *first == ' ') ++first;
    while (last > first && *(last - 1) == ' ') --last;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw Error(ErrorCode::invalid_spec, "region must be top,left,height,width: '" + text + "'");
    }
    fields.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (fields.size() != 4) {
    throw Error(ErrorCode::invalid_spec, "region must have four fields: '" + text + "'");
  }
  if (fields[2] == 0 || fields[3] == 0) {
    throw Error(ErrorCode::invalid_spec, "region height and width must be positive: '" + text + "'");
  }
  return RegionSpec{fields[0], fields[1], fields[2], fields[3]};
}

void require_inside(const RegionSpec& r, std::size_t rows, std::size_t cols) {
  if (r.height == 0 || r.width == 0 || r.top >= rows || r.left >= cols ||
      r.height > rows - r.top || r.width > cols - r.left) {
    throw Error(ErrorCode::out_of_bounds,
                "region " + std::to_string(r.top) + "," + std::to_string(r.left) + "," +
                    std::to_string(r.height) + "," + std::to_string(r.width) +
                    " does not fit a " + std::to_string(rows) + "x" + std::to_string(cols) + " image");
  }
}

RealMatrix extract_region(const RealMatrix& m, const RegionSpec& r) {
  require_inside(r, m.rows(), m.cols());
  RealMatrix out(r.height, r.width);
  for (std::size_t y = 0; y < r.height; ++y) {
    const auto src = m.row(r.top + y).subspan(r.left, r.width);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

GrayImage extract_region(const GrayImage& image, const RegionSpec& r) {
  return GrayImage(extract_region(image.matrix(), r));
}

double psnr_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

PsnrMatch template_match_psnr(const RealMatrix& templ, const RealMatrix& search) {
  if (templ.empty() || templ.rows() > search.rows() || templ.cols() > search.cols()) {
    throw Error(ErrorCode::template_too_large,
                std::to_string(templ.rows()) + "x" + std::to_string(templ.cols()) +
                    " template does not fit a " + std::to_string(search.rows()) + "x" +
                    std::to_string(search.cols()) + " search region");
  }
  const std::size_t th = templ.rows();
  const std::size_t tw = templ.cols();
  const double area = static_cast<double>(th * tw);

  PsnrMatch best;
  best.mse = std::numeric_limits<double>::infinity();
  for (std::size_t dy = 0; dy + th <= search.rows(); ++dy) {
    for (std::size_t dx = 0; dx + tw <= search.cols(); ++dx) {
      double sse = 0.0;
      for (std::size_t y = 0; y < th; ++y) {
        const auto t = templ.row(y);
        const auto s = search.row(dy + y).subspan(dx, tw);
        for (std::size_t x = 0; x < tw; ++x) {
          const double d = t[x] - s[x];
          sse += d * d;
        }
      }
      const double mse = sse / area;
      if (mse < best.mse) {
        best.mse = mse;
        best.dy = static_cast<std::ptrdiff_t>(dy);
        best.dx = static_cast<std::ptrdiff_t>(dx);
      }
    }
  }
  best.psnr_db = psnr_from_mse(best.mse);
  return best;
}

PsnrMatch template_match_psnr(const GrayImage& templ, const GrayImage& search) {
  return template_match_psnr(templ.matrix(), search.matrix());
}

}  // namespace gelinspect
