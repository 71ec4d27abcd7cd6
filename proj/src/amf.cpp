#include "saltpepper/amf.hpp"

#include <algorithm>
#include <vector>

#include "saltpepper/errors.hpp"

namespace saltpepper {

void AmfConfig::validate(int image_height, int image_width) const {
  if (w_max < 3) throw ConfigError("w_max must be at least 3");
  if (w_max % 2 == 0) throw ConfigError("w_max must be odd");
  if (w_max > std::min(image_height, image_width))
    throw ConfigError("w_max exceeds the smaller image dimension");
  if (!(s_min < s_max)) throw ConfigError("s_min must be less than s_max");
}

namespace {

// Median of the in-bounds w x w window centered at (row, col).
double window_median(const GrayImage& img, int row, int col, int w, std::vector<double>& buf) {
  const int half = w / 2;
  const int r0 = std::max(0, row - half);
  const int r1 = std::min(img.height() - 1, row + half);
  const int c0 = std::max(0, col - half);
  const int c1 = std::min(img.width() - 1, col + half);
  buf.clear();
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) buf.push_back(img.at(r, c));
  auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
  std::nth_element(buf.begin(), mid, buf.end());
  return *mid;
}

}  // namespace

std::pair<NoiseMask, GrayImage> adaptive_median(const GrayImage& img, const AmfConfig& cfg) {
  cfg.validate(img.height(), img.width());
  NoiseMask mask(img.width(), img.height());
  GrayImage u0 = img;
  std::vector<double> buf;
  buf.reserve(static_cast<std::size_t>(cfg.w_max) * cfg.w_max);

  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      const double v = img.at(r, c);
      if (v != cfg.s_min && v != cfg.s_max) continue;  // not an impulse candidate
      mask.flag(r, c);
      for (int w = 3; w <= cfg.w_max; w += 2) {
        const double med = window_median(img, r, c, w, buf);
        if (med > cfg.s_min && med < cfg.s_max) {
          u0.at(r, c) = med;
          break;
        }
      }
      // No interior median up to w_max: u0 keeps the observed value.
    }
  }
  return {std::move(mask), std::move(u0)};
}

}  // namespace saltpepper
