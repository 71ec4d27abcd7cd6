#include "saltpepper/metrics.hpp"

#include <cmath>
#include <limits>

#include "saltpepper/errors.hpp"

namespace saltpepper {

double mse(const GrayImage& ref, const GrayImage& test) {
  if (ref.width() != test.width() || ref.height() != test.height())
    throw ConfigError("mse: image dimensions differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref.pixels()[i] - test.pixels()[i];
    sum += d * d;
  }
  return sum / static_cast<double>(ref.size());
}

double psnr(const GrayImage& ref, const GrayImage& test, double peak_val) {
  const double m = mse(ref, test);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak_val * peak_val / m);
}

QualityReport quality(const GrayImage& ref, const GrayImage& test, double peak_val) {
  QualityReport q;
  q.peak_val = peak_val;
  q.mse = mse(ref, test);
  q.psnr_db = q.mse == 0.0 ? std::numeric_limits<double>::infinity()
                           : 10.0 * std::log10(peak_val * peak_val / q.mse);
  return q;
}

}  // namespace saltpepper
