#ifndef SALTPEPPER_METRICS_HPP
#define SALTPEPPER_METRICS_HPP

#include "saltpepper/image.hpp"

namespace saltpepper {

struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;  ///< +infinity when mse == 0
  double peak_val = 255.0;
};

/// Mean squared intensity difference; dimensions must match.
double mse(const GrayImage& ref, const GrayImage& test);

/// 10 log10(peak^2 / mse), +infinity for identical images.
double psnr(const GrayImage& ref, const GrayImage& test, double peak_val = 255.0);

QualityReport quality(const GrayImage& ref, const GrayImage& test, double peak_val = 255.0);

}  // namespace saltpepper

#endif
