#ifndef SALTPEPPER_AMF_HPP
#define SALTPEPPER_AMF_HPP

#include <utility>

#include "saltpepper/image.hpp"
#include "saltpepper/mask.hpp"

namespace saltpepper {

/// Adaptive median filter settings.
struct AmfConfig {
  int w_max = 39;  ///< maximum window side length, odd, >= 3
  double s_min = 0.0;
  double s_max = 255.0;

  void validate(int image_height, int image_width) const;
};

/// Phase-one detector. A pixel is a noise candidate iff its value equals
/// s_min or s_max (the classical impulse model). For each candidate the
/// centered window grows 3x3, 5x5, ... up to w_max; the first window whose
/// median lies strictly between the extremes supplies the initial guess for
/// that pixel. Candidates with no such window keep their observed value in
/// the initial guess. Window medians use in-bounds pixels only, upper
/// median for even counts. Non-candidates are copied unchanged.
///
/// Returns the candidate mask and the initial restoration guess u0.
std::pair<NoiseMask, GrayImage> adaptive_median(const GrayImage& img, const AmfConfig& cfg);

}  // namespace saltpepper

#endif
