#include "saltpepper/noise.hpp"

#include "saltpepper/errors.hpp"
#include "saltpepper/rng.hpp"

namespace saltpepper {

void NoiseSpec::validate() const {
  if (p < 0.0 || q < 0.0) throw ConfigError("noise probabilities must be nonnegative");
  if (p + q > 1.0) throw ConfigError("p + q must not exceed 1");
  if (!(s_min < s_max)) throw ConfigError("s_min must be less than s_max");
  if (s_min < 0.0 || s_max > 255.0) throw ConfigError("impulse extremes must lie in [0, 255]");
}

std::pair<GrayImage, NoiseMask> corrupt(const GrayImage& img, const NoiseSpec& spec) {
  spec.validate();
  GrayImage out = img;
  NoiseMask mask(img.width(), img.height());
  Xoshiro256pp rng(spec.seed);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      const double u = rng.next_double();
      if (u < spec.p) {
        out.at(r, c) = spec.s_min;
        mask.flag(r, c);
      } else if (u < spec.p + spec.q) {
        out.at(r, c) = spec.s_max;
        mask.flag(r, c);
      }
    }
  }
  return {std::move(out), std::move(mask)};
}

}  // namespace saltpepper
