#ifndef SALTPEPPER_NOISE_HPP
#define SALTPEPPER_NOISE_HPP

#include <cstdint>
#include <utility>

#include "saltpepper/image.hpp"
#include "saltpepper/mask.hpp"

namespace saltpepper {

/// Salt-and-pepper corruption model: each pixel independently becomes
/// s_min with probability p, s_max with probability q, or stays put.
struct NoiseSpec {
  double p = 0.0;
  double q = 0.0;
  double s_min = 0.0;
  double s_max = 255.0;
  std::uint64_t seed = 0;

  /// Throws ConfigError unless p,q >= 0, p+q <= 1, 0 <= s_min < s_max <= 255.
  void validate() const;
};

/// Corrupt an image with seeded salt-and-pepper noise. The returned mask is
/// the ground-truth overwrite record: a pixel is flagged when the model
/// overwrote it, even if the written value equals the original one.
/// Deterministic: the stream is a single xoshiro256++ sequence consumed in
/// row-major order, one uniform draw per pixel (u < p -> pepper,
/// u < p+q -> salt).
std::pair<GrayImage, NoiseMask> corrupt(const GrayImage& img, const NoiseSpec& spec);

}  // namespace saltpepper

#endif
