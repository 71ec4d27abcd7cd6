#ifndef SALTPEPPER_MASK_HPP
#define SALTPEPPER_MASK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saltpepper/image.hpp"

namespace saltpepper {

/// Set of noise-candidate pixels. Keeps a boolean grid plus the flagged
/// coordinates in row-major order; that ordering is the coordinate system
/// for every vector and matrix indexed over the candidate set.
class NoiseMask {
 public:
  NoiseMask() = default;
  NoiseMask(int width, int height);

  /// Build from a boolean grid (row-major, height*width entries).
  NoiseMask(int width, int height, const std::vector<std::uint8_t>& flags);

  int width() const { return width_; }
  int height() const { return height_; }

  bool flagged(int row, int col) const {
    return flags_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  bool flagged(PixelCoord c) const { return flagged(c.row, c.col); }

  /// Marks a pixel noisy. Must be called in row-major order of eventual
  /// flagged pixels; the index list is kept sorted by construction.
  void flag(int row, int col);

  std::size_t count() const { return index_.size(); }
  const std::vector<PixelCoord>& index() const { return index_; }

  /// Position of `c` in the ordered index if flagged, nullopt otherwise.
  std::optional<std::size_t> index_of(PixelCoord c) const;

  friend bool operator==(const NoiseMask&, const NoiseMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> flags_;
  std::vector<PixelCoord> index_;
  std::vector<std::uint32_t> ordinal_;  // per-pixel position in index_, or npos
};

/// Fraction of flagged pixels, |N| / (M*N).
double noise_ratio(const NoiseMask& mask);

/// Write the mask as PBM (P4, 1 = flagged) plus a sidecar text file at
/// `path + ".txt"` holding the single line "count=<|N|>".
void save_mask(const NoiseMask& mask, const std::string& path);

/// Read a P4 mask written by save_mask. Validates the sidecar count when
/// the sidecar file is present.
NoiseMask load_mask(const std::string& path);

}  // namespace saltpepper

#endif
