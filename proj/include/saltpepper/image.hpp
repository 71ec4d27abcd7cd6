#ifndef SALTPEPPER_IMAGE_HPP
#define SALTPEPPER_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace saltpepper {

struct PixelCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Dense grayscale image. Intensities are stored as real values in
/// [0, 255]; quantization to 8-bit integers happens only at file I/O.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, double fill = 0.0);
  GrayImage(int width, int height, std::vector<double> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  double& at(int row, int col) { return pixels_[static_cast<std::size_t>(row) * width_ + col]; }
  double at(int row, int col) const { return pixels_[static_cast<std::size_t>(row) * width_ + col]; }
  double& at(PixelCoord c) { return at(c.row, c.col); }
  double at(PixelCoord c) const { return at(c.row, c.col); }

  std::vector<double>& pixels() { return pixels_; }
  const std::vector<double>& pixels() const { return pixels_; }

  bool in_bounds(PixelCoord c) const {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

/// 4-neighborhood of `c` clipped to the image bounds. Order is fixed:
/// left, right, up, down, with out-of-bounds entries omitted. Throws
/// ConfigError if `c` itself is out of bounds (caller bug).
std::vector<PixelCoord> neighborhood(PixelCoord c, int height, int width);

/// Quantize one intensity for 8-bit output: round half up, clamp to [0, 255].
std::uint8_t quantize_u8(double v);

/// Quantized copy of an image (values become integers in {0..255}).
GrayImage quantized(const GrayImage& img);

/// Read a PGM file. Accepts binary P5 and ASCII P2, maxval 255 only.
/// Malformed input raises IoError with the offending byte offset.
GrayImage load_pgm(const std::string& path);

/// Write binary PGM (P5, maxval 255). Pixels are quantized on the way out.
void save_pgm(const GrayImage& img, const std::string& path);

}  // namespace saltpepper

#endif
