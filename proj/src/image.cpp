#include "saltpepper/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "saltpepper/errors.hpp"

namespace saltpepper {

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw ConfigError("image dimensions must be positive");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) throw ConfigError("image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width) * height)
    throw ConfigError("pixel count does not match dimensions");
}

std::vector<PixelCoord> neighborhood(PixelCoord c, int height, int width) {
  if (c.row < 0 || c.row >= height || c.col < 0 || c.col >= width)
    throw ConfigError("neighborhood: coordinate out of bounds");
  std::vector<PixelCoord> out;
  out.reserve(4);
  if (c.col - 1 >= 0) out.push_back({c.row, c.col - 1});
  if (c.col + 1 < width) out.push_back({c.row, c.col + 1});
  if (c.row - 1 >= 0) out.push_back({c.row - 1, c.col});
  if (c.row + 1 < height) out.push_back({c.row + 1, c.col});
  return out;
}

std::uint8_t quantize_u8(double v) {
  double r = std::floor(v + 0.5);
  r = std::clamp(r, 0.0, 255.0);
  return static_cast<std::uint8_t>(r);
}

GrayImage quantized(const GrayImage& img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i)
    out.pixels()[i] = static_cast<double>(quantize_u8(img.pixels()[i]));
  return out;
}

namespace {

struct PnmParser {
  const std::string& data;
  const std::string& path;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << path << ": " << msg << " (byte offset " << pos << ")";
    throw IoError(os.str());
  }

  // Whitespace and '#' comments separate header tokens.
  void skip_separators() {
    while (pos < data.size()) {
      unsigned char ch = static_cast<unsigned char>(data[pos]);
      if (std::isspace(ch)) {
        ++pos;
      } else if (ch == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  int next_int(const char* what) {
    skip_separators();
    if (pos >= data.size()) fail(std::string("missing ") + what);
    if (!std::isdigit(static_cast<unsigned char>(data[pos]))) fail(std::string("malformed ") + what);
    long value = 0;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
      value = value * 10 + (data[pos] - '0');
      if (value > 1 << 30) fail(std::string(what) + " out of range");
      ++pos;
    }
    return static_cast<int>(value);
  }
};

}  // namespace

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  PnmParser p{data, path};
  if (data.size() < 2) p.fail("not a PGM file");
  const char magic0 = data[0];
  const char magic1 = data[1];
  if (magic0 != 'P' || (magic1 != '5' && magic1 != '2')) p.fail("unsupported magic number");
  const bool binary = magic1 == '5';
  p.pos = 2;

  const int width = p.next_int("width");
  const int height = p.next_int("height");
  const int maxval = p.next_int("maxval");
  if (width <= 0 || height <= 0) p.fail("non-positive dimensions");
  if (maxval != 255) p.fail("maxval must be 255");

  GrayImage img(width, height);
  const std::size_t count = img.size();

  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    if (p.pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[p.pos])))
      p.fail("missing header terminator");
    ++p.pos;
    if (data.size() - p.pos < count) {
      p.pos = data.size();
      p.fail("truncated pixel payload");
    }
    for (std::size_t i = 0; i < count; ++i)
      img.pixels()[i] = static_cast<double>(static_cast<std::uint8_t>(data[p.pos + i]));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      int v = p.next_int("pixel value");
      if (v > 255) p.fail("pixel value exceeds maxval");
      img.pixels()[i] = static_cast<double>(v);
    }
  }
  return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
  if (img.size() == 0) throw ConfigError("save_pgm: empty image");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  std::string payload(img.size(), '\0');
  for (std::size_t i = 0; i < img.size(); ++i)
    payload[i] = static_cast<char>(quantize_u8(img.pixels()[i]));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace saltpepper
