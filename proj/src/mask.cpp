#include "saltpepper/mask.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "saltpepper/errors.hpp"

namespace saltpepper {

namespace {
constexpr std::uint32_t kNoOrdinal = std::numeric_limits<std::uint32_t>::max();
}

NoiseMask::NoiseMask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw ConfigError("mask dimensions must be positive");
  flags_.assign(static_cast<std::size_t>(width) * height, 0);
  ordinal_.assign(flags_.size(), kNoOrdinal);
}

NoiseMask::NoiseMask(int width, int height, const std::vector<std::uint8_t>& flags)
    : NoiseMask(width, height) {
  if (flags.size() != flags_.size()) throw ConfigError("mask flag grid size mismatch");
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (flags[static_cast<std::size_t>(r) * width + c]) flag(r, c);
}

void NoiseMask::flag(int row, int col) {
  const std::size_t at = static_cast<std::size_t>(row) * width_ + col;
  if (flags_[at]) return;
  if (!index_.empty()) {
    const PixelCoord& last = index_.back();
    if (row < last.row || (row == last.row && col <= last.col))
      throw ConfigError("mask flags must be added in row-major order");
  }
  flags_[at] = 1;
  ordinal_[at] = static_cast<std::uint32_t>(index_.size());
  index_.push_back({row, col});
}

std::optional<std::size_t> NoiseMask::index_of(PixelCoord c) const {
  const std::size_t at = static_cast<std::size_t>(c.row) * width_ + c.col;
  if (ordinal_[at] == kNoOrdinal) return std::nullopt;
  return static_cast<std::size_t>(ordinal_[at]);
}

double noise_ratio(const NoiseMask& mask) {
  const double total = static_cast<double>(mask.width()) * mask.height();
  return static_cast<double>(mask.count()) / total;
}

void save_mask(const NoiseMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "P4\n" << mask.width() << " " << mask.height() << "\n";
  const int bytes_per_row = (mask.width() + 7) / 8;
  std::string row(static_cast<std::size_t>(bytes_per_row), '\0');
  for (int r = 0; r < mask.height(); ++r) {
    std::fill(row.begin(), row.end(), '\0');
    for (int c = 0; c < mask.width(); ++c)
      if (mask.flagged(r, c)) row[c / 8] |= static_cast<char>(0x80 >> (c % 8));
    out.write(row.data(), bytes_per_row);
  }
  if (!out) throw IoError(path + ": write failed");

  std::ofstream sidecar(path + ".txt", std::ios::trunc);
  if (!sidecar) throw IoError(path + ".txt: cannot open for writing");
  sidecar << "count=" << mask.count() << "\n";
}

NoiseMask load_mask(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    std::ostringstream os;
    os << path << ": " << msg << " (byte offset " << pos << ")";
    throw IoError(os.str());
  };
  auto skip = [&] {
    while (pos < data.size()) {
      unsigned char ch = static_cast<unsigned char>(data[pos]);
      if (std::isspace(ch)) ++pos;
      else if (ch == '#') { while (pos < data.size() && data[pos] != '\n') ++pos; }
      else break;
    }
  };
  auto next_int = [&](const char* what) -> int {
    skip();
    if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
      fail(std::string("malformed ") + what);
    long v = 0;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
      v = v * 10 + (data[pos] - '0');
      ++pos;
    }
    return static_cast<int>(v);
  };

  if (data.size() < 2 || data[0] != 'P' || data[1] != '4') fail("not a P4 bitmap");
  pos = 2;
  const int width = next_int("width");
  const int height = next_int("height");
  if (width <= 0 || height <= 0) fail("non-positive dimensions");
  if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos])))
    fail("missing header terminator");
  ++pos;

  const int bytes_per_row = (width + 7) / 8;
  if (data.size() - pos < static_cast<std::size_t>(bytes_per_row) * height) {
    pos = data.size();
    fail("truncated bitmap payload");
  }

  NoiseMask mask(width, height);
  for (int r = 0; r < height; ++r) {
    const char* row = data.data() + pos + static_cast<std::size_t>(r) * bytes_per_row;
    for (int c = 0; c < width; ++c)
      if (row[c / 8] & static_cast<char>(0x80 >> (c % 8))) mask.flag(r, c);
  }

  std::ifstream sidecar(path + ".txt");
  if (sidecar) {
    std::string line;
    std::getline(sidecar, line);
    std::size_t expected = 0;
    if (line.rfind("count=", 0) == 0) expected = std::stoull(line.substr(6));
    else throw IoError(path + ".txt: malformed sidecar line");
    if (expected != mask.count())
      throw IoError(path + ": sidecar count does not match bitmap");
  }
  return mask;
}

}  // namespace saltpepper
