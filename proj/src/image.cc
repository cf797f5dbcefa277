#include "sic/image.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "sic/error.h"

namespace sic {

RealImage ToReal(const ImageGray8& img) {
  RealImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    out.pixels[i] = img.pixels[i];
  }
  return out;
}

ImageGray8 ClampToGray8(const RealImage& img) {
  ImageGray8 out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const double v = std::round(img.pixels[i]);
    out.pixels[i] = static_cast<std::uint8_t>(v < 0.0     ? 0.0
                                              : v > 255.0 ? 255.0
                                                          : v);
  }
  return out;
}

Matrix ExtractBlock(const RealImage& img, int bx, int by, int block) {
  Matrix m(block, block);
  for (int r = 0; r < block; ++r) {
    for (int c = 0; c < block; ++c) {
      m(r, c) = img.at(bx * block + c, by * block + r);
    }
  }
  return m;
}

void StoreBlock(const Matrix& block, int bx, int by, RealImage& img) {
  const int n = static_cast<int>(block.rows());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) img.at(bx * n + c, by * n + r) = block(r, c);
  }
}

namespace {

// Cursor over PGM header tokens; '#' comments run to end of line.
class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::span<const std::uint8_t> bytes)
      : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long ReadInt(const char* what) {
    SkipSpaceAndComments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorKind::kIo,
                  std::string("malformed PGM: expected ") + what);
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1 << 24) {
        throw Error(ErrorKind::kIo,
                    std::string("malformed PGM: ") + what + " too large");
      }
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void Advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageGray8 ParsePgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorKind::kIo, "not a binary PGM (missing P5 magic)");
  }
  PgmHeaderReader reader(bytes);
  reader.Advance(2);
  const long width = reader.ReadInt("width");
  const long height = reader.ReadInt("height");
  const long maxval = reader.ReadInt("maxval");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kIo, "malformed PGM: empty image");
  }
  if (maxval != 255) {
    throw Error(ErrorKind::kIo, "unsupported PGM maxval " +
                                    std::to_string(maxval) +
                                    " (only 8-bit, maxval 255)");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (reader.pos() >= bytes.size() || !std::isspace(bytes[reader.pos()])) {
    throw Error(ErrorKind::kIo, "malformed PGM: missing raster separator");
  }
  reader.Advance(1);
  const std::size_t need = static_cast<std::size_t>(width) * height;
  if (bytes.size() - reader.pos() < need) {
    throw Error(ErrorKind::kIo,
                "truncated PGM raster: expected " + std::to_string(need) +
                    " bytes, got " +
                    std::to_string(bytes.size() - reader.pos()));
  }
  ImageGray8 img(static_cast<int>(width), static_cast<int>(height));
  std::copy_n(bytes.begin() + reader.pos(), need, img.pixels.begin());
  return img;
}

std::vector<std::uint8_t> EncodePgm(const ImageGray8& img) {
  const std::string header = "P5\n" + std::to_string(img.width) + " " +
                             std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIo, "error reading " + path);
  return bytes;
}

void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "error writing " + path);
}

ImageGray8 ReadPgm(const std::string& path) {
  try {
    return ParsePgm(ReadFileBytes(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void WritePgm(const std::string& path, const ImageGray8& img) {
  WriteFileBytes(path, EncodePgm(img));
}

double MeanSquaredError(const ImageGray8& original, const RealImage& approx) {
  if (original.width != approx.width || original.height != approx.height) {
    throw Error(ErrorKind::kUsage, "PSNR: image dimensions differ");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < original.pixels.size(); ++i) {
    const double d = original.pixels[i] - approx.pixels[i];
    sse += d * d;
  }
  return sse / static_cast<double>(original.pixels.size());
}

double Psnr(const ImageGray8& original, const RealImage& approx) {
  const double mse = MeanSquaredError(original, approx);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double Psnr(const ImageGray8& original, const ImageGray8& approx) {
  return Psnr(original, ToReal(approx));
}

double PsnrToBlockSse(double target_db, int block) {
  return static_cast<double>(block) * block * 255.0 * 255.0 *
         std::pow(10.0, -target_db / 10.0);
}

}  // namespace sic
