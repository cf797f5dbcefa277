#ifndef SIC_IMAGE_H_
#define SIC_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sic/matrix.h"

namespace sic {

// 8-bit grayscale image, row-major.
struct ImageGray8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  ImageGray8() = default;
  ImageGray8(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int x, int y) { return pixels[y * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[y * width + x]; }
};

// Real-valued image, row-major; decoded approximations stay in this form
// so PSNR is measured before any rounding.
struct RealImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  RealImage() = default;
  RealImage(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return pixels[y * width + x]; }
  double at(int x, int y) const { return pixels[y * width + x]; }
};

RealImage ToReal(const ImageGray8& img);
// Rounds to nearest and clamps to [0, 255].
ImageGray8 ClampToGray8(const RealImage& img);

// L x L block whose top-left pixel is (bx * L, by * L).
Matrix ExtractBlock(const RealImage& img, int bx, int by, int block);
void StoreBlock(const Matrix& block, int bx, int by, RealImage& img);

// Binary PGM (P5), maxval 255. Throws Error(kIo) on malformed input.
ImageGray8 ParsePgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodePgm(const ImageGray8& img);
ImageGray8 ReadPgm(const std::string& path);
void WritePgm(const std::string& path, const ImageGray8& img);

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes);

// 10 log10(255^2 / MSE); +inf when the images are identical.
double Psnr(const ImageGray8& original, const RealImage& approx);
double Psnr(const ImageGray8& original, const ImageGray8& approx);
double MeanSquaredError(const ImageGray8& original, const RealImage& approx);

// Per-block SSE budget L^2 * 255^2 * 10^(-target_db / 10). If every block
// stays within it the whole image reaches target_db.
double PsnrToBlockSse(double target_db, int block);

}  // namespace sic

#endif  // SIC_IMAGE_H_
