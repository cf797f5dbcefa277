#ifndef SIC_BASELINES_H_
#define SIC_BASELINES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sic/image.h"
#include "sic/report.h"

namespace sic {

enum class TransformKind { kDct2Block, kCdf97 };

// Transform coefficients laid out like the image: per-block DCT
// coefficients in place of each block, or the Mallat (pyramid) layout of
// the wavelet subbands.
struct TransformCoeffs {
  TransformKind kind = TransformKind::kDct2Block;
  int width = 0;
  int height = 0;
  int block_size = 0;  // DCT only
  int levels = 0;      // wavelet only
  std::vector<double> values;
};

inline constexpr int kDefaultDctBlock = 16;
inline constexpr int kDefaultWaveletLevels = 5;

// Orthonormal 2D DCT-II on each block x block tile.
TransformCoeffs Dct2BlockForward(const RealImage& img,
                                 int block = kDefaultDctBlock);
RealImage Dct2BlockInverse(const TransformCoeffs& coeffs);

// CDF 9/7 lifting with whole-sample symmetric extension, `levels` dyadic
// 2D decompositions. Both branches are scaled to gain sqrt(2) (DC for the
// lowpass, Nyquist for the highpass), so the transform is nearly
// orthonormal.
TransformCoeffs Cdf97Forward(const RealImage& img,
                             int levels = kDefaultWaveletLevels);
RealImage Cdf97Inverse(const TransformCoeffs& coeffs);

// One level of the 1D lifting transform on an even-length signal; output is
// [lowpass | highpass]. Exposed for filter-bank tests.
void Cdf97Analyze1D(std::span<const double> in, std::span<double> out);
void Cdf97Synthesize1D(std::span<const double> in, std::span<double> out);

RealImage InverseTransform(const TransformCoeffs& coeffs);

struct ThresholdResult {
  std::size_t kept = 0;
  double psnr = 0.0;
};

// Smallest number of largest-magnitude coefficients whose reconstruction
// reaches target_db against `original`, found by bisection over the kept
// count (ties in magnitude go to the lower index).
ThresholdResult ThresholdToPsnr(const TransformCoeffs& coeffs,
                                const ImageGray8& original, double target_db);

// Keeps only the `kept` largest-magnitude coefficients.
TransformCoeffs KeepLargest(const TransformCoeffs& coeffs, std::size_t kept);

// Forward transform, thresholding and report in one call. method must be
// "dct" or "cdf97".
SparsityReport RunBaseline(const ImageGray8& img, std::string_view method,
                           double target_db, int block = kDefaultDctBlock,
                           int levels = kDefaultWaveletLevels);

}  // namespace sic

#endif  // SIC_BASELINES_H_
