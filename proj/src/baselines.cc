#include "sic/baselines.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sic/error.h"

namespace sic {
namespace {

// Lifting factorization of the CDF 9/7 analysis filter pair.
constexpr double kAlpha = -1.586134342059924;
constexpr double kBeta = -0.052980118572961;
constexpr double kGamma = 0.882911075530934;
constexpr double kDelta = 0.443506852043971;
constexpr double kK = 1.230174104914001;
const double kLowScale = std::numbers::sqrt2 / kK;
const double kHighScale = kK / std::numbers::sqrt2;

std::vector<double> DctMatrix(int n) {
  std::vector<double> c(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const double a = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int x = 0; x < n; ++x) {
      c[k * n + x] =
          a * std::cos(std::numbers::pi * (2 * x + 1) * k / (2.0 * n));
    }
  }
  return c;
}

// dst = A * src * B for n x n row-major matrices, with A and B given by
// either the DCT matrix or its transpose.
void BlockProduct(const std::vector<double>& c, bool forward, int n,
                  const double* src, double* dst) {
  std::vector<double> tmp(static_cast<std::size_t>(n) * n, 0.0);
  // forward: tmp = C * src; inverse: tmp = C^T * src.
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const double w = forward ? c[r * n + k] : c[k * n + r];
      for (int col = 0; col < n; ++col)
        tmp[r * n + col] += w * src[k * n + col];
    }
  }
  // forward: dst = tmp * C^T; inverse: dst = tmp * C.
  for (int r = 0; r < n; ++r) {
    for (int col = 0; col < n; ++col) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        acc += tmp[r * n + k] * (forward ? c[col * n + k] : c[k * n + col]);
      }
      dst[r * n + col] = acc;
    }
  }
}

TransformCoeffs DctApply(const std::vector<double>& pixels, int width,
                         int height, int block, bool forward) {
  const std::vector<double> c = DctMatrix(block);
  TransformCoeffs out;
  out.kind = TransformKind::kDct2Block;
  out.width = width;
  out.height = height;
  out.block_size = block;
  out.values.resize(pixels.size());
  std::vector<double> src(static_cast<std::size_t>(block) * block);
  std::vector<double> dst(src.size());
  for (int by = 0; by < height / block; ++by) {
    for (int bx = 0; bx < width / block; ++bx) {
      for (int r = 0; r < block; ++r) {
        for (int col = 0; col < block; ++col) {
          src[r * block + col] =
              pixels[(by * block + r) * width + bx * block + col];
        }
      }
      BlockProduct(c, forward, block, src.data(), dst.data());
      for (int r = 0; r < block; ++r) {
        for (int col = 0; col < block; ++col) {
          out.values[(by * block + r) * width + bx * block + col] =
              dst[r * block + col];
        }
      }
    }
  }
  return out;
}

void CheckDctDims(int width, int height, int block) {
  if (block <= 0 || width <= 0 || height <= 0 || width % block != 0 ||
      height % block != 0) {
    throw Error(ErrorKind::kUsage, "image " + std::to_string(width) + "x" +
                                       std::to_string(height) +
                                       " is not divisible into " +
                                       std::to_string(block) + "x" +
                                       std::to_string(block) + " DCT blocks");
  }
}

void CheckWaveletDims(int width, int height, int levels) {
  if (levels < 1 || levels > 30) {
    throw Error(ErrorKind::kUsage, "wavelet levels must be in [1, 30]");
  }
  const long step = 1L << levels;
  if (width <= 0 || height <= 0 || width % step != 0 || height % step != 0) {
    throw Error(ErrorKind::kUsage, "image " + std::to_string(width) + "x" +
                                       std::to_string(height) +
                                       " is not divisible by 2^" +
                                       std::to_string(levels));
  }
}

// Applies fn to each row (length w) or column (length h) of the top-left
// w x h region of a row-major image with the given stride.
template <typename Fn>
void ForEachLine(std::vector<double>& data, int stride, int w, int h, bool rows,
                 Fn fn) {
  const int count = rows ? h : w;
  const int len = rows ? w : h;
  std::vector<double> in(len), out(len);
  for (int line = 0; line < count; ++line) {
    for (int t = 0; t < len; ++t) {
      in[t] = rows ? data[line * stride + t] : data[t * stride + line];
    }
    fn(in, out);
    for (int t = 0; t < len; ++t) {
      (rows ? data[line * stride + t] : data[t * stride + line]) = out[t];
    }
  }
}

}  // namespace

TransformCoeffs Dct2BlockForward(const RealImage& img, int block) {
  CheckDctDims(img.width, img.height, block);
  return DctApply(img.pixels, img.width, img.height, block, true);
}

RealImage Dct2BlockInverse(const TransformCoeffs& coeffs) {
  CheckDctDims(coeffs.width, coeffs.height, coeffs.block_size);
  TransformCoeffs t = DctApply(coeffs.values, coeffs.width, coeffs.height,
                               coeffs.block_size, false);
  RealImage out(coeffs.width, coeffs.height);
  out.pixels = std::move(t.values);
  return out;
}

void Cdf97Analyze1D(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size() / 2;
  std::vector<double> s(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = in[2 * i];
    d[i] = in[2 * i + 1];
  }
  // Whole-sample symmetry: s[n] mirrors to s[n-1], d[-1] mirrors to d[0].
  auto predict = [&](double w) {
    for (std::size_t i = 0; i < n; ++i) {
      d[i] += w * (s[i] + s[i + 1 < n ? i + 1 : n - 1]);
    }
  };
  auto update = [&](double w) {
    for (std::size_t i = 0; i < n; ++i) {
      s[i] += w * (d[i > 0 ? i - 1 : 0] + d[i]);
    }
  };
  predict(kAlpha);
  update(kBeta);
  predict(kGamma);
  update(kDelta);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = s[i] * kLowScale;
    out[n + i] = d[i] * kHighScale;
  }
}

void Cdf97Synthesize1D(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size() / 2;
  std::vector<double> s(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = in[i] / kLowScale;
    d[i] = in[n + i] / kHighScale;
  }
  auto predict = [&](double w) {
    for (std::size_t i = 0; i < n; ++i) {
      d[i] -= w * (s[i] + s[i + 1 < n ? i + 1 : n - 1]);
    }
  };
  auto update = [&](double w) {
    for (std::size_t i = 0; i < n; ++i) {
      s[i] -= w * (d[i > 0 ? i - 1 : 0] + d[i]);
    }
  };
  update(kDelta);
  predict(kGamma);
  update(kBeta);
  predict(kAlpha);
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = s[i];
    out[2 * i + 1] = d[i];
  }
}

TransformCoeffs Cdf97Forward(const RealImage& img, int levels) {
  CheckWaveletDims(img.width, img.height, levels);
  TransformCoeffs out;
  out.kind = TransformKind::kCdf97;
  out.width = img.width;
  out.height = img.height;
  out.levels = levels;
  out.values = img.pixels;
  int w = img.width;
  int h = img.height;
  for (int level = 0; level < levels; ++level) {
    ForEachLine(out.values, img.width, w, h, true, Cdf97Analyze1D);
    ForEachLine(out.values, img.width, w, h, false, Cdf97Analyze1D);
    w /= 2;
    h /= 2;
  }
  return out;
}

RealImage Cdf97Inverse(const TransformCoeffs& coeffs) {
  CheckWaveletDims(coeffs.width, coeffs.height, coeffs.levels);
  std::vector<double> data = coeffs.values;
  for (int level = coeffs.levels - 1; level >= 0; --level) {
    const int w = coeffs.width >> level;
    const int h = coeffs.height >> level;
    ForEachLine(data, coeffs.width, w, h, false, Cdf97Synthesize1D);
    ForEachLine(data, coeffs.width, w, h, true, Cdf97Synthesize1D);
  }
  RealImage out(coeffs.width, coeffs.height);
  out.pixels = std::move(data);
  return out;
}

RealImage InverseTransform(const TransformCoeffs& coeffs) {
  return coeffs.kind == TransformKind::kDct2Block ? Dct2BlockInverse(coeffs)
                                                  : Cdf97Inverse(coeffs);
}

namespace {

std::vector<std::size_t> MagnitudeOrder(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(values[a]) > std::abs(values[b]);
                   });
  return order;
}

TransformCoeffs KeepFirst(const TransformCoeffs& coeffs,
                          const std::vector<std::size_t>& order,
                          std::size_t kept) {
  TransformCoeffs out = coeffs;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  for (std::size_t k = 0; k < kept; ++k) {
    out.values[order[k]] = coeffs.values[order[k]];
  }
  return out;
}

}  // namespace

TransformCoeffs KeepLargest(const TransformCoeffs& coeffs, std::size_t kept) {
  return KeepFirst(coeffs, MagnitudeOrder(coeffs.values),
                   std::min(kept, coeffs.values.size()));
}

ThresholdResult ThresholdToPsnr(const TransformCoeffs& coeffs,
                                const ImageGray8& original, double target_db) {
  if (coeffs.width != original.width || coeffs.height != original.height) {
    throw Error(ErrorKind::kUsage,
                "coefficients do not match the image dimensions");
  }
  const std::vector<std::size_t> order = MagnitudeOrder(coeffs.values);
  auto psnr_with = [&](std::size_t kept) {
    return Psnr(original, InverseTransform(KeepFirst(coeffs, order, kept)));
  };

  std::size_t lo = 0;
  std::size_t hi = coeffs.values.size();
  double hi_psnr = psnr_with(hi);
  if (hi_psnr < target_db) {
    throw Error(ErrorKind::kNumerical,
                "target PSNR unreachable even with every coefficient kept");
  }
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double p = psnr_with(mid);
    if (p >= target_db) {
      hi = mid;
      hi_psnr = p;
    } else {
      lo = mid + 1;
    }
  }
  return {hi, hi_psnr};
}

SparsityReport RunBaseline(const ImageGray8& img, std::string_view method,
                           double target_db, int block, int levels) {
  if (!(target_db > 0.0)) {
    throw Error(ErrorKind::kUsage, "target PSNR must be positive");
  }
  TransformCoeffs coeffs;
  if (method == kMethodDct) {
    coeffs = Dct2BlockForward(ToReal(img), block);
  } else if (method == kMethodCdf97) {
    coeffs = Cdf97Forward(ToReal(img), levels);
  } else {
    throw Error(ErrorKind::kUsage,
                "unknown baseline method " + std::string(method));
  }
  const ThresholdResult t = ThresholdToPsnr(coeffs, img, target_db);

  SparsityReport report;
  report.method = std::string(method);
  report.pixels = img.pixels.size();
  report.total_atoms = t.kept;
  report.psnr = t.psnr;
  report.target_psnr = target_db;
  if (method == kMethodDct) {
    const TransformCoeffs kept = KeepLargest(coeffs, t.kept);
    for (int by = 0; by < img.height / block; ++by) {
      for (int bx = 0; bx < img.width / block; ++bx) {
        std::size_t n = 0;
        for (int r = 0; r < block; ++r) {
          for (int c = 0; c < block; ++c) {
            n += kept.values[(by * block + r) * img.width + bx * block + c] !=
                 0.0;
          }
        }
        ++report.atoms_per_block[n];
      }
    }
  }
  return report;
}

}  // namespace sic
