// Independent reference implementations used by the tests. Nothing here
// shares code with the library beyond its public types.
#ifndef SIC_TESTS_ORACLES_H_
#define SIC_TESTS_ORACLES_H_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sic/atom_source.h"
#include "sic/matrix.h"

namespace sic::test {

// Cox-de Boor recursion on the integer knots 0..m.
inline double CardinalBSpline(int m, double x) {
  if (m == 1) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  return (x * CardinalBSpline(m - 1, x) +
          (m - x) * CardinalBSpline(m - 1, x - 1.0)) /
         (m - 1);
}

inline std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back().push_back(c);
    }
  }
  return out;
}

inline Matrix RandomMatrix(std::size_t rows, std::size_t cols,
                           std::mt19937_64& rng, double scale = 100.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(rows, cols);
  for (double& v : m.flat()) v = u(rng);
  return m;
}

// <atom_k, r> for every atom, one dense atom at a time.
inline Matrix BruteForceCorrelations(const AtomSource& dict, const Matrix& r) {
  const std::size_t n = static_cast<std::size_t>(
      std::llround(std::sqrt(static_cast<double>(dict.AtomCount()))));
  Matrix out(n, dict.AtomCount() / n);
  std::vector<double> atom(dict.SignalDim());
  for (std::size_t k = 0; k < dict.AtomCount(); ++k) {
    dict.GetAtom(k, atom);
    long double dot = 0.0L;
    for (std::size_t p = 0; p < atom.size(); ++p) dot += atom[p] * r.flat()[p];
    out.flat()[k] = static_cast<double>(dot);
  }
  return out;
}

// Least-squares coefficients of f on the given columns, solved from the
// normal equations in long double with a pivoted QR.
inline std::vector<double> LeastSquares(
    const std::vector<std::vector<double>>& columns,
    std::span<const double> f) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Eigen::Index k = static_cast<Eigen::Index>(columns.size());
  const Eigen::Index n = static_cast<Eigen::Index>(f.size());
  Mat a(n, k);
  Vec y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = f[i];
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = columns[j][i];
  }
  const Mat gram = a.transpose() * a;
  const Vec rhs = a.transpose() * y;
  const Vec c = gram.colPivHouseholderQr().solve(rhs);
  std::vector<double> out(k);
  for (Eigen::Index j = 0; j < k; ++j) out[j] = static_cast<double>(c(j));
  return out;
}

// CDF 9/7 analysis as a direct filter bank with whole-sample symmetric
// extension. Taps come from the spectral factorization of the length-4
// Daubechies half-band polynomial, not from the lifting steps.
inline const std::vector<double>& Cdf97LowTaps() {
  static const std::vector<double> taps = [] {
    const double h[9] = {
        0.02674875741081003,  -0.01686411844287496, -0.07822326652899003,
        0.2668641184428749,   0.60294901823636,     0.26686411844287494,
        -0.07822326652899006, -0.01686411844287496, 0.02674875741081003};
    std::vector<double> t;
    for (double v : h) t.push_back(v * std::numbers::sqrt2);
    return t;
  }();
  return taps;
}

inline const std::vector<double>& Cdf97HighTaps() {
  static const std::vector<double> taps = [] {
    const double g[7] = {0.09127176311425014, -0.05754352622850027,
                         -0.5912717631142501, 1.1150870524570005,
                         -0.5912717631142501, -0.05754352622850027,
                         0.09127176311425014};
    std::vector<double> t;
    for (double v : g) t.push_back(v / std::numbers::sqrt2);
    return t;
  }();
  return taps;
}

inline double SymmetricAt(const std::vector<double>& x, long i) {
  const long n = static_cast<long>(x.size());
  if (n == 1) return x[0];
  const long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  if (i >= n) i = period - i;
  return x[i];
}

// Returns [low | high] for an even-length signal.
inline std::vector<double> Cdf97FilterBank1D(const std::vector<double>& x) {
  const long n = static_cast<long>(x.size());
  const long half = (n + 1) / 2;
  const std::vector<double>& h = Cdf97LowTaps();
  const std::vector<double>& g = Cdf97HighTaps();
  std::vector<double> out(n, 0.0);
  for (long i = 0; i < half; ++i) {
    double acc = 0.0;
    for (long k = -4; k <= 4; ++k) acc += h[k + 4] * SymmetricAt(x, 2 * i + k);
    out[i] = acc;
  }
  for (long i = 0; i < n / 2; ++i) {
    double acc = 0.0;
    for (long k = -3; k <= 3; ++k) {
      acc += g[k + 3] * SymmetricAt(x, 2 * i + 1 + k);
    }
    out[half + i] = acc;
  }
  return out;
}

// Multi-level separable analysis in Mallat layout: rows then columns of
// the current low-pass square at each level.
inline Matrix Cdf97FilterBank2D(Matrix m, int levels) {
  std::size_t w = m.cols(), h = m.rows();
  for (int lev = 0; lev < levels; ++lev) {
    for (std::size_t r = 0; r < h; ++r) {
      std::vector<double> line(w);
      for (std::size_t c = 0; c < w; ++c) line[c] = m(r, c);
      line = Cdf97FilterBank1D(line);
      for (std::size_t c = 0; c < w; ++c) m(r, c) = line[c];
    }
    for (std::size_t c = 0; c < w; ++c) {
      std::vector<double> line(h);
      for (std::size_t r = 0; r < h; ++r) line[r] = m(r, c);
      line = Cdf97FilterBank1D(line);
      for (std::size_t r = 0; r < h; ++r) m(r, c) = line[r];
    }
    w = (w + 1) / 2;
    h = (h + 1) / 2;
  }
  return m;
}

// Orthonormal DCT-II of an L x L block straight from the cosine sum.
inline Matrix DirectDct2(const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix out(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      long double acc = 0.0L;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          acc += x(r, c) *
                 std::cos(std::numbers::pi * (2 * r + 1) * u / (2.0 * n)) *
                 std::cos(std::numbers::pi * (2 * c + 1) * v / (2.0 * n));
        }
      }
      const double au = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      const double av = v == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      out(u, v) = static_cast<double>(acc) * au * av;
    }
  }
  return out;
}

}  // namespace sic::test

#endif  // SIC_TESTS_ORACLES_H_
