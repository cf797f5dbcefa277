#include "sic/dictionary.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "sic/error.h"

namespace sic {
namespace {

constexpr int kDilations[] = {1, 2, 3};

double Binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double Factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void Normalize(std::vector<double>& v) {
  double ss = 0.0;
  for (double x : v) ss += x * x;
  const double inv = 1.0 / std::sqrt(ss);
  for (double& x : v) x *= inv;
}

}  // namespace

SplineOrder ToSplineOrder(int m) {
  if (m == 2) return SplineOrder::kLinear;
  if (m == 4) return SplineOrder::kCubic;
  throw Error(ErrorKind::kUsage,
              "unsupported B-spline order " + std::to_string(m) +
                  "; allowed orders are 2 (linear) and 4 (cubic)");
}

double EvalBSpline(SplineOrder order, double x) {
  const int m = static_cast<int>(order);
  if (!(x > 0.0) || !(x < m)) return 0.0;
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = x - i;
    if (t <= 0.0) break;
    const double term = Binomial(m, i) * std::pow(t, m - 1);
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum / Factorial(m - 1);
}

double EvalBSpline(int m, double x) { return EvalBSpline(ToSplineOrder(m), x); }

Prototype SamplePrototype(SplineOrder m, int dilation) {
  if (dilation < 1 || dilation > 3) {
    throw Error(ErrorKind::kUsage, "spline dilation must be 1, 2 or 3, got " +
                                       std::to_string(dilation));
  }
  Prototype proto;
  proto.order = m;
  proto.dilation = dilation;
  const int last = static_cast<int>(m) * dilation - 1;
  proto.values.reserve(last);
  for (int k = 1; k <= last; ++k) {
    proto.values.push_back(EvalBSpline(m, static_cast<double>(k) / dilation));
  }
  return proto;
}

std::vector<Atom1D> BuildSplineSubdict(const Prototype& proto, int block_len) {
  const int support = proto.support();
  if (block_len < support) {
    throw Error(ErrorKind::kUsage, "block length " + std::to_string(block_len) +
                                       " is shorter than the spline support " +
                                       std::to_string(support));
  }
  std::vector<Atom1D> atoms;
  atoms.reserve(block_len + support - 1);
  // Translation t places prototype sample q at position t - (support-1) + q.
  for (int t = 0; t < block_len + support - 1; ++t) {
    const int offset = t - (support - 1);
    Atom1D atom;
    atom.values.assign(block_len, 0.0);
    atom.family = AtomFamily::kSpline;
    atom.sub_dict = proto.dilation;
    atom.label = t;
    atom.support_start = std::max(0, offset);
    const int end = std::min(block_len, offset + support);
    atom.support_len = end - atom.support_start;
    for (int pos = atom.support_start; pos < end; ++pos) {
      atom.values[pos] = proto.values[pos - offset];
    }
    Normalize(atom.values);
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

std::vector<Atom1D> BuildCosineDict(int block_len, int count) {
  if (block_len <= 0 || count <= 0) {
    throw Error(ErrorKind::kUsage, "cosine dictionary needs positive sizes");
  }
  std::vector<Atom1D> atoms;
  atoms.reserve(count);
  for (int i = 0; i < count; ++i) {
    Atom1D atom;
    atom.values.resize(block_len);
    for (int j = 0; j < block_len; ++j) {
      atom.values[j] =
          std::cos(std::numbers::pi * (2 * j + 1) * i / (4.0 * block_len));
    }
    Normalize(atom.values);
    atom.family = AtomFamily::kCosine;
    atom.sub_dict = 0;
    atom.label = i;
    atom.support_start = 0;
    atom.support_len = block_len;
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

std::string_view DictionaryName(DictionaryId id) {
  switch (id) {
    case DictionaryId::kDct2xLinear:
      return "omp_linear";
    case DictionaryId::kDct2xCubic:
      return "omp_cubic";
  }
  return "unknown";
}

std::optional<DictionaryId> DictionaryFromName(std::string_view name) {
  if (name == "omp_linear") return DictionaryId::kDct2xLinear;
  if (name == "omp_cubic") return DictionaryId::kDct2xCubic;
  return std::nullopt;
}

bool IsKnownDictionaryId(std::uint16_t raw) {
  return raw == static_cast<std::uint16_t>(DictionaryId::kDct2xLinear) ||
         raw == static_cast<std::uint16_t>(DictionaryId::kDct2xCubic);
}

static SplineOrder FamilyOrder(DictionaryId id) {
  return id == DictionaryId::kDct2xLinear ? SplineOrder::kLinear
                                          : SplineOrder::kCubic;
}

int MaxAtomSupport(DictionaryId id) {
  return static_cast<int>(FamilyOrder(id)) * kDilations[2] - 1;
}

Dictionary1D::Dictionary1D(DictionaryId id, int block_len,
                           std::vector<Atom1D> atoms)
    : id_(id), block_len_(block_len), atoms_(std::move(atoms)) {}

void Dictionary1D::WriteCsv(std::ostream& os) const {
  os << "family,sub_dict,label,support_start,support_len,values\n";
  char buf[32];
  for (const Atom1D& a : atoms_) {
    os << (a.family == AtomFamily::kCosine ? "cosine" : "spline") << ','
       << a.sub_dict << ',' << a.label << ',' << a.support_start << ','
       << a.support_len;
    for (double v : a.values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
}

Dictionary1D AssembleDictionary(DictionaryId id, int block_len) {
  if (block_len < MaxAtomSupport(id)) {
    throw Error(ErrorKind::kUsage,
                "block size " + std::to_string(block_len) +
                    " is smaller than the largest atom support " +
                    std::to_string(MaxAtomSupport(id)) + " of " +
                    std::string(DictionaryName(id)));
  }
  std::vector<Atom1D> atoms = BuildCosineDict(block_len, 2 * block_len);
  for (int dilation : kDilations) {
    std::vector<Atom1D> sub = BuildSplineSubdict(
        SamplePrototype(FamilyOrder(id), dilation), block_len);
    atoms.insert(atoms.end(), std::make_move_iterator(sub.begin()),
                 std::make_move_iterator(sub.end()));
  }
  return Dictionary1D(id, block_len, std::move(atoms));
}

Dictionary2D::Dictionary2D(Dictionary1D base)
    : base_(std::move(base)), n_(base_.size()) {}

Matrix Dictionary2D::CorrelateAll(const Matrix& residual) const {
  const std::size_t len = block_len();
  if (residual.rows() != len || residual.cols() != len) {
    throw Error(ErrorKind::kUsage, "residual must be " + std::to_string(len) +
                                       "x" + std::to_string(len));
  }
  Matrix out(n_, n_);
  CorrelateInto(residual.flat(), out.flat());
  return out;
}

void Dictionary2D::CorrelateInto(std::span<const double> residual,
                                 std::span<double> out) const {
  const std::size_t len = block_len();
  // rows[a * len + c] = sum_r u_a[r] R[r][c], only over the support of u_a.
  std::vector<double> rows(n_ * len, 0.0);
  for (std::size_t a = 0; a < n_; ++a) {
    const Atom1D& u = base_[a];
    double* dst = &rows[a * len];
    for (int r = u.support_start; r < u.support_start + u.support_len; ++r) {
      const double w = u.values[r];
      const double* src = &residual[r * len];
      for (std::size_t c = 0; c < len; ++c) dst[c] += w * src[c];
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const double* t = &rows[i * len];
    double* dst = &out[i * n_];
    for (std::size_t j = 0; j < n_; ++j) {
      const Atom1D& v = base_[j];
      double acc = 0.0;
      for (int c = v.support_start; c < v.support_start + v.support_len; ++c) {
        acc += t[c] * v.values[c];
      }
      dst[j] = acc;
    }
  }
}

Matrix Dictionary2D::AtomBlock(std::size_t i, std::size_t j) const {
  const std::size_t len = block_len();
  Matrix block(len, len);
  GetAtom(FlatIndex(i, j), block.flat());
  return block;
}

void Dictionary2D::Correlate(std::span<const double> residual,
                             std::span<double> out) const {
  if (residual.size() != SignalDim() || out.size() != AtomCount()) {
    throw Error(ErrorKind::kUsage, "correlation buffer size mismatch");
  }
  CorrelateInto(residual, out);
}

void Dictionary2D::GetAtom(std::size_t index, std::span<double> out) const {
  const auto [i, j] = Address(index);
  const std::size_t len = block_len();
  const Atom1D& u = base_[i];
  const Atom1D& v = base_[j];
  for (std::size_t r = 0; r < len; ++r) {
    for (std::size_t c = 0; c < len; ++c) {
      out[r * len + c] = u.values[r] * v.values[c];
    }
  }
}

}  // namespace sic
