#ifndef SIC_DICTIONARY_H_
#define SIC_DICTIONARY_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sic/atom_source.h"
#include "sic/matrix.h"

namespace sic {

// Order of the cardinal B-spline. Only the hat (2) and the cubic (4) are
// used to build dictionaries.
enum class SplineOrder : int { kLinear = 2, kCubic = 4 };

// Validates a raw order; throws Error(kUsage) naming the allowed orders.
SplineOrder ToSplineOrder(int m);

// Cardinal B-spline of order m on the knots 0, 1, ..., m evaluated through
// its truncated-power expansion. Zero outside (0, m).
double EvalBSpline(SplineOrder m, double x);
double EvalBSpline(int m, double x);

// Nonzero samples of x -> B_m(x / dilation) at the integers
// 1 .. m * dilation - 1.
struct Prototype {
  SplineOrder order = SplineOrder::kLinear;
  int dilation = 1;
  std::vector<double> values;

  int support() const { return static_cast<int>(values.size()); }
};

// dilation must be 1, 2 or 3.
Prototype SamplePrototype(SplineOrder m, int dilation);

enum class AtomFamily : std::uint8_t { kCosine, kSpline };

struct Atom1D {
  std::vector<double> values;  // length L, unit Euclidean norm
  int support_start = 0;       // first index of the nonzero window
  int support_len = 0;
  AtomFamily family = AtomFamily::kCosine;
  int sub_dict = 0;  // 0 for the cosine part, dilation for spline parts
  int label = 0;     // position within the sub-dictionary
};

// Translates the prototype one sample at a time across positions
// 0..block_len-1, keeping every translate that overlaps the block. Samples
// falling outside are cut off and the atom is renormalized, giving
// block_len + support - 1 atoms in order of increasing translation.
std::vector<Atom1D> BuildSplineSubdict(const Prototype& proto, int block_len);

// count atoms cos(pi (2j - 1)(i - 1) / (4 block_len)), j = 1..block_len,
// i = 1..count, each scaled to unit norm. With count = 2 block_len the
// odd-indexed atoms are exactly the orthonormal DCT-II basis.
std::vector<Atom1D> BuildCosineDict(int block_len, int count);

// Stable on-disk identifiers; they appear in .sic headers.
enum class DictionaryId : std::uint16_t {
  kDct2xLinear = 1,  // cosine (redundancy 2) + hats of support 1, 3, 5
  kDct2xCubic = 2,   // cosine (redundancy 2) + cubics of support 3, 7, 11
};

std::string_view DictionaryName(DictionaryId id);
std::optional<DictionaryId> DictionaryFromName(std::string_view name);
bool IsKnownDictionaryId(std::uint16_t raw);

// Largest spline support in the dictionary; blocks must be at least this
// long.
int MaxAtomSupport(DictionaryId id);

class Dictionary1D {
 public:
  Dictionary1D(DictionaryId id, int block_len, std::vector<Atom1D> atoms);

  DictionaryId id() const { return id_; }
  int block_len() const { return block_len_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom1D& operator[](std::size_t i) const { return atoms_[i]; }
  std::span<const Atom1D> atoms() const { return atoms_; }

  double redundancy() const {
    return static_cast<double>(atoms_.size()) / block_len_;
  }

  // Debug dump, one atom per line:
  // family,sub_dict,label,support_start,support_len,v_0,...,v_{L-1}
  void WriteCsv(std::ostream& os) const;

 private:
  DictionaryId id_;
  int block_len_;
  std::vector<Atom1D> atoms_;
};

// Cosine atoms (by frequency) followed by the three spline sub-dictionaries
// of the chosen family (by increasing support, then translation).
Dictionary1D AssembleDictionary(DictionaryId id, int block_len);

// Tensor-product dictionary over L x L blocks. Atom (i, j) is the outer
// product u_i u_j^T of two atoms of the base dictionary; its flat index is
// i * base.size() + j, which is also the tie-break and serialization order.
class Dictionary2D : public AtomSource {
 public:
  explicit Dictionary2D(Dictionary1D base);

  const Dictionary1D& base() const { return base_; }
  DictionaryId id() const { return base_.id(); }
  int block_len() const { return base_.block_len(); }

  std::size_t AtomCount() const override { return n_ * n_; }
  std::size_t SignalDim() const override {
    return static_cast<std::size_t>(block_len()) * block_len();
  }

  std::size_t FlatIndex(std::size_t i, std::size_t j) const {
    return i * n_ + j;
  }
  std::pair<std::size_t, std::size_t> Address(std::size_t flat) const {
    return {flat / n_, flat % n_};
  }

  // U^T R U, evaluated separably and restricted to each atom's support.
  // Entry (i, j) is <u_i u_j^T, R>. Throws Error(kUsage) unless R is
  // L x L.
  Matrix CorrelateAll(const Matrix& residual) const;

  // L x L outer product for atom (i, j).
  Matrix AtomBlock(std::size_t i, std::size_t j) const;

  void Correlate(std::span<const double> residual,
                 std::span<double> out) const override;
  void GetAtom(std::size_t index, std::span<double> out) const override;

 private:
  void CorrelateInto(std::span<const double> residual,
                     std::span<double> out) const;

  Dictionary1D base_;
  std::size_t n_;
};

}  // namespace sic

#endif  // SIC_DICTIONARY_H_
