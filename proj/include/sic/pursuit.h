#ifndef SIC_PURSUIT_H_
#define SIC_PURSUIT_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "sic/atom_source.h"

namespace sic {

// Atoms whose orthogonalized component falls below dep_tol * |atom| are
// treated as linearly dependent on the current selection.
inline constexpr double kDefaultDependenceTol = 1e-9;

// Orthogonal Matching Pursuit state for one signal.
//
// The projection onto the span V_k of the selected atoms is kept in two
// forms: an orthonormal basis Q (used to orthogonalize new atoms, with one
// re-orthogonalization pass) and the biorthogonal family B whose members
// satisfy <b_i, a_j> = delta_ij for the selected atoms a_j, so that the
// expansion coefficients are plain inner products c_i = <b_i, f>.
struct PursuitState {
  std::vector<double> signal;    // f
  std::vector<double> residual;  // f - sum_i c_i a_i

  std::vector<std::size_t> selected;       // atom indices, in selection order
  std::vector<std::vector<double>> atoms;  // A: selected atoms
  std::vector<std::vector<double>> orthonormal;   // Q
  std::vector<std::vector<double>> biorthogonal;  // B
  std::vector<double> coeffs;

  std::vector<std::size_t> masked;      // atoms found linearly dependent
  std::vector<unsigned char> excluded;  // per atom: selected or masked

  std::vector<double> correlations;  // scratch, one per atom
  double last_max_correlation = 0.0;

  std::size_t size() const { return selected.size(); }
  double ResidualSse() const;
};

// Starts a pursuit on `signal` (R^0 = f, nothing selected).
PursuitState InitPursuit(const AtomSource& dict,
                         std::span<const double> signal);

// Index of the non-excluded atom maximizing |<atom, residual>|. Ties go to
// the smallest index. Throws PursuitExhausted if every atom is excluded.
// The winning |correlation| is left in state.last_max_correlation.
std::size_t SelectAtom(PursuitState& state, const AtomSource& dict);

// Adds atom `index` to the expansion: Gram-Schmidt against Q plus one
// re-orthogonalization pass, biorthogonal update, coefficient and residual
// refresh. Returns false (and only marks the atom masked) when the atom is
// numerically dependent on the current selection.
bool OrthogonalizeAndUpdate(PursuitState& state, const AtomSource& dict,
                            std::size_t index,
                            double dep_tol = kDefaultDependenceTol);

struct StoppingRule {
  enum class Mode { kTargetSse, kMaxAtoms, kBoth };

  Mode mode = Mode::kTargetSse;
  double sse_threshold = 0.0;
  std::size_t atom_cap = std::numeric_limits<std::size_t>::max();

  static StoppingRule TargetSse(double sse) {
    return {Mode::kTargetSse, sse, std::numeric_limits<std::size_t>::max()};
  }
  static StoppingRule MaxAtoms(std::size_t cap) {
    return {Mode::kMaxAtoms, 0.0, cap};
  }
  static StoppingRule Both(double sse, std::size_t cap) {
    return {Mode::kBoth, sse, cap};
  }
};

enum class StopReason {
  kThreshold,        // residual SSE reached the target
  kAtomCap,          // selected the maximum number of atoms
  kZeroCorrelation,  // best remaining correlation is exactly zero
};

struct TraceRow {
  std::size_t iteration;  // 1-based count of selected atoms
  std::size_t atom;
  double abs_correlation;
  double residual_sse;
};

using TraceSink = std::function<void(const TraceRow&)>;

struct OmpResult {
  std::vector<std::size_t> atoms;
  std::vector<double> coeffs;
  double residual_norm = 0.0;
  StopReason reason = StopReason::kThreshold;
};

// Runs OMP until the rule is satisfied. The atom cap is clamped to the
// signal dimension. PursuitExhausted propagates only when neither the
// threshold nor the cap has been met.
OmpResult RunOmp(std::span<const double> signal, const AtomSource& dict,
                 const StoppingRule& rule, const TraceSink& trace = {},
                 double dep_tol = kDefaultDependenceTol);

// Same as RunOmp but returns the full state, for inspection in tests and
// diagnostics.
PursuitState RunOmpState(std::span<const double> signal, const AtomSource& dict,
                         const StoppingRule& rule, StopReason* reason = nullptr,
                         const TraceSink& trace = {},
                         double dep_tol = kDefaultDependenceTol);

// Dictionary given by explicit unit-norm columns; used for small problems.
class ExplicitDictionary : public AtomSource {
 public:
  // `columns[k]` is atom k. All columns must have the same length.
  explicit ExplicitDictionary(std::vector<std::vector<double>> columns);

  std::size_t AtomCount() const override { return columns_.size(); }
  std::size_t SignalDim() const override { return dim_; }
  void Correlate(std::span<const double> residual,
                 std::span<double> out) const override;
  void GetAtom(std::size_t index, std::span<double> out) const override;

 private:
  std::vector<std::vector<double>> columns_;
  std::size_t dim_ = 0;
};

}  // namespace sic

#endif  // SIC_PURSUIT_H_
