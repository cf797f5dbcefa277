#include "sic/pursuit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sic/error.h"

namespace sic {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// x -= Q Q^T x, with all projections taken from the incoming x.
void ProjectOut(const std::vector<std::vector<double>>& basis,
                std::vector<double>& x) {
  std::vector<double> proj(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) proj[i] = Dot(basis[i], x);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double p = proj[i];
    const std::vector<double>& q = basis[i];
    for (std::size_t t = 0; t < x.size(); ++t) x[t] -= p * q[t];
  }
}

}  // namespace

double PursuitState::ResidualSse() const {
  double ss = 0.0;
  for (double r : residual) ss += r * r;
  return ss;
}

PursuitState InitPursuit(const AtomSource& dict,
                         std::span<const double> signal) {
  if (signal.size() != dict.SignalDim()) {
    throw Error(ErrorKind::kUsage, "signal length " +
                                       std::to_string(signal.size()) +
                                       " does not match dictionary dimension " +
                                       std::to_string(dict.SignalDim()));
  }
  PursuitState state;
  state.signal.assign(signal.begin(), signal.end());
  state.residual = state.signal;
  state.excluded.assign(dict.AtomCount(), 0);
  state.correlations.resize(dict.AtomCount());
  return state;
}

std::size_t SelectAtom(PursuitState& state, const AtomSource& dict) {
  dict.Correlate(state.residual, state.correlations);
  const std::size_t n = state.correlations.size();
  std::size_t best = n;
  double best_abs = -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (state.excluded[k]) continue;
    const double a = std::abs(state.correlations[k]);
    if (a > best_abs) {
      best_abs = a;
      best = k;
    }
  }
  if (best == n) {
    throw PursuitExhausted("pursuit exhausted: all " + std::to_string(n) +
                           " atoms are selected or linearly dependent");
  }
  state.last_max_correlation = best_abs;
  return best;
}

bool OrthogonalizeAndUpdate(PursuitState& state, const AtomSource& dict,
                            std::size_t index, double dep_tol) {
  if (index >= state.excluded.size()) {
    throw Error(ErrorKind::kUsage, "atom index out of range");
  }
  if (std::find(state.selected.begin(), state.selected.end(), index) !=
      state.selected.end()) {
    throw Error(ErrorKind::kUsage,
                "atom " + std::to_string(index) + " is already selected");
  }
  const std::size_t dim = state.signal.size();
  std::vector<double> atom(dim);
  dict.GetAtom(index, atom);

  // q = v - P v, then one re-orthogonalization pass q = q - P q.
  std::vector<double> q = atom;
  ProjectOut(state.orthonormal, q);
  ProjectOut(state.orthonormal, q);

  const double atom_norm = std::sqrt(Dot(atom, atom));
  const double q_norm2 = Dot(q, q);
  const double q_norm = std::sqrt(q_norm2);
  if (!(q_norm >= dep_tol * atom_norm) || q_norm == 0.0) {
    state.masked.push_back(index);
    state.excluded[index] = 1;
    return false;
  }

  // b_new = q / |q|^2;  b_i <- b_i - b_new <v, b_i>.
  std::vector<double> b_new(dim);
  for (std::size_t t = 0; t < dim; ++t) b_new[t] = q[t] / q_norm2;
  for (std::vector<double>& b : state.biorthogonal) {
    const double w = Dot(atom, b);
    for (std::size_t t = 0; t < dim; ++t) b[t] -= w * b_new[t];
  }
  state.biorthogonal.push_back(std::move(b_new));

  for (double& x : q) x /= q_norm;
  state.orthonormal.push_back(std::move(q));
  state.atoms.push_back(std::move(atom));
  state.selected.push_back(index);
  state.excluded[index] = 1;

  // c_i = <b_i, f>;  R = f - sum_i c_i a_i.
  const std::size_t k = state.selected.size();
  state.coeffs.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    state.coeffs[i] = Dot(state.biorthogonal[i], state.signal);
  }
  state.residual = state.signal;
  for (std::size_t i = 0; i < k; ++i) {
    const double c = state.coeffs[i];
    const std::vector<double>& a = state.atoms[i];
    for (std::size_t t = 0; t < dim; ++t) state.residual[t] -= c * a[t];
  }
  return true;
}

PursuitState RunOmpState(std::span<const double> signal, const AtomSource& dict,
                         const StoppingRule& rule, StopReason* reason,
                         const TraceSink& trace, double dep_tol) {
  if (rule.sse_threshold < 0.0) {
    throw Error(ErrorKind::kUsage, "SSE threshold must be nonnegative");
  }
  const bool use_sse = rule.mode != StoppingRule::Mode::kMaxAtoms;
  std::size_t cap = dict.SignalDim();
  if (rule.mode != StoppingRule::Mode::kTargetSse) {
    cap = std::min(cap, rule.atom_cap);
  }

  PursuitState state = InitPursuit(dict, signal);
  StopReason why = StopReason::kThreshold;
  double sse = state.ResidualSse();
  while (true) {
    if (use_sse && sse <= rule.sse_threshold) {
      why = StopReason::kThreshold;
      break;
    }
    if (state.size() >= cap) {
      why = StopReason::kAtomCap;
      break;
    }
    const std::size_t index = SelectAtom(state, dict);
    if (state.last_max_correlation == 0.0) {
      why = StopReason::kZeroCorrelation;
      break;
    }
    if (OrthogonalizeAndUpdate(state, dict, index, dep_tol)) {
      sse = state.ResidualSse();
      if (trace) {
        trace({state.size(), index, state.last_max_correlation, sse});
      }
    }
  }
  if (reason != nullptr) *reason = why;
  return state;
}

OmpResult RunOmp(std::span<const double> signal, const AtomSource& dict,
                 const StoppingRule& rule, const TraceSink& trace,
                 double dep_tol) {
  OmpResult result;
  PursuitState state =
      RunOmpState(signal, dict, rule, &result.reason, trace, dep_tol);
  result.atoms = std::move(state.selected);
  result.coeffs = std::move(state.coeffs);
  result.residual_norm = std::sqrt(state.ResidualSse());
  return result;
}

ExplicitDictionary::ExplicitDictionary(std::vector<std::vector<double>> columns)
    : columns_(std::move(columns)) {
  if (!columns_.empty()) dim_ = columns_.front().size();
  for (const std::vector<double>& c : columns_) {
    if (c.size() != dim_) {
      throw Error(ErrorKind::kUsage, "dictionary columns differ in length");
    }
  }
}

void ExplicitDictionary::Correlate(std::span<const double> residual,
                                   std::span<double> out) const {
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    out[k] = Dot(columns_[k], residual);
  }
}

void ExplicitDictionary::GetAtom(std::size_t index,
                                 std::span<double> out) const {
  std::copy(columns_[index].begin(), columns_[index].end(), out.begin());
}

}  // namespace sic
