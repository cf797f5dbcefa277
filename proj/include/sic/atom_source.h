#ifndef SIC_ATOM_SOURCE_H_
#define SIC_ATOM_SOURCE_H_

#include <cstddef>
#include <span>

namespace sic {

// A finite, ordered family of unit-norm atoms in R^SignalDim().
// The pursuit only talks to dictionaries through this interface, so the
// separable 2D dictionary and small explicit test dictionaries share one
// OMP implementation. Implementations must be immutable after
// construction: the same instance is shared by concurrent pursuits.
class AtomSource {
 public:
  virtual ~AtomSource() = default;

  virtual std::size_t AtomCount() const = 0;
  virtual std::size_t SignalDim() const = 0;

  // out[k] = <atom k, residual> for every atom.
  virtual void Correlate(std::span<const double> residual,
                         std::span<double> out) const = 0;

  // Writes atom `index` (length SignalDim()) into out.
  virtual void GetAtom(std::size_t index, std::span<double> out) const = 0;
};

}  // namespace sic

#endif  // SIC_ATOM_SOURCE_H_
