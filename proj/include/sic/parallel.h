#ifndef SIC_PARALLEL_H_
#define SIC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace sic {

// Calls fn(i) for i in [0, n) on up to `workers` threads (0 picks the
// hardware concurrency). Work items are claimed in increasing order. If any
// call throws, remaining items are skipped and the exception from the
// smallest failing index is rethrown.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn);

int ResolveWorkers(int requested);

}  // namespace sic

#endif  // SIC_PARALLEL_H_
