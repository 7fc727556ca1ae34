#ifndef MORRAD_PARALLEL_HPP_
#define MORRAD_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace morrad {

// Process-wide worker budget. Initialised from MORRAD_THREADS when set,
// otherwise 1. Results never depend on the budget: work is split into a
// fixed number of chunks and partial results are combined in chunk order.
int thread_budget();
void set_thread_budget(int threads);

// Runs body(chunk) for chunk in [0, chunks) on up to thread_budget()
// workers. Each chunk index is processed exactly once.
void parallel_chunks(std::size_t chunks,
                     const std::function<void(std::size_t)>& body);

}  // namespace morrad

#endif  // MORRAD_PARALLEL_HPP_
