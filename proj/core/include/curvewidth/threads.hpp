#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace curvewidth {

// Worker cap from CURVEWIDTH_THREADS (defaults to hardware concurrency).
int worker_count();

// Runs fn(chunk) for chunk in [0, chunks) on up to worker_count() threads and
// returns the results in chunk order, so output is independent of the number
// of workers.
std::vector<std::uint64_t> run_chunked(int chunks,
                                       const std::function<std::uint64_t(int)>& fn);

}  // namespace curvewidth
