#pragma once

#include <cstddef>
#include <functional>

namespace chainspectra {

/// Worker count: `requested` when non-zero, else CHAIN_SPECTRA_THREADS, else
/// the available hardware parallelism (at least 1).
std::size_t resolve_threads(std::size_t requested = 0);

/// Runs body(i) for i in [0, count) over contiguous blocks on up to `threads`
/// workers. Callers write results by index, so output order never depends on
/// the thread count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace chainspectra
