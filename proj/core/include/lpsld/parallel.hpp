#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace lpsld {

/// Worker count: an explicit request wins, then LDPROJ_THREADS, then the
/// hardware concurrency. Always at least 1.
[[nodiscard]] int resolve_threads(std::optional<int> requested = std::nullopt);

/// Runs body(begin, end) over fixed blocks of [0, count). Blocks are handed
/// out dynamically but their boundaries depend only on count and block, so
/// callers that write per-index results and reduce afterwards get the same
/// answer for any thread count. The first exception thrown by a block is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t block = 256);

/// Neumaier-compensated sum, in index order.
[[nodiscard]] double compensated_sum(std::span<const double> values);

}  // namespace lpsld
