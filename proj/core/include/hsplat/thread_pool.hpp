// Copyright Contributors to the hsplat project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

namespace hsplat {

/// Number of worker threads to use when the caller passes 0:
/// HSPL_THREADS if set, hardware concurrency otherwise.
int default_thread_count();

/// Runs fn(i) for i in [0, count). Work items must write to disjoint state;
/// the schedule is unspecified but the result is then independent of the
/// thread count. threads <= 1 runs inline.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn);

/// Chunked variant: fn(begin, end) over a partition of [0, count).
void parallel_for_chunks(std::int64_t count, int threads, std::int64_t grain,
                         const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace hsplat
