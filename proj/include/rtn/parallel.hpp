#pragma once

#include <cstddef>
#include <functional>

namespace rtn {

/// Worker count for sweeps: RTNDEPH_WORKERS if set, else hardware
/// concurrency. Results never depend on it; work items write to
/// index-addressed slots.
std::size_t worker_count();

/// Run fn(0..n-1) across workers. fn must only touch state owned by its
/// index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rtn
