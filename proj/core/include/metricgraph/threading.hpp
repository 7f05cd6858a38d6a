#pragma once

#include <cstddef>
#include <functional>

namespace metricgraph {

/// Worker count: hardware concurrency capped by METRICGRAPH_THREADS.
std::size_t worker_count();

/// Runs fn(begin, end) over a static partition of [0, n). Each chunk owns a
/// disjoint output range, so results are bit-identical to the sequential
/// order.
void parallel_rows(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace metricgraph
