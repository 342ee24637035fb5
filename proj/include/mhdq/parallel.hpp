#pragma once

#include <functional>
#include <span>

namespace mhdq {

/// Worker count from MHDQ_THREADS; 0 means serial. When the variable is
/// unset the hardware concurrency is used.
int default_workers();

/// Runs body(k) for k in [begin, end), split into contiguous slabs over
/// `workers` threads (inline when workers <= 1). Each k is visited once.
void parallel_for(int begin, int end, int workers, const std::function<void(int)>& body);

/// Sum with a fixed pairwise tree: fixed-size leaf blocks summed left to
/// right, then combined pairwise. The result depends only on the input,
/// never on the worker count.
double tree_sum(std::span<const double> values, int workers = 0);

/// Plain left-to-right sum.
double serial_sum(std::span<const double> values);

}  // namespace mhdq
