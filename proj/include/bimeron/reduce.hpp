#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bimeron {

/// Worker cap: BIMERON_THREADS if set (clamped to >= 1), else the hardware
/// concurrency. Read once per process.
int worker_count();

/// Fixed-shape pairwise summation. The reduction tree depends only on the
/// element count, never on thread count or data, so sums are bit-reproducible.
double pairwise_sum(const double* v, std::size_t count);
double pairwise_sum(const std::vector<double>& v);

/// Run fn(i) for i in [begin, end) across workers. fn must only write to
/// locations owned by index i; the partition does not affect results.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

/// Deterministic parallel reduction over rows: row_sum(i) computes the
/// (deterministic) partial sum of row i; partials are combined pairwise in
/// row order. Bit-identical for any worker count.
double reduce_rows(int rows, const std::function<double(int)>& row_sum);

}  // namespace bimeron
