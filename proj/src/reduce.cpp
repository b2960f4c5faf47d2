#include "bimeron/reduce.hpp"

#include <algorithm>
#include <cstdlib>

namespace bimeron {

int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("BIMERON_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return cached;
}

double pairwise_sum(const double* v, std::size_t count) {
  if (count <= 64) {
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += v[k];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
  const int count = end - begin;
  if (count <= 0) return;
  const int workers = std::min(worker_count(), count);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn] {
      // static contiguous partition
      const int lo = begin + static_cast<int>((static_cast<long long>(count) * w) / workers);
      const int hi = begin + static_cast<int>((static_cast<long long>(count) * (w + 1)) / workers);
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
}

double reduce_rows(int rows, const std::function<double(int)>& row_sum) {
  std::vector<double> partial(static_cast<std::size_t>(rows), 0.0);
  parallel_for(0, rows, [&](int i) { partial[static_cast<std::size_t>(i)] = row_sum(i); });
  return pairwise_sum(partial);
}

}  // namespace bimeron
