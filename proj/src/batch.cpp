#include "bures/batch.hpp"

#if defined(BURES_HAVE_OPENMP)
#include <omp.h>
#endif

namespace bures {

int parallel_workers() noexcept {
#if defined(BURES_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<AngleVector> sample_batch(std::uint64_t seed, std::size_t count, double margin) {
  std::vector<AngleVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_interior(sample_seed(seed, i), margin));
  return out;
}

std::vector<MetricTensor> metric_batch(std::span<const AngleVector> points, EngineKind engine,
                                       Execution exec) {
  return parallel_map<MetricTensor>(
      points.size(), [&](std::size_t i) { return metric_tensor(points[i], engine); }, exec);
}

}  // namespace bures
