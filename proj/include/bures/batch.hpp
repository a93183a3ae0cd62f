#pragma once

// Sample-parallel kernels. Every kernel has a serial reference path; both paths
// produce bit-identical results because each sample is evaluated independently
// from its own derived seed and results are stored by index.

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "bures/metric.hpp"
#include "bures/su3.hpp"

namespace bures {

enum class Execution { serial, parallel };

/// Number of worker threads the parallel path will use.
int parallel_workers() noexcept;

/// out[i] = fn(i) for i in [0, n). If any call throws, the exception of the
/// lowest failing index is rethrown after all iterations complete.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, Execution exec = Execution::parallel) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Execution::parallel) {
#if defined(BURES_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// sample_interior(sample_seed(seed, i), margin) for i in [0, count).
std::vector<AngleVector> sample_batch(std::uint64_t seed, std::size_t count,
                                      double margin = kDefaultMargin);

std::vector<MetricTensor> metric_batch(std::span<const AngleVector> points, EngineKind engine,
                                       Execution exec = Execution::parallel);

}  // namespace bures
