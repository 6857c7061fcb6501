#pragma once

// Monte-Carlo replication kernels. The parallel kernel distributes
// replications over OpenMP threads; the serial kernel is the reference it is
// tested against. Both write result r into slot r, so outputs are identical.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <vector>

#ifdef ISOBAND_HAVE_OPENMP
#include <omp.h>
#endif

namespace isoband {

enum class Execution { serial, parallel };

/// Independent stream for (seed, stream, replication).
inline std::mt19937_64 replication_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
  return std::mt19937_64(seq);
}

template <class Result, class Fn>
std::vector<Result> replicate_serial(std::size_t count, Fn&& fn) {
  std::vector<Result> out(count);
  for (std::size_t r = 0; r < count; ++r) {
    out[r] = fn(r);
  }
  return out;
}

template <class Result, class Fn>
std::vector<Result> replicate_parallel(std::size_t count, Fn&& fn) {
#ifdef ISOBAND_HAVE_OPENMP
  std::vector<Result> out(count);
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < n; ++r) {
    try {
      out[static_cast<std::size_t>(r)] = fn(static_cast<std::size_t>(r));
    } catch (...) {
#pragma omp critical(isoband_replicate_failure)
      if (!failure) {
        failure = std::current_exception();
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return out;
#else
  return replicate_serial<Result>(count, std::forward<Fn>(fn));
#endif
}

template <class Result, class Fn>
std::vector<Result> replicate(std::size_t count, Execution mode, Fn&& fn) {
  if (mode == Execution::parallel) {
    return replicate_parallel<Result>(count, std::forward<Fn>(fn));
  }
  return replicate_serial<Result>(count, std::forward<Fn>(fn));
}

}  // namespace isoband
