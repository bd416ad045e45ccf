#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "sharp/radial.hpp"
#include "sharp/sphere.hpp"

namespace sharp::kernels {

/// results[i] = fn(i) for i in [0, count), one task per index. Indices run in
/// parallel under OpenMP but every result lands in its own slot, so the output
/// equals serial_map's bit for bit. The first exception thrown by any task is
/// rethrown after the loop.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<Result> results(count);
  std::exception_ptr error;
  const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(sharp_parallel_map_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return results;
}

/// Reference implementation of parallel_map.
template <class Result, class Fn>
std::vector<Result> serial_map(std::size_t count, Fn&& fn) {
  std::vector<Result> results(count);
  for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
  return results;
}

int thread_count();

std::vector<radial::DeficitReport> deficit_batch(
    std::span<const radial::RadialFunction> us, double n, radial::Statement s);
std::vector<radial::DeficitReport> deficit_batch_serial(
    std::span<const radial::RadialFunction> us, double n, radial::Statement s);

std::vector<double> onofri_batch(std::span<const sphere::AxiFunction> us);
std::vector<double> onofri_batch_serial(std::span<const sphere::AxiFunction> us);

/// Consistent-statement deficit of the extremal at each mass.
std::vector<double> extremal_deficit_sweep(double n, std::span<const double> masses);
std::vector<double> extremal_deficit_sweep_serial(double n,
                                                  std::span<const double> masses);

}  // namespace sharp::kernels
