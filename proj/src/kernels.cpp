#include "sharp/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sharp/extremals.hpp"

namespace sharp::kernels {

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<radial::DeficitReport> deficit_batch(
    std::span<const radial::RadialFunction> us, double n, radial::Statement s) {
  return parallel_map<radial::DeficitReport>(us.size(), [&](std::size_t i) {
    return s == radial::Statement::N1 ? radial::deficit_n1(us[i])
                                      : radial::deficit(us[i], n, s);
  });
}

std::vector<radial::DeficitReport> deficit_batch_serial(
    std::span<const radial::RadialFunction> us, double n, radial::Statement s) {
  return serial_map<radial::DeficitReport>(us.size(), [&](std::size_t i) {
    return s == radial::Statement::N1 ? radial::deficit_n1(us[i])
                                      : radial::deficit(us[i], n, s);
  });
}

std::vector<double> onofri_batch(std::span<const sphere::AxiFunction> us) {
  return parallel_map<double>(
      us.size(), [&](std::size_t i) { return sphere::onofri_deficit(us[i]); });
}

std::vector<double> onofri_batch_serial(std::span<const sphere::AxiFunction> us) {
  return serial_map<double>(
      us.size(), [&](std::size_t i) { return sphere::onofri_deficit(us[i]); });
}

std::vector<double> extremal_deficit_sweep(double n, std::span<const double> masses) {
  return parallel_map<double>(masses.size(), [&](std::size_t i) {
    return extremals::extremal_deficit(extremals::ExtremalParams::from_mass(n, masses[i]));
  });
}

std::vector<double> extremal_deficit_sweep_serial(double n,
                                                  std::span<const double> masses) {
  return serial_map<double>(masses.size(), [&](std::size_t i) {
    return extremals::extremal_deficit(extremals::ExtremalParams::from_mass(n, masses[i]));
  });
}

}  // namespace sharp::kernels
