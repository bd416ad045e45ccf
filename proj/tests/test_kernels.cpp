#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "sharp/kernels.hpp"

using namespace sharp;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<radial::RadialFunction> samples(std::size_t count) {
  std::vector<radial::RadialFunction> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(radial::random_admissible(100 + i, 3 + i % 6, 4.0 + i % 5, 0.5 + i % 3));
  }
  return out;
}

}  // namespace

TEST_CASE("parallel deficits equal the serial reference bit for bit") {
  omp_set_num_threads(4);
  const auto us = samples(64);
  for (const auto s : {radial::Statement::Consistent, radial::Statement::AsPrinted}) {
    const auto par = kernels::deficit_batch(us, 2.5, s);
    const auto ser = kernels::deficit_batch_serial(us, 2.5, s);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(same_bits(par[i].deficit, ser[i].deficit));
      CHECK(same_bits(par[i].mass, ser[i].mass));
    }
  }
  const auto par = kernels::deficit_batch(us, 1.0, radial::Statement::N1);
  const auto ser = kernels::deficit_batch_serial(us, 1.0, radial::Statement::N1);
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(same_bits(par[i].deficit, ser[i].deficit));
}

TEST_CASE("parallel Onofri and extremal sweeps equal the serial reference") {
  omp_set_num_threads(3);
  std::vector<sphere::AxiFunction> fs;
  for (int i = 0; i < 40; ++i) fs.push_back(sphere::random_band_limited(i, 1 + i % 5, 1.0));
  const auto a = kernels::onofri_batch(fs);
  const auto b = kernels::onofri_batch_serial(fs);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));

  std::vector<double> masses;
  for (int i = 0; i < 50; ++i) masses.push_back(0.6 * std::pow(1.2, i));
  const auto c = kernels::extremal_deficit_sweep(3.0, masses);
  const auto d = kernels::extremal_deficit_sweep_serial(3.0, masses);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(same_bits(c[i], d[i]));
}

TEST_CASE("parallel_map keeps order and rethrows") {
  omp_set_num_threads(4);
  const auto squares = kernels::parallel_map<long>(1000, [](std::size_t i) { return long(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) CHECK(squares[i] == long(i * i));
  CHECK_THROWS_AS(kernels::parallel_map<int>(100,
                                             [](std::size_t i) -> int {
                                               if (i == 37) throw std::runtime_error("boom");
                                               return 0;
                                             }),
                  std::runtime_error);
  CHECK(kernels::thread_count() >= 1);
}

TEST_CASE("invalid inputs surface from the batch") {
  const radial::RadialFunction neg(radial::Grid::uniform(1.0, 3), {0.0, -1.0, 0.0});
  std::vector<radial::RadialFunction> us{neg};
  CHECK_THROWS(kernels::deficit_batch(us, 2.0, radial::Statement::Consistent));
}
