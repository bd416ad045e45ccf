#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sharp::verify {

struct Options {
  int samples = 100;       // random inputs per sampled property
  std::uint64_t seed = 1;  // first seed; sample i uses seed + i
};

struct Check {
  std::string module;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed value of the checked quantity
  double tolerance = 0.0;  // what `measured` is compared against
};

/// Module invariants, one Check per property. Sampled properties use
/// options.samples inputs; the rest are fixed oracle comparisons.
std::vector<Check> run_all(const Options& options);

bool all_passed(const std::vector<Check>& checks);

}  // namespace sharp::verify
