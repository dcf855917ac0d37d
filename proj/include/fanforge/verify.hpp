#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fanforge/serialize.hpp"

namespace fanforge {

using distance_fn = std::function<rational(const point&, const point&)>;

struct verify_options {
  std::string suite = "all";  // metric | group | action | collapse | all
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  // Metric under test; defaults to `dist`.
  distance_fn distance;
};

struct verify_failure {
  std::string property;
  json inputs;
};

struct verify_report {
  std::string suite;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0;
  std::vector<verify_failure> failures;

  bool ok() const { return failures.empty(); }
};

// Throws InvalidArgument for an unknown suite name.
verify_report run_verify(const verify_options& options);

// Timing is left out unless asked for, so equal seeds give equal output.
json to_json(const verify_report& r, bool include_timing = false);

}  // namespace fanforge
