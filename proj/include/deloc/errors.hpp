#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace deloc {

// Invalid specification (bad field in a DistributionSpec/EnsembleSpec/config).
// The message names the offending field.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Invalid argument to an operation (index set out of range, guard violation).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Structurally degenerate input (rank-deficient audit matrix, isolated vertex).
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (eigensolver non-convergence). Carries the seed of the
// trial that produced the offending matrix when known.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
  NumericalError(const std::string& msg, std::uint64_t master, std::uint64_t trial)
      : std::runtime_error(msg + " [master_seed=" + std::to_string(master) +
                           " trial=" + std::to_string(trial) + "]"),
        has_seed(true),
        master_seed(master),
        trial_index(trial) {}

  bool has_seed = false;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

// Requested a non-edge operation on a complete graph.
class NoNonEdgesError : public std::runtime_error {
 public:
  explicit NoNonEdgesError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace deloc
