#pragma once

#include <stdexcept>
#include <string>

namespace dirloc {

/// Invalid or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cartesian grid too coarse in momentum space for the requested state.
class NyquistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative or node-doubling numerics failed to settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirloc
