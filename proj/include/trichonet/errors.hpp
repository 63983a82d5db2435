#pragma once

#include <stdexcept>
#include <string>

namespace trichonet {

// Invalid model/configuration parameters (rejected before any computation).
class ParamError : public std::invalid_argument {
 public:
  explicit ParamError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input outside an operation's documented domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Malformed or unusable input data (files, histograms, edge lists).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Degenerate or unsolvable fitting problem.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inconsistent run configuration (grids, horizons, stability bounds).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace trichonet
