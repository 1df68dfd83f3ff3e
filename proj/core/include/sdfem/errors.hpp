#pragma once

#include <stdexcept>
#include <string>

namespace sdfem {

// Invalid mesh/solver/run parameters. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Element-level assembly failure (degenerate geometry, bad quadrature).
class AssemblyError : public std::runtime_error {
public:
  explicit AssemblyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear algebra failures. CLI maps solver failures to exit code 1.
class SolveError : public std::runtime_error {
public:
  explicit SolveError(const std::string& msg) : std::runtime_error(msg) {}
};

class SingularMatrixError : public SolveError {
public:
  explicit SingularMatrixError(const std::string& msg) : SolveError(msg) {}
};

class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Operation requested on data that does not support it (e.g. exact-solution
// evaluation on a problem without one).
class UnsupportedError : public std::logic_error {
public:
  explicit UnsupportedError(const std::string& msg) : std::logic_error(msg) {}
};

// Convergence rate requested for a non-positive error value.
class UndefinedRateError : public std::domain_error {
public:
  explicit UndefinedRateError(const std::string& msg) : std::domain_error(msg) {}
};

} // namespace sdfem
