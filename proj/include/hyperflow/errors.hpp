#pragma once

#include <stdexcept>
#include <string>

namespace hyperflow {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke a documented precondition (dimension mismatch, non-unit input).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The discrete surface is not immersed (degenerate tangents, zero normal).
class SingularGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The flow cannot continue: H <= 0 in IMCF, NaN, or convexity loss in strict mode.
class FlowDegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperflow
