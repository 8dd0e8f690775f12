#pragma once

#include <stdexcept>
#include <string>

namespace hankel {

/// Slice point violates eta(v5, v6) < 1; M0 and N0 are undefined there.
class OutsideEffectiveDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver exhausted its budget without meeting its stopping rule.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builder parameters outside the region where a closed-form certificate applies.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed certificate: negative weights, wrong shapes, non-finite data.
class InvalidCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hankel
