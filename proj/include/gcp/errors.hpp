#pragma once

#include <stdexcept>
#include <string>

namespace gcp {

// Bad argument value: off-lattice coordinate, theta outside [0,1], size < 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inputs that are individually valid but do not belong together.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact integer result does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class NoCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gcp
