#pragma once

#include <stdexcept>
#include <string>

namespace trisum {

// A parameter lies outside the domain a check is stated for (e.g. p = 3 for a
// p > 3 congruence). Distinct from std::invalid_argument, which covers
// malformed input such as unknown ids or negative sizes.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exact computation produced a value that must be integral but is not.
// Seeing one of these means an arithmetic bug, never a mathematical result.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trisum
