#pragma once

#include <stdexcept>
#include <string>

namespace ffhyper {

// Invalid argument for the mathematical operation (non-prime p, x = 0 for
// dlog, mismatched backends, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size or search bound was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A distinguished character (chi3, chi4) does not exist for this q.
class ExistenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The field violates an identity's congruence requirement on q.
class ConstraintError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unknown identity id.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace ffhyper
