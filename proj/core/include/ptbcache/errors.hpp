#pragma once

#include <stdexcept>
#include <string>

namespace ptb {

// Parameters violate a construction's preconditions or an interface
// contract. CLI exit code 2.
class design_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested design exists syntactically but is not feasible (no
// consistent LCM scaling, memory constraint violated, schedule cannot
// exhaust split counts, no positive length ratio). CLI exit code 3.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A built scheme failed bit-exact validation. CLI exit code 4.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptb
