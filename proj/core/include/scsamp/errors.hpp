#pragma once

#include <stdexcept>

namespace scsamp {

// Raised when a computation cannot meet its numeric contract: a Fock cutoff
// too small for the requested tail, a dyad mixture that grew past its cap, a
// quantity that should be real or normalized and is not.
//
// Precondition violations on arguments throw std::invalid_argument instead.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scsamp
