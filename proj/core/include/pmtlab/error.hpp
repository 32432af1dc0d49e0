#pragma once

#include <stdexcept>
#include <string>

namespace pmt {

// Raised whenever an operation rejects its input. The message names the
// offending node, parameter or stage.
class Rejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmt
