#pragma once

#include <stdexcept>
#include <string>

namespace fracac {

// Contract violations (bad arguments, mismatched grids, invalid configs).
inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Failures of the numerics themselves (stagnation, NaN gradients, all
// descent starts failing). Kept distinct from argument errors so callers
// can map them to different exit codes.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fracac
