#pragma once

#include <complex>
#include <functional>
#include <string>

#include "clark/errors.hpp"

namespace testsupport {

// Runs fn and returns the contract-error code it throws, "" when none.
inline std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const clark::Error& e) {
    return e.code();
  } catch (...) {
    return "<unexpected exception type>";
  }
  return "";
}

inline double cdist(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b);
}

}  // namespace testsupport
