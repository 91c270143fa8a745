#pragma once

#include <stdexcept>
#include <string>

namespace qbx {

// Thrown for bad arguments, bad configs, unsupported capability requests.
// The CLI maps this to exit code 1.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when the math goes wrong at runtime: geometry preconditions violated
// (quadrature node inside an expansion ball), tolerances not reached, fits
// with too little data. The CLI maps this to exit code 2.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct geometry_error : numeric_error {
  explicit geometry_error(const std::string& msg) : numeric_error(msg) {}
};

}  // namespace qbx
