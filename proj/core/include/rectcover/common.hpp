#pragma once

#include <stdexcept>
#include <string>

namespace rectcover {

// Raised when input data violates a documented precondition.  Messages name
// the first offending entry (row-major) or the offending line of a file.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation would exceed its configured size or search budget.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rectcover
