#pragma once

#include <stdexcept>

namespace ndqmc {

/// Thrown when an exact enumeration would exceed its budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ndqmc
