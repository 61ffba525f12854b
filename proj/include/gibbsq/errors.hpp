#pragma once

#include <stdexcept>
#include <string>

namespace gq {

// Enumeration/size budgets exceeded (exact marginals, up-set checks, ...).
// The CLI maps this to exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration (unknown field, invalid value). CLI exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gq
