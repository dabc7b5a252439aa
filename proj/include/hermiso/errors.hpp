#pragma once

#include <stdexcept>
#include <string>

namespace hermiso {

/// Malformed or inconsistent input data (files, scenarios, moment sets).
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hermiso
