#pragma once

#include <stdexcept>
#include <string>

namespace mixavg {

// Bad user input: malformed files, unknown flags, dimension mismatches.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure inside a fit (singular scatter, empty component).
// Restart-level: callers record it and move on, they do not abort.
class DegenerateFit : public std::runtime_error {
public:
  explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mixavg
