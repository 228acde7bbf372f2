#pragma once

#include <stdexcept>
#include <string>

namespace evenloop {

// Malformed input: bad graph data, out-of-range parameters, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured resource cap was hit (enumeration size, CFTP horizon, walk length).
class ResourceCap : public std::runtime_error {
 public:
  explicit ResourceCap(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evenloop
