#pragma once

#include <stdexcept>
#include <string>

namespace cyclecover {

/// Thrown when a request exceeds a documented resource limit, e.g. the
/// exhaustive solver variable cap or an exhausted noise-edge candidate set.
class CapacityError : public std::runtime_error {
  public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown on malformed input files (edge lists, QUBO files, CSV).
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cyclecover
