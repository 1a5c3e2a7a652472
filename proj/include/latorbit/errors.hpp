#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latorbit {

// Frame whose Gram determinant is zero within tolerance.
struct DegenerateFrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration aborted because the output cap was reached.
struct CapExceededError : std::runtime_error {
  std::uint64_t emitted;
  explicit CapExceededError(std::uint64_t n)
      : std::runtime_error("enumeration cap exceeded after " + std::to_string(n) + " matrices"),
        emitted(n) {}
};

// Integer arithmetic left the exactly representable range.
struct IntOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace latorbit
