#pragma once

#include <stdexcept>
#include <string>

namespace crownkit {

// Bad user input: malformed cycle strings, degree mismatches, elements
// outside the stated group, malformed catalog records. CLI exit code 2.
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured resource cap was exceeded (element cap, interval BFS cap,
// backtracking cap). CLI exit code 3.
struct CapError : std::runtime_error {
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

// An internal contract that valid inputs cannot violate (e.g. a subdirect
// subgroup that is not a product of full strips). Signals a bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace crownkit
