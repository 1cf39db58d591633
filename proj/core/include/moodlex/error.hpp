#pragma once

#include <stdexcept>
#include <string>

namespace moodlex {

// Bad inputs: malformed files, unknown labels, out-of-range parameters.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed inputs that admit no result: singular systems, constant
// series, too few usable documents.
struct ComputeError : std::runtime_error {
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moodlex
