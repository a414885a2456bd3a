// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bellzone {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

struct ParseError : std::runtime_error {
  ParseError(size_t line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " +
                           message),
        line(line_number) {}

  size_t line;
};

struct MissingContextError : std::runtime_error {
  explicit MissingContextError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace bellzone
