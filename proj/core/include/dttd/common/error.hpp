#pragma once

#include <stdexcept>
#include <string>

namespace dttd {

// Bad inputs or shapes: malformed specs, dimension mismatches, invalid config.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem and on-disk format failures.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A verified numeric property failed (gradient check, NaN abort, experiment gate).
class CheckFailure : public std::runtime_error {
 public:
  explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dttd
