#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace broccoli {

/// Invalid problem or run configuration, detected before any search starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of a call was violated (wrong dimension, incomplete tree, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The environment produced a non-finite state. Aborts the whole search.
class EnvironmentFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exhaustive oracle refused a problem whose search space exceeds the cap.
class OracleCapExceeded : public ConfigError {
 public:
  OracleCapExceeded(long double size, long double cap);

  long double search_space_size() const { return size_; }
  long double cap() const { return cap_; }

 private:
  long double size_;
  long double cap_;
};

}  // namespace broccoli
