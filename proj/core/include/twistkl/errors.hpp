#pragma once

#include <stdexcept>
#include <string>

namespace twistkl {

/// Bad user input: malformed descriptors, invalid automorphisms, size caps,
/// inconsistent run configuration. Maps to CLI exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Group too large for exhaustive treatment.
class SizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// An internal assertion failed. This signals a bug (or a convention fault),
/// never bad input. Maps to CLI exit code 2.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A mathematical identity that is claimed to hold was found to fail on
/// concrete data. Maps to CLI exit code 1.
class FalsifiedClaim : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace twistkl
