#pragma once

#include <stdexcept>
#include <string>

namespace compactness {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used in CLI error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension_mismatch", what) {}
};

class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& what) : Error("field_mismatch", what) {}
};

/// An enumeration or search would exceed its configured budget.
class GuardExceeded : public Error {
 public:
  explicit GuardExceeded(const std::string& what) : Error("guard_exceeded", what) {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error("invalid_input", what) {}
};

class InconsistentSystem : public Error {
 public:
  explicit InconsistentSystem(const std::string& what) : Error("inconsistent_system", what) {}
};

}  // namespace compactness
