#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace jcentropy {

// Every library error carries a short category token. The CLI prints it as
// the first field of its one-line diagnostics and maps it to an exit code,
// so categories are part of the stable interface.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

// Basis too small: the requested state leaks past the truncation edge.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what)
      : Error("truncation-insufficient", what) {}
};

// An operator handed to a Hermitian-only routine failed the symmetry check.
class NonHermitianError : public Error {
 public:
  explicit NonHermitianError(const std::string& what)
      : Error("non-hermitian", what) {}
};

// State too close to pure for a formula with a 1/det or log(det) factor.
class DegenerateStateError : public Error {
 public:
  explicit DegenerateStateError(const std::string& what)
      : Error("degenerate-state", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error("invalid-config", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io-error", what) {}
};

}  // namespace jcentropy
