#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mvl {

/// Malformed input: wrong dimensions, out-of-range indices, undeclared atoms,
/// schema violations. Distinct from a well-formed input that fails a check.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& msg, std::string path = "")
      : std::runtime_error(path.empty() ? msg : path + ": " + msg),
        path_(std::move(path)) {}

  /// JSON pointer to the offending node; empty when not document-related.
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A well-formed object that violates an algebraic requirement.
class AxiomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Refused because the requested exhaustive search exceeds a configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition (e.g. asking for a
/// witness of a sentence that is not derivable).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mvl
