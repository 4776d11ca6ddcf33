#ifndef QSETS_ERROR_HPP
#define QSETS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qsets {

/// A mathematical precondition was violated (shape mismatch, mismatched
/// quantum sets, relation that is not a partial function, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Malformed serialized input; `path()` names the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qsets

#endif  // QSETS_ERROR_HPP
