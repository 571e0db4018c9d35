#pragma once

#include <stdexcept>
#include <string>

namespace spm {

/// Malformed input: bad constructor arguments, out-of-range indices,
/// vectors of the wrong length.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A predicate or construction was asked about an object outside its
/// domain (improper submodule, non-local ring, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed a configured size limit.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string budget, std::size_t limit, std::size_t requested)
      : std::runtime_error("budget exceeded: " + budget + " (limit " +
                           std::to_string(limit) + ", needed " +
                           std::to_string(requested) + ")"),
        budget_(std::move(budget)) {}
  const std::string& budget() const { return budget_; }

 private:
  std::string budget_;
};

}  // namespace spm
