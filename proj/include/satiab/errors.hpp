#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace satiab {

// Allocation that cannot be evaluated (e.g. overlap interference over a zero bandwidth).
class InvalidAllocation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Requested rate is not reachable with a representable power.
class Infeasible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Carries every violated invariant, not just the first one found.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "validation failed";
    for (const auto& p : items) {
      out += "; ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace satiab
