#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tailbound {

// Argument outside the domain on which a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A bound's hypothesis is not met (e.g. the missing-factor threshold on t).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

class InfeasibleMomentsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Convolution support or grid would exceed the configured guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant broken (e.g. power means not monotone).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
inline std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "\n";
    out += s;
  }
  return out;
}
}  // namespace detail

// Schema problems in an instance document; each entry carries a field path.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<std::string> issues)
      : std::runtime_error(detail::join_lines(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Cross-field constraint violations, all of them, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : std::runtime_error(detail::join_lines(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace tailbound
