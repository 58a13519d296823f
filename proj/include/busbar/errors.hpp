#ifndef BUSBAR_ERRORS_HPP
#define BUSBAR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace busbar {

/// Geometry or argument outside the region where the force integrals are defined.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed numeric-method argument (e.g. a zero-point quadrature rule).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive integration ran out of subdivisions before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
      : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

private:
  double best_estimate_;
  double achieved_error_;
};

/// Invalid run or sweep configuration. Carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace busbar

#endif  // BUSBAR_ERRORS_HPP
