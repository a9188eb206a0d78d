#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citemap {

/// Malformed or inconsistent input data. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}

  InputError(std::size_t line, const std::string& field, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": field '" + field + "': " + message),
        line_(line),
        field_(field) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

private:
  std::size_t line_ = 0;
  std::string field_;
};

/// A computation received arguments outside its domain.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A pipeline stage failed. Maps to CLI exit code 3.
class PipelineError : public std::runtime_error {
public:
  PipelineError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

}  // namespace citemap
