#pragma once

#include <stdexcept>
#include <string>

namespace slope {

enum class ErrorCategory {
  contract,
  io,
  format,
  config,
  generation,
  oracle,
  lookup,
};

const char* to_string(ErrorCategory category);

// Base of every error thrown by the library. The category drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error(ErrorCategory::contract, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorCategory::format, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class OracleError : public Error {
 public:
  explicit OracleError(const std::string& what) : Error(ErrorCategory::oracle, what) {}
};

class LookupError : public Error {
 public:
  explicit LookupError(const std::string& what) : Error(ErrorCategory::lookup, what) {}
};

}  // namespace slope
