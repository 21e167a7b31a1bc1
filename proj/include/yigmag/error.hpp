#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace yigmag {

// Base of everything the library throws. Messages are prefixed with the
// operation name, e.g. "kittel_frequency: negative bracket".
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments describe a non-physical regime (negative Kittel bracket, f_m <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Arguments violate an operation's preconditions or are mutually inconsistent.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Sampled data cannot represent the requested signal (Nyquist, aliasing).
class SamplingError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Iterative or numerical procedure failed (non-convergence, unwrap integrity).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Fit data does not constrain the model.
class DegenerateData : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ConfigError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Soft diagnostics (validity-window and Bedrosian warnings). Operations append
// to a sink when one is supplied and stay silent otherwise.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

}  // namespace yigmag
