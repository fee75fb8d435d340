#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace evogame {

// A parameter violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidRates : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// Malformed configuration text. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed configuration with a bad or unknown key.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace evogame
