#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparqlsat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(std::string name)
      : Error("unsupported feature: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnsupportedOpaquePredicate : public Error {
 public:
  using Error::Error;
};

class NormalizationBlowup : public Error {
 public:
  using Error::Error;
};

class SchemeSetBlowup : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotUnionFree : public Error {
 public:
  using Error::Error;
};

class NotAFPattern : public Error {
 public:
  using Error::Error;
};

class NotWellDesigned : public Error {
 public:
  using Error::Error;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

class InvalidConstants : public Error {
 public:
  using Error::Error;
};

class BoundTooLarge : public Error {
 public:
  using Error::Error;
};

class EmptyChoiceSet : public Error {
 public:
  using Error::Error;
};

}  // namespace sparqlsat
