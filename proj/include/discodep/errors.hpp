#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace discodep {

// Base for every error raised by the toolkit. Callers that only care about
// "something in the data was wrong" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. `offset` is a byte offset for JSON payloads and a
// 1-based line number for line-oriented formats; `has_offset()` is false
// when neither applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset), has_offset_(true) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t offset() const { return offset_; }
  bool has_offset() const { return has_offset_; }

 private:
  std::size_t offset_ = 0;
  bool has_offset_ = false;
};

// Structurally well-formed input that violates a domain invariant
// (bad head index, cycle, dimension mismatch, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace discodep
