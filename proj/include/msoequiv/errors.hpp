#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msoeq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t col = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")" : msg),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

/// A label, rank or variable that does not fit the declared signature.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap was hit. Never converted into an answer.
class ResourceExceeded : public Error {
 public:
  explicit ResourceExceeded(std::string stage, const std::string& detail = "")
      : Error("resource exceeded in stage " + stage + (detail.empty() ? "" : ": " + detail)),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace msoeq
