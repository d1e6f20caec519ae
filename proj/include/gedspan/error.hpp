#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gedspan {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad offsets, mismatched
// lengths, malformed probabilities, invalid UTF-8, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Malformed `$`-annotated text. `offset()` is the codepoint index into the
// annotated input where the problem was detected.
class ParseError : public Error {
 public:
  enum class Kind { kUnbalanced, kNested };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// A zero-length span has no token that can carry the M label.
class LabelingError : public Error {
 public:
  using Error::Error;
};

// Predictions reference documents that the gold set does not contain.
class EvaluationError : public Error {
 public:
  EvaluationError(std::vector<std::string> missing_ids, const std::string& what)
      : Error(what), missing_ids_(std::move(missing_ids)) {}

  const std::vector<std::string>& missing_ids() const noexcept {
    return missing_ids_;
  }

 private:
  std::vector<std::string> missing_ids_;
};

// A data file violates its declared format. `line()` is 1-based, 0 when the
// problem is not tied to a line.
class DataError : public Error {
 public:
  DataError(std::string source, std::size_t line, const std::string& what)
      : Error(Format(source, line, what)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string Format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!out.empty()) out += ": ";
    return out + what;
  }

  std::string source_;
  std::size_t line_;
};

}  // namespace gedspan
