#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reconf {

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that refers to something that does not exist, or
/// violates a structural rule.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void line_column(const std::string& text, std::size_t offset,
                        std::size_t& line, std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

}  // namespace detail
}  // namespace reconf
