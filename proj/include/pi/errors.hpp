#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pi {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical or grammatical problem in program text.
struct syntax_error : error {
  syntax_error(const std::string& what, std::size_t line, std::size_t column)
      : error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

struct type_error : error {
  using error::error;
};

// A value does not inhabit the type it was used at, or an index is out of range.
struct value_error : error {
  using error::error;
};

// Raised when the evaluator meets a value of the wrong shape or a primitive
// it cannot run classically.
struct eval_error : error {
  using error::error;
};

// Size or dimension mismatch between semantic objects.
struct size_error : error {
  using error::error;
};

}  // namespace pi
