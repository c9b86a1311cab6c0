#pragma once

#include "ngnep/library.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ngnep {

/// Problem-file error. Syntax errors carry a 1-based line and column;
/// schema errors carry the JSON pointer of the offending value.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column, std::string pointer = {})
      : std::runtime_error(message), line_(line), column_(column), pointer_(std::move(pointer)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& pointer() const { return pointer_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string pointer_;
};

ProblemDescription parse_problem(std::string_view text);
ProblemDescription load_problem_file(const std::string& path);

nlohmann::json to_json(const ProblemDescription& description);
std::string serialize_problem(const ProblemDescription& description);

}  // namespace ngnep
