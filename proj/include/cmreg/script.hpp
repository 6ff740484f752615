#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmreg/parse.hpp"

namespace cmreg {

/// Undeclared names, wrong kinds of names, mixed rings: statically detected
/// misuse of a script.
class SemanticError : public Error {
 public:
  SemanticError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// One script statement. Payloads are kept in canonical text form, so two
/// statements are equal when they print identically.
struct Statement {
  enum class Kind { Ring, Ideal, Expr, Arrangement, Subspaces, Action, Show, Assert, Verify };

  Kind kind;
  int line = 0;
  int column = 0;
  /// Declared name, or the name a command refers to.
  std::string name;
  /// Ring: the field. Ideal: "expr" or "random product". Arrangement:
  /// "forms", "boolean" or "random". Show/Verify: the subcommand. Assert:
  /// the function (reg, rho, degree, betti).
  std::string verb;
  /// Ring variables, expression text, forms, subspace atoms, action text or
  /// class atoms.
  std::vector<std::string> items;
  /// Integer parameters: random sizes, class depth, betti indices, and the
  /// asserted bound (last).
  std::vector<long> numbers;
  /// Assert comparison operator.
  std::string op;

  /// Structural equality; source positions are ignored.
  bool operator==(const Statement& o) const {
    return kind == o.kind && name == o.name && verb == o.verb && items == o.items && numbers == o.numbers && op == o.op;
  }
  std::string to_string() const;
};

struct Script {
  std::vector<Statement> statements;
  bool operator==(const Script&) const = default;
  /// One statement per line; parse_script(to_string()) == *this.
  std::string to_string() const;
};

/// Syntax and name checks. `field_override` replaces the field of every ring
/// declaration.
Script parse_script(std::string_view text, std::optional<Field> field_override = std::nullopt);

struct RunOptions {
  enum class Format { Text, Json };
  /// Drawn from std::random_device and recorded when absent.
  std::optional<std::uint64_t> seed;
  Format format = Format::Text;
  /// Random draws per filter-regular search.
  int trials = 50;
};

struct CommandResult {
  int line;
  /// One JSON object, serialized.
  std::string json;
  std::string text;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<CommandResult> results;
  /// 0 ok, 1 assertion failed, 2 parse, semantic or module error, 3
  /// internal consistency error.
  int exit_code = 0;
  std::string error_kind;
  std::string error_message;
  int error_line = 0;
  int error_column = 0;

  std::string to_json() const;
  std::string to_text() const;
  std::string render(RunOptions::Format f) const { return f == RunOptions::Format::Json ? to_json() : to_text(); }
};

RunReport run_script(const Script& script, const RunOptions& options);
/// Parses and runs; parse failures are reported with exit code 2.
RunReport run_script_text(std::string_view text, const RunOptions& options,
                          std::optional<Field> field_override = std::nullopt);

}  // namespace cmreg
