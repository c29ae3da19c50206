#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/exactalg/expr.hpp"

namespace nabla {

enum class StatementKind { Field, Ring, Ideal, Scheme, FatPoint, System, Command };

struct CommandArg {
  enum class Kind { Name, Integer };

  Kind kind = Kind::Name;
  std::string name;
  long value = 0;

  friend bool operator==(const CommandArg&, const CommandArg&) = default;
};

/// One line of a session script. Only the fields of the statement's kind are set.
struct Statement {
  StatementKind kind = StatementKind::Command;
  std::size_t line = 0;
  /// Declared name, or the optional binding of a command.
  std::string name;
  /// Field: nullopt means QQ.
  std::optional<std::uint64_t> prime;
  /// Ring.
  std::vector<std::string> variables;
  /// Ideal.
  std::vector<ExprPtr> generators;
  /// Scheme and FatPoint: <ring>/<ideal>.
  std::string ring;
  std::string ideal;
  /// System: lsystem, or jets(<base>, <point>).
  bool jets = false;
  std::string base;
  std::vector<Rational> point;
  /// Command.
  std::string command;
  std::vector<CommandArg> args;

  friend bool operator==(const Statement& a, const Statement& b);
};

struct Script {
  std::vector<Statement> statements;

  /// Declaration or command bound to `name`, or a command whose rendering is `name`.
  const Statement* find(std::string_view name) const;
};

/// The command keywords of the language, in documentation order.
const std::vector<std::string>& command_keywords();

/// Errors: SyntaxError (line, column, expected), UnboundName, Redefinition,
/// InvalidArgument (a name of the wrong kind in a declaration).
Script parse_script(std::string_view text);

/// Single-line rendering; parse_script(render_statement(s)) reproduces s (up to line).
std::string render_statement(const Statement& s);

std::string render_script(const Script& script);

/// The name `execute` accepts for a command: its binding, else its rendering.
std::string command_handle(const Statement& s);

}  // namespace nabla
