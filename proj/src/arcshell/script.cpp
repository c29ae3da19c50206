#include "nabla/arcshell/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "nabla/error.hpp"

namespace nabla {

bool operator==(const Statement& a, const Statement& b) {
  if (a.generators.size() != b.generators.size()) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    if (!(*a.generators[i] == *b.generators[i])) return false;
  }
  return a.kind == b.kind && a.name == b.name && a.prime == b.prime && a.variables == b.variables &&
         a.ring == b.ring && a.ideal == b.ideal && a.jets == b.jets && a.base == b.base &&
         a.point == b.point && a.command == b.command && a.args == b.args;
}

const Statement* Script::find(std::string_view name) const {
  for (const auto& s : statements) {
    if (!s.name.empty() && s.name == name) return &s;
  }
  for (const auto& s : statements) {
    if (s.kind == StatementKind::Command && render_statement(s) == name) return &s;
  }
  return nullptr;
}

namespace {

struct Arity {
  std::size_t min;
  std::size_t max;
  bool nabla_form;
};

const std::map<std::string, Arity>& arities() {
  static const std::map<std::string, Arity> table = {
      {"arc", {2, 2, true}},      {"autoarc", {1, 2, true}}, {"reduce", {1, 1, false}},
      {"dim", {1, 1, false}},     {"length", {1, 1, false}}, {"simple", {1, 1, false}},
      {"defect", {3, 3, false}},  {"trace", {3, 3, false}},  {"probe", {3, 3, false}},
      {"measure", {4, 5, false}}, {"zeta", {3, 3, false}},   {"poincare", {3, 3, false}},
      {"autozeta", {1, 1, false}}, {"sigma", {1, 1, false}}, {"classof", {1, 2, false}},
  };
  return table;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(line_, pos_ + 1, expected); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  std::size_t column() {
    skip_space();
    return pos_ + 1;
  }

  std::optional<std::string> try_identifier() {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string identifier(const std::string& what = "name") {
    auto id = try_identifier();
    if (!id) fail(what);
    return *id;
  }

  void keyword(const std::string& kw) {
    std::size_t save = pos_;
    auto id = try_identifier();
    if (!id || *id != kw) {
      pos_ = save;
      fail("'" + kw + "'");
    }
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::optional<long> try_integer() {
    skip_space();
    std::size_t save = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    auto d = digits();
    if (d.empty() || d.size() > 15) {
      pos_ = save;
      return std::nullopt;
    }
    long v = std::stol(d);
    return negative ? -v : v;
  }

  Rational rational() {
    skip_space();
    std::string s;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      if (text_[pos_] == '-') s += '-';
      ++pos_;
    }
    auto num = digits();
    if (num.empty()) fail("rational number");
    s += num;
    if (accept('/')) {
      skip_space();
      auto den = digits();
      if (den.empty() || den.find_first_not_of('0') == std::string::npos) fail("non-zero denominator");
      s += "/" + den;
    }
    Rational q(s);
    q.canonicalize();
    return q;
  }

  ExprPtr expression() {
    skip_space();
    return parse_expr(text_, pos_, line_, 0);
  }

  void end() {
    if (!at_end()) fail("end of line");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Checker {
  std::map<std::string, StatementKind> kinds;

  void declare(const std::string& name, StatementKind kind, std::size_t line) {
    if (kinds.count(name)) {
      throw Error(ErrorCode::Redefinition, "line " + std::to_string(line) + ": '" + name + "' is already defined");
    }
    kinds[name] = kind;
  }

  StatementKind require(const std::string& name, std::size_t line) const {
    auto it = kinds.find(name);
    if (it == kinds.end()) {
      throw Error(ErrorCode::UnboundName, "line " + std::to_string(line) + ": '" + name + "' is not defined");
    }
    return it->second;
  }

  void require_kind(const std::string& name, StatementKind kind, const char* what, std::size_t line) const {
    if (require(name, line) != kind) {
      throw Error(ErrorCode::InvalidArgument,
                  "line " + std::to_string(line) + ": '" + name + "' is not " + what);
    }
  }
};

Statement parse_line(LineParser& p, std::size_t line, Checker& checker) {
  Statement s;
  s.line = line;
  const auto col = p.column();
  auto kw = p.try_identifier();
  if (!kw) p.fail("statement keyword");
  if (*kw == "field") {
    s.kind = StatementKind::Field;
    auto f = p.identifier("'QQ' or 'Fp'");
    if (f == "Fp") {
      auto prime = p.try_integer();
      if (!prime || *prime < 2) p.fail("prime characteristic");
      s.prime = static_cast<std::uint64_t>(*prime);
    } else if (f != "QQ") {
      throw SyntaxError(line, col + 6, "'QQ' or 'Fp'");
    }
  } else if (*kw == "ring") {
    s.kind = StatementKind::Ring;
    s.name = p.identifier();
    p.expect('=');
    p.expect('[');
    if (!p.accept(']')) {
      do {
        s.variables.push_back(p.identifier("variable name"));
      } while (p.accept(','));
      if (!p.accept(']')) p.fail("',' or ']'");
    }
  } else if (*kw == "ideal") {
    s.kind = StatementKind::Ideal;
    s.name = p.identifier();
    p.expect('=');
    p.expect('{');
    if (!p.accept('}')) {
      for (;;) {
        s.generators.push_back(p.expression());
        if (p.accept(',')) continue;
        if (p.accept('}')) break;
        p.fail(p.at_end() ? "'}'" : "',' or '}'");
      }
    }
  } else if (*kw == "scheme" || *kw == "fatpoint") {
    s.kind = *kw == "scheme" ? StatementKind::Scheme : StatementKind::FatPoint;
    s.name = p.identifier();
    p.expect('=');
    s.ring = p.identifier("ring name");
    p.expect('/');
    s.ideal = p.identifier("ideal name");
    checker.require_kind(s.ring, StatementKind::Ring, "a ring", line);
    checker.require_kind(s.ideal, StatementKind::Ideal, "an ideal", line);
  } else if (*kw == "system") {
    s.kind = StatementKind::System;
    s.name = p.identifier();
    p.expect('=');
    auto which = p.identifier("'lsystem' or 'jets'");
    if (which == "jets") {
      s.jets = true;
      p.expect('(');
      s.base = p.identifier("scheme name");
      checker.require(s.base, line);
      p.expect(',');
      p.expect('[');
      if (!p.accept(']')) {
        do {
          s.point.push_back(p.rational());
        } while (p.accept(','));
        if (!p.accept(']')) p.fail("',' or ']'");
      }
      p.expect(')');
    } else if (which != "lsystem") {
      throw SyntaxError(line, col + 7, "'lsystem' or 'jets'");
    }
  } else if (auto it = arities().find(*kw); it != arities().end()) {
    s.kind = StatementKind::Command;
    s.command = *kw;
    const auto& arity = it->second;
    // optional binding: <cmd> <name> = ...
    {
      LineParser probe = p;
      auto id = probe.try_identifier();
      if (id && probe.accept('=')) {
        s.name = *id;
        p = probe;
      }
    }
    if (arity.nabla_form) {
      p.keyword("nabla");
      p.expect('(');
    }
    do {
      const auto arg_col = p.column();
      if (auto v = p.try_integer()) {
        s.args.push_back({CommandArg::Kind::Integer, "", *v});
      } else if (auto id = p.try_identifier()) {
        checker.require(*id, line);
        s.args.push_back({CommandArg::Kind::Name, *id, 0});
      } else {
        throw SyntaxError(line, arg_col, "name or integer");
      }
    } while (p.accept(','));
    if (arity.nabla_form) p.expect(')');
    if (s.args.size() < arity.min || s.args.size() > arity.max) {
      const auto expected = arity.min == arity.max
                                ? std::to_string(arity.min)
                                : std::to_string(arity.min) + " to " + std::to_string(arity.max);
      throw SyntaxError(line, p.column(), expected + " arguments for '" + s.command + "'");
    }
  } else {
    throw SyntaxError(line, col, "statement keyword");
  }
  p.end();
  if (!s.name.empty()) checker.declare(s.name, s.kind, line);
  return s;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

}  // namespace

const std::vector<std::string>& command_keywords() {
  static const std::vector<std::string> keys = {"arc",     "autoarc", "reduce",   "dim",      "length",
                                                "simple",  "defect",  "trace",    "probe",    "measure",
                                                "zeta",    "poincare", "autozeta", "sigma",   "classof"};
  return keys;
}

Script parse_script(std::string_view text) {
  Script script;
  Checker checker;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    auto content = text.substr(start, end - start);
    if (auto hash = content.find('#'); hash != std::string_view::npos) content = content.substr(0, hash);
    LineParser p(content, line);
    if (!p.at_end()) script.statements.push_back(parse_line(p, line, checker));
    start = end + 1;
  }
  return script;
}

std::string render_statement(const Statement& s) {
  std::ostringstream os;
  switch (s.kind) {
    case StatementKind::Field:
      os << "field " << (s.prime ? "Fp " + std::to_string(*s.prime) : std::string("QQ"));
      break;
    case StatementKind::Ring:
      os << "ring " << s.name << " = [" << join(s.variables) << "]";
      break;
    case StatementKind::Ideal: {
      std::vector<std::string> gens;
      for (const auto& g : s.generators) gens.push_back(render_expr(*g));
      os << "ideal " << s.name << " = { " << join(gens) << (gens.empty() ? "}" : " }");
      break;
    }
    case StatementKind::Scheme:
    case StatementKind::FatPoint:
      os << (s.kind == StatementKind::Scheme ? "scheme " : "fatpoint ") << s.name << " = " << s.ring << "/"
         << s.ideal;
      break;
    case StatementKind::System:
      os << "system " << s.name << " = ";
      if (s.jets) {
        std::vector<std::string> coords;
        for (const auto& c : s.point) coords.push_back(to_string(c));
        os << "jets(" << s.base << ", [" << join(coords) << "])";
      } else {
        os << "lsystem";
      }
      break;
    case StatementKind::Command: {
      std::vector<std::string> args;
      for (const auto& a : s.args) {
        args.push_back(a.kind == CommandArg::Kind::Name ? a.name : std::to_string(a.value));
      }
      os << s.command << " ";
      if (!s.name.empty()) os << s.name << " = ";
      if (arities().at(s.command).nabla_form) {
        os << "nabla(" << join(args) << ")";
      } else {
        os << join(args);
      }
      break;
    }
  }
  return os.str();
}

std::string render_script(const Script& script) {
  std::string out;
  for (const auto& s : script.statements) out += render_statement(s) + "\n";
  return out;
}

std::string command_handle(const Statement& s) { return s.name.empty() ? render_statement(s) : s.name; }

}  // namespace nabla
