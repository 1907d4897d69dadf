#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace honeybee {

// Base for every domain error raised by the library. The CLI maps these to
// exit status 1 and the service maps them to 4xx responses.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed or invalid instance/board/source file. `location` is a JSON
// pointer (or "line:col" for syntax errors).
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error("parse_error", location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(const std::string& message) : Error("invalid_instance", message) {}
};

class OrderError : public Error {
 public:
  explicit OrderError(const std::string& message) : Error("invalid_order", message) {}
};

class SizeGuardExceeded : public Error {
 public:
  explicit SizeGuardExceeded(const std::string& message) : Error("size_guard", message) {}
};

// Search gave up after exhausting its state budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, std::size_t frontier, std::vector<int> incumbent)
      : Error("budget_exceeded", message), frontier_(frontier), incumbent_(std::move(incumbent)) {}

  std::size_t frontier() const noexcept { return frontier_; }
  // Best complete sequence known when the search stopped (may be empty).
  const std::vector<int>& incumbent() const noexcept { return incumbent_; }

 private:
  std::size_t frontier_;
  std::vector<int> incumbent_;
};

enum class Rule { R1, R2, R3, NoLegalColor, GameOver, BadColor };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::NoLegalColor: return "no_legal_color";
    case Rule::GameOver: return "game_over";
    case Rule::BadColor: return "bad_color";
  }
  return "?";
}

class RuleViolation : public Error {
 public:
  RuleViolation(Rule rule, const std::string& message)
      : Error("rule_violation", std::string(rule_name(rule)) + ": " + message), rule_(rule) {}

  Rule rule() const noexcept { return rule_; }

 private:
  Rule rule_;
};

}  // namespace honeybee
