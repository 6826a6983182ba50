#pragma once

// Languages, terms over them, and the textual syntax for terms and
// proportion queries.
//
// Term grammar (prefix application only):
//
//   term  := var | const | sym "(" term ("," term)* ")"
//   var   := "z" [1-9][0-9]*
//   names := [A-Za-z_][A-Za-z0-9_]*
//
// Query grammar:
//
//   query := elem ":" elem "::" elem ":" (elem | "z") [ "@" name "," name ]

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proportia {

struct FunctionSymbol {
  std::string name;
  std::uint32_t rank = 0;

  auto operator<=>(const FunctionSymbol&) const = default;
};

// True for names of the form z1, z2, ... which are reserved for variables.
bool is_variable_name(std::string_view name);
bool is_identifier(std::string_view name);

// A signature: function symbols with ranks >= 1 and constant symbols. Symbols
// are kept sorted by name so that two languages declaring the same symbols in
// a different order compare equal and index their symbols identically.
class Language {
 public:
  Language() = default;
  Language(std::vector<FunctionSymbol> functions,
           std::vector<std::string> constants);

  std::span<const FunctionSymbol> functions() const { return functions_; }
  std::span<const std::string> constants() const { return constants_; }

  std::optional<std::size_t> find_function(std::string_view name) const;
  std::optional<std::size_t> find_constant(std::string_view name) const;

  bool empty() const { return functions_.empty() && constants_.empty(); }

  bool operator==(const Language&) const = default;

  // "mul/2, succ/1; one, zero"
  std::string describe() const;

 private:
  std::vector<FunctionSymbol> functions_;
  std::vector<std::string> constants_;
};

// Immutable term handle. Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { variable, constant, application };

  static Term variable(std::uint32_t index);
  static Term constant(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::variable; }
  bool is_constant() const { return kind() == Kind::constant; }
  bool is_application() const { return kind() == Kind::application; }

  // 1-based variable index; only meaningful for variables.
  std::uint32_t variable_index() const { return node_->index; }
  // Constant or function symbol name.
  const std::string& symbol() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }

  std::size_t depth() const { return node_->depth; }
  std::size_t size() const { return node_->size; }

  // Distinct variable indices by first occurrence (left to right).
  std::vector<std::uint32_t> variables() const;
  // Largest variable index occurring in the term, 0 for ground terms.
  std::uint32_t max_variable() const { return node_->max_var; }

  // Replaces every variable z_i by replacement[i-1].
  Term substitute(std::span<const Term> replacement) const;

  friend bool operator==(const Term& lhs, const Term& rhs);

 private:
  struct Node {
    Kind kind;
    std::uint32_t index = 0;
    std::string name;
    std::vector<Term> args;
    std::size_t depth = 0;
    std::size_t size = 1;
    std::uint32_t max_var = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Term parse_term(std::string_view text, const Language& lang);
std::string print_term(const Term& term);

struct ProportionQuery {
  std::string a;
  std::string b;
  std::string c;
  // nullopt is the solve marker z.
  std::optional<std::string> d;
  std::optional<std::string> source_name;
  std::optional<std::string> target_name;

  bool is_solve() const { return !d.has_value(); }
  bool operator==(const ProportionQuery&) const = default;
};

ProportionQuery parse_query(std::string_view text);

}  // namespace proportia
