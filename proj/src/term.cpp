#include "proportia/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "proportia/error.hpp"

namespace proportia {

namespace {

bool is_name_start(char ch) {
  return std::isalpha(static_cast<unsigned char>(ch)) != 0 || ch == '_';
}

bool is_name_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  return text;
}

}  // namespace

bool is_variable_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'z' || name[1] < '1' || name[1] > '9')
    return false;
  return std::all_of(name.begin() + 1, name.end(), [](char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) != 0;
  });
}

bool is_identifier(std::string_view name) {
  return !name.empty() && is_name_start(name.front()) &&
         std::all_of(name.begin(), name.end(), is_name_char);
}

Language::Language(std::vector<FunctionSymbol> functions,
                   std::vector<std::string> constants)
    : functions_(std::move(functions)), constants_(std::move(constants)) {
  std::set<std::string> seen;
  auto check = [&seen](const std::string& name) {
    if (!is_identifier(name))
      throw BadParams("'" + name + "' is not a valid symbol name");
    if (is_variable_name(name))
      throw BadParams("'" + name + "' is reserved for variables");
    if (!seen.insert(name).second)
      throw BadParams("symbol '" + name + "' declared twice");
  };
  for (const auto& fn : functions_) {
    check(fn.name);
    if (fn.rank == 0)
      throw BadParams("function symbol '" + fn.name +
                      "' has rank 0; declare it as a constant");
  }
  for (const auto& c : constants_) check(c);
  std::sort(functions_.begin(), functions_.end());
  std::sort(constants_.begin(), constants_.end());
}

std::optional<std::size_t> Language::find_function(std::string_view name) const {
  auto it = std::lower_bound(
      functions_.begin(), functions_.end(), name,
      [](const FunctionSymbol& fn, std::string_view key) { return fn.name < key; });
  if (it == functions_.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - functions_.begin());
}

std::optional<std::size_t> Language::find_constant(std::string_view name) const {
  auto it = std::lower_bound(constants_.begin(), constants_.end(), name);
  if (it == constants_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - constants_.begin());
}

std::string Language::describe() const {
  std::string out;
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    if (i) out += ", ";
    out += functions_[i].name + "/" + std::to_string(functions_[i].rank);
  }
  if (!constants_.empty()) out += functions_.empty() ? "" : "; ";
  for (std::size_t i = 0; i < constants_.size(); ++i) {
    if (i) out += ", ";
    out += constants_[i];
  }
  return out;
}

Term Term::variable(std::uint32_t index) {
  if (index == 0) throw UnboundVariable(0);
  auto node = std::make_shared<Node>();
  node->kind = Kind::variable;
  node->index = index;
  node->max_var = index;
  return Term(std::move(node));
}

Term Term::constant(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::constant;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::application;
  node->name = std::move(symbol);
  std::size_t depth = 0;
  std::size_t size = 1;
  std::uint32_t max_var = 0;
  for (const auto& arg : args) {
    depth = std::max(depth, arg.depth());
    size += arg.size();
    max_var = std::max(max_var, arg.max_variable());
  }
  node->depth = depth + 1;
  node->size = size;
  node->max_var = max_var;
  node->args = std::move(args);
  return Term(std::move(node));
}

std::vector<std::uint32_t> Term::variables() const {
  std::vector<std::uint32_t> out;
  std::vector<const Term*> stack{this};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    if (t->is_variable()) {
      if (std::find(out.begin(), out.end(), t->variable_index()) == out.end())
        out.push_back(t->variable_index());
    } else {
      auto args = t->args();
      for (auto it = args.rbegin(); it != args.rend(); ++it) stack.push_back(&*it);
    }
  }
  return out;
}

Term Term::substitute(std::span<const Term> replacement) const {
  switch (kind()) {
    case Kind::variable:
      if (variable_index() > replacement.size())
        throw UnboundVariable(variable_index());
      return replacement[variable_index() - 1];
    case Kind::constant:
      return *this;
    case Kind::application: {
      std::vector<Term> args;
      args.reserve(this->args().size());
      for (const auto& arg : this->args()) args.push_back(arg.substitute(replacement));
      return apply(symbol(), std::move(args));
    }
  }
  return *this;
}

bool operator==(const Term& lhs, const Term& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.kind() != rhs.kind()) return false;
  switch (lhs.kind()) {
    case Term::Kind::variable:
      return lhs.variable_index() == rhs.variable_index();
    case Term::Kind::constant:
      return lhs.symbol() == rhs.symbol();
    case Term::Kind::application:
      return lhs.symbol() == rhs.symbol() &&
             std::equal(lhs.args().begin(), lhs.args().end(),
                        rhs.args().begin(), rhs.args().end());
  }
  return false;
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, const Language& lang)
      : text_(text), lang_(lang) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing input");
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view name() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_name_start(text_[pos_]))
      throw SyntaxError(pos_, "expected a variable, constant or function symbol");
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  bool peek(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  void expect(char ch) {
    if (!peek(ch)) throw SyntaxError(pos_, std::string("expected '") + ch + "'");
    ++pos_;
  }

  Term term() {
    std::string_view id = name();
    if (is_variable_name(id)) {
      if (peek('(')) throw SyntaxError(pos_, "variables cannot be applied");
      unsigned long index = std::stoul(std::string(id.substr(1)));
      return Term::variable(static_cast<std::uint32_t>(index));
    }
    std::vector<Term> args;
    if (peek('(')) {
      ++pos_;
      args.push_back(term());
      while (peek(',')) {
        ++pos_;
        args.push_back(term());
      }
      expect(')');
    }
    if (auto fn = lang_.find_function(id)) {
      std::uint32_t rank = lang_.functions()[*fn].rank;
      if (args.size() != rank) throw ArityMismatch(std::string(id), rank, args.size());
      return Term::apply(std::string(id), std::move(args));
    }
    if (lang_.find_constant(id)) {
      if (!args.empty()) throw ArityMismatch(std::string(id), 0, args.size());
      return Term::constant(std::string(id));
    }
    throw UnknownSymbol(std::string(id));
  }

  std::string_view text_;
  const Language& lang_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::variable:
      out += 'z';
      out += std::to_string(t.variable_index());
      return;
    case Term::Kind::constant:
      out += t.symbol();
      return;
    case Term::Kind::application:
      out += t.symbol();
      out += '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ',';
        print_into(t.args()[i], out);
      }
      out += ')';
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text, const Language& lang) {
  return TermParser(text, lang).parse();
}

std::string print_term(const Term& term) {
  std::string out;
  print_into(term, out);
  return out;
}

ProportionQuery parse_query(std::string_view text) {
  ProportionQuery query;
  std::string_view body = text;
  if (auto at = text.rfind('@'); at != std::string_view::npos) {
    body = text.substr(0, at);
    std::string_view suffix = trim(text.substr(at + 1));
    auto comma = suffix.find(',');
    if (comma == std::string_view::npos)
      throw SyntaxError(at + 1, "expected '@source,target'");
    std::string_view src = trim(suffix.substr(0, comma));
    std::string_view tgt = trim(suffix.substr(comma + 1));
    if (!is_identifier(src) || !is_identifier(tgt))
      throw SyntaxError(at + 1, "algebra names must be identifiers");
    query.source_name = std::string(src);
    query.target_name = std::string(tgt);
  }
  auto sep = body.find("::");
  if (sep == std::string_view::npos || body.find("::", sep + 2) != std::string_view::npos)
    throw SyntaxError(0, "expected exactly one '::'");
  auto split_pair = [](std::string_view side, std::size_t offset,
                       std::string& lhs, std::string& rhs) {
    auto colon = side.find(':');
    if (colon == std::string_view::npos || side.find(':', colon + 1) != std::string_view::npos)
      throw SyntaxError(offset, "expected '<elem>:<elem>'");
    lhs = std::string(trim(side.substr(0, colon)));
    rhs = std::string(trim(side.substr(colon + 1)));
    if (lhs.empty()) throw SyntaxError(offset, "empty element literal");
    if (rhs.empty()) throw SyntaxError(offset + colon + 1, "empty element literal");
  };
  std::string d;
  split_pair(body.substr(0, sep), 0, query.a, query.b);
  split_pair(body.substr(sep + 2), sep + 2, query.c, d);
  if (d != "z") query.d = std::move(d);
  return query;
}

}  // namespace proportia
