#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <set>

#include "proportia/algebra.hpp"
#include "proportia/error.hpp"

namespace proportia {

namespace {

constexpr std::size_t kMaxCarrier = std::size_t{1} << 16;

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits on `sep` at brace depth zero, so "{a,b},{c}" yields two items.
std::vector<std::string> split_items(std::string_view text, char sep = ',') {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size()) {
      if (text[i] == '{') ++depth;
      if (text[i] == '}') --depth;
      if (text[i] != sep || depth != 0) continue;
    }
    auto item = strip(text.substr(start, i - start));
    if (!item.empty()) out.emplace_back(item);
    start = i + 1;
  }
  return out;
}

// "name:value" -> {name, value}; "value" -> {"", value}. Only a colon outside
// braces counts.
std::pair<std::string, std::string> split_named(std::string_view item) {
  int depth = 0;
  for (std::size_t i = 0; i < item.size(); ++i) {
    if (item[i] == '{') ++depth;
    if (item[i] == '}') --depth;
    if (item[i] == ':' && depth == 0)
      return {std::string(strip(item.substr(0, i))), std::string(strip(item.substr(i + 1)))};
  }
  return {"", std::string(strip(item))};
}

std::int64_t parse_int(std::string_view text, const std::string& what) {
  text = strip(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw BadParams("expected an integer for " + what + ", got '" + std::string(text) + "'");
  return value;
}

class ParamReader {
 public:
  ParamReader(std::string_view kind, const BuiltinParams& params,
              std::initializer_list<std::string_view> allowed)
      : kind_(kind), params_(params) {
    for (const auto& [key, value] : params) {
      bool ok = std::any_of(allowed.begin(), allowed.end(),
                            [&](std::string_view a) { return key == a; });
      if (!ok && key.rfind("table.", 0) == 0 && kind == "table") ok = true;
      if (!ok)
        throw BadParams("unknown key '" + key + "' for kind " + std::string(kind));
    }
  }

  std::optional<std::string> get(const std::string& key) const {
    if (auto it = params_.find(key); it != params_.end()) return it->second;
    return std::nullopt;
  }

  std::string require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw BadParams(std::string(kind_) + " requires '" + key + "='");
  }

 private:
  std::string_view kind_;
  const BuiltinParams& params_;
};

// Table-building helper: interpretation of each named symbol as a callable
// over element indices.
struct OpSpec {
  std::string symbol;
  std::uint32_t rank;
  std::function<Elem(std::span<const Elem>)> fn;
};

struct ConstSpec {
  std::string symbol;
  Elem value;
};

PartialAlgebra assemble(std::string name, std::vector<std::string> literals,
                        std::vector<OpSpec> ops, std::vector<ConstSpec> consts,
                        PartialAlgebra::Codec codec) {
  std::vector<FunctionSymbol> fns;
  for (const auto& op : ops) fns.push_back({op.symbol, op.rank});
  std::vector<std::string> const_names;
  for (const auto& c : consts) const_names.push_back(c.symbol);
  Language lang(fns, const_names);

  const std::size_t n = literals.size();
  std::vector<OpTable> tables(lang.functions().size());
  for (const auto& op : ops) {
    std::size_t index = *lang.find_function(op.symbol);
    OpTable& table = tables[index];
    table.rank = op.rank;
    table.values.resize(point_count(n, op.rank));
    for (std::size_t row = 0; row < table.values.size(); ++row) {
      auto args = decode_point(row, n, op.rank);
      table.values[row] = op.fn(args);
    }
  }
  std::vector<Elem> const_values(lang.constants().size());
  for (const auto& c : consts) const_values[*lang.find_constant(c.symbol)] = c.value;
  return PartialAlgebra(std::move(name), std::move(lang), std::move(literals),
                        std::move(tables), std::move(const_values), std::move(codec));
}

// Resolves `ops=` against a kind's known operation tokens. Each token maps to
// a default symbol name and a rank.
struct KnownOp {
  std::string_view token;
  std::string_view default_symbol;
  std::uint32_t rank;
};

std::vector<std::pair<std::string, KnownOp>> resolve_ops(
    std::string_view kind, const std::optional<std::string>& spec,
    std::span<const KnownOp> known, std::string_view defaults) {
  std::vector<std::pair<std::string, KnownOp>> out;
  for (const auto& item : split_items(spec.value_or(std::string(defaults)))) {
    auto [symbol, token] = split_named(item);
    auto it = std::find_if(known.begin(), known.end(),
                           [&](const KnownOp& k) { return k.token == token; });
    if (it == known.end())
      throw BadParams("unknown operation '" + token + "' for kind " + std::string(kind));
    out.emplace_back(symbol.empty() ? std::string(it->default_symbol) : symbol, *it);
  }
  return out;
}

std::string int_const_name(std::int64_t v) {
  return v < 0 ? "cm" + std::to_string(-v) : "c" + std::to_string(v);
}

// consts= for carriers where the literal itself names an element. `auto_name`
// builds the default symbol, `lookup` maps a literal to its element.
std::vector<ConstSpec> resolve_consts(
    const std::optional<std::string>& spec, std::size_t carrier,
    const std::function<std::optional<Elem>(std::string_view)>& lookup,
    const std::function<std::string(Elem)>& auto_name,
    std::vector<ConstSpec> defaults = {}) {
  if (!spec) return defaults;
  std::vector<ConstSpec> out;
  if (strip(*spec) == "none" || strip(*spec).empty()) return out;
  if (strip(*spec) == "all") {
    for (Elem e = 0; e < carrier; ++e) out.push_back({auto_name(e), e});
    return out;
  }
  for (const auto& item : split_items(*spec)) {
    auto [symbol, literal] = split_named(item);
    auto e = lookup(literal);
    if (!e) throw BadParams("constant value '" + literal + "' is not in the carrier");
    out.push_back({symbol.empty() ? auto_name(*e) : symbol, *e});
  }
  return out;
}

std::vector<std::string> identifiers(const std::string& list, const std::string& what) {
  auto items = split_items(list);
  if (items.empty()) throw BadParams(what + " must not be empty");
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (!seen.insert(item).second) throw BadParams("duplicate entry '" + item + "' in " + what);
  }
  return items;
}

PartialAlgebra make_bool(std::string_view kind, const BuiltinParams& params,
                         std::string name) {
  ParamReader reader(kind, params, {"ops", "consts"});
  static constexpr std::array<KnownOp, 3> known{{{"or", "or", 2}, {"and", "and", 2},
                                                 {"not", "not", 1}}};
  auto ops = resolve_ops(kind, reader.get("ops"), known, kind == "bool_or" ? "or" : "and");
  std::vector<OpSpec> specs;
  for (const auto& [symbol, op] : ops) {
    std::string token(op.token);
    specs.push_back({symbol, op.rank, [token](std::span<const Elem> a) -> Elem {
                       if (token == "or") return a[0] | a[1];
                       if (token == "and") return a[0] & a[1];
                       return 1 - a[0];
                     }});
  }
  std::vector<std::string> literals{"0", "1"};
  auto consts = resolve_consts(
      reader.get("consts"), 2,
      [](std::string_view lit) -> std::optional<Elem> {
        if (lit == "0") return 0;
        if (lit == "1") return 1;
        return std::nullopt;
      },
      [](Elem e) { return e ? std::string("one") : std::string("zero"); },
      {{"zero", 0}, {"one", 1}});
  return assemble(std::move(name), literals, specs, consts, {});
}

PartialAlgebra make_powerset(const BuiltinParams& params, std::string name) {
  ParamReader reader("powerset", params, {"universe", "ops", "consts"});
  auto universe = identifiers(reader.require("universe"), "universe");
  if (universe.size() > 16) throw BadParams("powerset universe is limited to 16 elements");
  const std::size_t n = std::size_t{1} << universe.size();
  const Elem full = static_cast<Elem>(n - 1);
  std::vector<std::string> literals(n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string lit = "{";
    bool first = true;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      if (!first) lit += ',';
      lit += universe[i];
      first = false;
    }
    literals[mask] = lit + "}";
  }
  static constexpr std::array<KnownOp, 4> known{
      {{"cap", "cap", 2}, {"cup", "cup", 2}, {"comp", "comp", 1}, {"minus", "minus", 2}}};
  auto ops = resolve_ops("powerset", reader.get("ops"), known, "cap,cup,comp");
  std::vector<OpSpec> specs;
  for (const auto& [symbol, op] : ops) {
    std::string token(op.token);
    specs.push_back({symbol, op.rank, [token, full](std::span<const Elem> a) -> Elem {
                       if (token == "cap") return a[0] & a[1];
                       if (token == "cup") return a[0] | a[1];
                       if (token == "minus") return a[0] & ~a[1] & full;
                       return ~a[0] & full;
                     }});
  }
  PartialAlgebra::Codec codec{CarrierKind::powerset, universe, 0};
  auto lookup = [&](std::string_view lit) -> std::optional<Elem> {
    if (lit == "\xE2\x88\x85") return 0;
    if (lit.size() < 2 || lit.front() != '{' || lit.back() != '}') return std::nullopt;
    Elem mask = 0;
    for (const auto& item : split_items(lit.substr(1, lit.size() - 2))) {
      auto it = std::find(universe.begin(), universe.end(), item);
      if (it == universe.end()) return std::nullopt;
      mask |= Elem{1} << (it - universe.begin());
    }
    return mask;
  };
  auto auto_name = [&](Elem mask) {
    if (mask == 0) return std::string("empty");
    std::string s = "s";
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (mask >> i & 1) s += "_" + universe[i];
    return s;
  };
  auto consts = resolve_consts(reader.get("consts"), n, lookup, auto_name);
  return assemble(std::move(name), literals, specs, consts, codec);
}

PartialAlgebra make_int_interval(const BuiltinParams& params, std::string name) {
  ParamReader reader("int_interval", params, {"interval", "ops", "consts"});
  std::string interval = reader.require("interval");
  auto dots = interval.find("..");
  if (dots == std::string::npos) throw BadParams("interval must look like lo..hi");
  const std::int64_t lo = parse_int(interval.substr(0, dots), "interval");
  const std::int64_t hi = parse_int(interval.substr(dots + 2), "interval");
  if (hi < lo) throw BadParams("empty interval");
  if (static_cast<std::size_t>(hi - lo + 1) > kMaxCarrier)
    throw BadParams("interval too large");
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::string> literals(n);
  for (std::size_t i = 0; i < n; ++i) literals[i] = std::to_string(lo + static_cast<std::int64_t>(i));

  static constexpr std::array<KnownOp, 5> known{{{"+", "add", 2},
                                                 {"-", "sub", 2},
                                                 {"*", "mul", 2},
                                                 {"/", "div", 2},
                                                 {"neg", "neg", 1}}};
  auto ops = resolve_ops("int_interval", reader.get("ops"), known, "+");
  auto wrap = [lo, hi](std::int64_t v) -> Elem {
    return (v < lo || v > hi) ? kUndefined : static_cast<Elem>(v - lo);
  };
  std::vector<OpSpec> specs;
  for (const auto& [symbol, op] : ops) {
    std::string token(op.token);
    specs.push_back({symbol, op.rank, [token, lo, wrap](std::span<const Elem> a) -> Elem {
                       const std::int64_t x = lo + a[0];
                       if (token == "neg") return wrap(-x);
                       const std::int64_t y = lo + a[1];
                       if (token == "+") return wrap(x + y);
                       if (token == "-") return wrap(x - y);
                       if (token == "*") return wrap(x * y);
                       if (y == 0 || x % y != 0) return kUndefined;
                       return wrap(x / y);
                     }});
  }
  PartialAlgebra::Codec codec{CarrierKind::integer, {}, lo};
  auto lookup = [&](std::string_view lit) -> std::optional<Elem> {
    std::int64_t v = 0;
    try {
      v = parse_int(lit, "constant");
    } catch (const BadParams&) {
      return std::nullopt;
    }
    Elem e = wrap(v);
    if (e == kUndefined) return std::nullopt;
    return e;
  };
  auto consts = resolve_consts(reader.get("consts"), n, lookup,
                               [lo](Elem e) { return int_const_name(lo + e); });
  return assemble(std::move(name), literals, specs, consts, codec);
}

PartialAlgebra make_mod_n(const BuiltinParams& params, std::string name) {
  ParamReader reader("mod_n", params, {"n", "ops", "consts"});
  const std::int64_t modulus = parse_int(reader.require("n"), "n");
  if (modulus < 1 || static_cast<std::size_t>(modulus) > kMaxCarrier)
    throw BadParams("n out of range");
  const std::size_t n = static_cast<std::size_t>(modulus);
  std::vector<std::string> literals(n);
  for (std::size_t i = 0; i < n; ++i) literals[i] = std::to_string(i);
  static constexpr std::array<KnownOp, 4> known{
      {{"+", "add", 2}, {"-", "sub", 2}, {"*", "mul", 2}, {"neg", "neg", 1}}};
  auto ops = resolve_ops("mod_n", reader.get("ops"), known, "+");
  std::vector<OpSpec> specs;
  for (const auto& [symbol, op] : ops) {
    std::string token(op.token);
    specs.push_back({symbol, op.rank, [token, modulus](std::span<const Elem> a) -> Elem {
                       const std::int64_t x = a[0];
                       if (token == "neg") return static_cast<Elem>((modulus - x) % modulus);
                       const std::int64_t y = a[1];
                       if (token == "+") return static_cast<Elem>((x + y) % modulus);
                       if (token == "-") return static_cast<Elem>((x - y + modulus) % modulus);
                       return static_cast<Elem>((x * y) % modulus);
                     }});
  }
  PartialAlgebra::Codec codec{CarrierKind::integer, {}, 0};
  auto lookup = [&](std::string_view lit) -> std::optional<Elem> {
    try {
      auto v = parse_int(lit, "constant");
      if (v < 0 || v >= modulus) return std::nullopt;
      return static_cast<Elem>(v);
    } catch (const BadParams&) {
      return std::nullopt;
    }
  };
  auto consts = resolve_consts(reader.get("consts"), n, lookup,
                               [](Elem e) { return int_const_name(e); });
  return assemble(std::move(name), literals, specs, consts, codec);
}

PartialAlgebra make_words(const BuiltinParams& params, std::string name) {
  ParamReader reader("words", params, {"alphabet", "maxlen", "ops", "consts"});
  auto alphabet = identifiers(reader.require("alphabet"), "alphabet");
  for (const auto& letter : alphabet) {
    if (letter.size() != 1) throw BadParams("alphabet letters must be single characters");
  }
  const std::int64_t maxlen = parse_int(reader.require("maxlen"), "maxlen");
  if (maxlen < 0) throw BadParams("maxlen must be non-negative");
  // Shortlex enumeration of all words up to maxlen.
  std::vector<std::string> literals{""};
  std::size_t level_start = 0;
  for (std::int64_t len = 1; len <= maxlen; ++len) {
    const std::size_t level_end = literals.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (const auto& letter : alphabet) {
        literals.push_back(literals[i] + letter);
        if (literals.size() > kMaxCarrier) throw BadParams("word carrier too large");
      }
    }
    level_start = level_end;
  }
  std::unordered_map<std::string, Elem> index;
  for (Elem e = 0; e < literals.size(); ++e) index.emplace(literals[e], e);

  static constexpr std::array<KnownOp, 2> known{{{"mul", "mul", 2}, {"concat", "mul", 2}}};
  auto ops = resolve_ops("words", reader.get("ops"), known, "mul");
  std::vector<OpSpec> specs;
  for (const auto& [symbol, op] : ops) {
    specs.push_back({symbol, op.rank, [&literals, &index](std::span<const Elem> a) -> Elem {
                       auto it = index.find(literals[a[0]] + literals[a[1]]);
                       return it == index.end() ? kUndefined : it->second;
                     }});
  }
  auto lookup = [&](std::string_view lit) -> std::optional<Elem> {
    std::string key(lit);
    if (key == "\xCE\xB5") key.clear();
    if (auto it = index.find(key); it != index.end()) return it->second;
    return std::nullopt;
  };
  auto consts = resolve_consts(reader.get("consts"), literals.size(), lookup,
                               [&](Elem e) { return "w_" + literals[e]; });
  PartialAlgebra::Codec codec{CarrierKind::words, alphabet, 0};
  return assemble(std::move(name), literals, specs, consts, codec);
}

std::vector<ConstSpec> generic_consts(const std::optional<std::string>& spec,
                                      const std::vector<std::string>& literals) {
  std::vector<ConstSpec> out;
  if (!spec || strip(*spec) == "none") return out;
  for (const auto& item : split_items(*spec)) {
    auto [symbol, literal] = split_named(item);
    if (symbol.empty())
      throw BadParams("constants of this kind must be written name:element");
    auto it = std::find(literals.begin(), literals.end(), literal);
    if (it == literals.end()) throw BadParams("constant value '" + literal + "' is not in the carrier");
    out.push_back({symbol, static_cast<Elem>(it - literals.begin())});
  }
  return out;
}

PartialAlgebra make_bare_set(const BuiltinParams& params, std::string name) {
  ParamReader reader("bare_set", params, {"elems", "universe", "consts"});
  auto elems = identifiers(reader.get("elems").value_or(reader.get("universe").value_or("")),
                           "elems");
  return assemble(std::move(name), elems, {}, generic_consts(reader.get("consts"), elems), {});
}

PartialAlgebra make_table(const BuiltinParams& params, std::string name) {
  ParamReader reader("table", params, {"universe", "elems", "ops", "consts"});
  auto universe = split_items(
      reader.get("universe").value_or(reader.get("elems").value_or("")));
  if (universe.empty()) throw BadParams("table requires 'universe='");
  for (const auto& e : universe) {
    if (e.find_first_of(" \t,;:()@>") != std::string::npos)
      throw BadParams("element '" + e + "' contains a reserved character");
  }
  auto find_elem = [&](std::string_view lit) -> Elem {
    auto it = std::find(universe.begin(), universe.end(), strip(lit));
    if (it == universe.end()) throw BadParams("'" + std::string(strip(lit)) + "' is not in the universe");
    return static_cast<Elem>(it - universe.begin());
  };
  const std::size_t n = universe.size();
  std::vector<OpSpec> specs;
  std::set<std::string> declared;
  for (const auto& item : split_items(reader.get("ops").value_or(""))) {
    auto slash = item.find('/');
    if (slash == std::string::npos) throw BadParams("table ops must be written name/rank");
    std::string symbol = std::string(strip(std::string_view(item).substr(0, slash)));
    auto rank = static_cast<std::uint32_t>(parse_int(item.substr(slash + 1), "rank"));
    declared.insert(symbol);
    auto rows = reader.get("table." + symbol);
    if (!rows) throw BadParams("no table rows for operation '" + symbol + "'");
    auto values = std::make_shared<std::vector<Elem>>(point_count(n, rank), kUndefined);
    std::vector<bool> seen(values->size(), false);
    for (const auto& row : split_items(*rows, ';')) {
      auto arrow = row.find("->");
      if (arrow == std::string::npos) throw BadParams("table row '" + row + "' lacks '->'");
      auto args = split_items(std::string_view(row).substr(0, arrow));
      if (args.size() != rank)
        throw BadParams("table row '" + row + "' has " + std::to_string(args.size()) +
                        " argument(s), '" + symbol + "' has rank " + std::to_string(rank));
      std::size_t index = 0;
      for (const auto& a : args) index = index * n + find_elem(a);
      if (seen[index]) throw BadParams("duplicate table row '" + row + "'");
      seen[index] = true;
      std::string_view value = strip(std::string_view(row).substr(arrow + 2));
      (*values)[index] = (value == "?" || value == "undefined") ? kUndefined : find_elem(value);
    }
    for (std::size_t index = 0; index < seen.size(); ++index) {
      if (seen[index]) continue;
      std::string missing;
      for (Elem e : decode_point(index, n, rank)) {
        if (!missing.empty()) missing += ',';
        missing += universe[e];
      }
      throw BadParams("operation '" + symbol + "' has no row for (" + missing +
                      "); write '?' for undefined");
    }
    specs.push_back({symbol, rank, [values, n, rank](std::span<const Elem> a) {
                       std::size_t index = 0;
                       for (std::uint32_t i = 0; i < rank; ++i) index = index * n + a[i];
                       return (*values)[index];
                     }});
  }
  for (const auto& [key, value] : params) {
    if (key.rfind("table.", 0) == 0 && !declared.count(key.substr(6)))
      throw BadParams("table rows for undeclared operation '" + key.substr(6) + "'");
  }
  return assemble(std::move(name), universe, specs,
                  generic_consts(reader.get("consts"), universe), {});
}

const std::array<BuiltinInfo, 8> kCatalog{{
    {"bool_or", "ops consts", "({0,1}, or) with zero:0, one:1 by default"},
    {"bool_and", "ops consts", "({0,1}, and) with zero:0, one:1 by default"},
    {"powerset", "universe ops consts", "(P(U), cap, cup, comp); consts=all makes every set distinguished"},
    {"int_interval", "interval ops consts", "[lo..hi] with partial +,-,*,/ (div exact), neg; undefined outside the interval"},
    {"mod_n", "n ops consts", "Z/nZ with +,-,*,neg"},
    {"words", "alphabet maxlen ops consts", "words up to maxlen under concatenation (mul), undefined beyond maxlen"},
    {"bare_set", "elems consts", "a universe without operations"},
    {"table", "universe ops table.<sym> consts", "fully user-specified operation tables"},
}};

}  // namespace

std::span<const BuiltinInfo> builtin_catalog() { return kCatalog; }

PartialAlgebra builtin(std::string_view kind, const BuiltinParams& params, std::string name) {
  if (name.empty()) name = std::string(kind);
  if (kind == "bool_or" || kind == "bool_and") return make_bool(kind, params, std::move(name));
  if (kind == "powerset") return make_powerset(params, std::move(name));
  if (kind == "int_interval") return make_int_interval(params, std::move(name));
  if (kind == "mod_n") return make_mod_n(params, std::move(name));
  if (kind == "words") return make_words(params, std::move(name));
  if (kind == "bare_set") return make_bare_set(params, std::move(name));
  if (kind == "table") return make_table(params, std::move(name));
  throw BadParams("unknown builtin kind '" + std::string(kind) + "'");
}

}  // namespace proportia
