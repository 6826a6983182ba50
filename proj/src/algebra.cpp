#include "proportia/algebra.hpp"

#include <algorithm>
#include <set>

#include "proportia/error.hpp"

namespace proportia {

std::size_t point_count(std::size_t carrier, std::uint32_t arity) {
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < arity; ++i) n *= carrier;
  return n;
}

std::vector<Elem> decode_point(std::size_t point, std::size_t carrier,
                               std::uint32_t arity) {
  std::vector<Elem> tuple(arity);
  for (std::uint32_t i = arity; i-- > 0;) {
    tuple[i] = static_cast<Elem>(point % carrier);
    point /= carrier;
  }
  return tuple;
}

PartialAlgebra::PartialAlgebra(std::string name, Language lang,
                               std::vector<std::string> literals,
                               std::vector<OpTable> ops,
                               std::vector<Elem> consts, Codec codec)
    : name_(std::move(name)),
      lang_(std::move(lang)),
      literals_(std::move(literals)),
      ops_(std::move(ops)),
      consts_(std::move(consts)),
      codec_(std::move(codec)) {
  if (literals_.empty()) throw BadParams("algebra '" + name_ + "' has an empty carrier");
  for (Elem e = 0; e < literals_.size(); ++e) {
    if (!index_.emplace(literals_[e], e).second)
      throw BadParams("duplicate element literal '" + literals_[e] + "'");
  }
  const auto fns = lang_.functions();
  if (ops_.size() != fns.size())
    throw BadParams("algebra '" + name_ + "' interprets " +
                    std::to_string(ops_.size()) + " operations, language has " +
                    std::to_string(fns.size()));
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (ops_[i].rank != fns[i].rank)
      throw BadParams("operation '" + fns[i].name + "' has the wrong rank");
    if (ops_[i].values.size() != point_count(size(), fns[i].rank))
      throw BadParams("operation '" + fns[i].name + "' needs " +
                      std::to_string(point_count(size(), fns[i].rank)) + " rows");
    for (Elem v : ops_[i].values) {
      if (v != kUndefined && v >= size())
        throw BadParams("operation '" + fns[i].name + "' leaves the carrier");
    }
  }
  if (consts_.size() != lang_.constants().size())
    throw BadParams("every constant symbol must be interpreted in '" + name_ + "'");
  for (Elem c : consts_) {
    if (c >= size()) throw BadParams("constant outside the carrier of '" + name_ + "'");
  }
}

Elem PartialAlgebra::apply(std::size_t index, std::span<const Elem> args) const {
  const OpTable& table = ops_[index];
  std::size_t row = 0;
  for (Elem a : args) {
    if (a == kUndefined) return kUndefined;
    row = row * size() + a;
  }
  return table.values[row];
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<std::uint64_t> parse_set_literal(std::string_view text,
                                               std::span<const std::string> universe) {
  text = strip(text);
  if (text == "\xE2\x88\x85") return 0;  // ∅
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
  text = text.substr(1, text.size() - 2);
  std::uint64_t mask = 0;
  if (strip(text).empty()) return 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string_view item =
        strip(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                  : comma - start));
    auto it = std::find(universe.begin(), universe.end(), item);
    if (it == universe.end()) return std::nullopt;
    mask |= std::uint64_t{1} << (it - universe.begin());
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return mask;
}

}  // namespace

std::optional<Elem> PartialAlgebra::find(std::string_view literal) const {
  literal = strip(literal);
  if (auto it = index_.find(std::string(literal)); it != index_.end()) return it->second;
  switch (codec_.kind) {
    case CarrierKind::powerset:
      if (auto mask = parse_set_literal(literal, codec_.universe)) {
        if (*mask < size()) return static_cast<Elem>(*mask);
      }
      break;
    case CarrierKind::words:
      if (literal == "\xCE\xB5" || literal == "\"\"") {  // ε
        if (auto it = index_.find(""); it != index_.end()) return it->second;
      }
      break;
    case CarrierKind::integer:
      if (!literal.empty() && literal.front() == '+') return find(literal.substr(1));
      break;
    case CarrierKind::generic:
      break;
  }
  return std::nullopt;
}

Elem PartialAlgebra::element(std::string_view literal) const {
  if (auto e = find(literal)) return *e;
  throw ElementNotInCarrier(std::string(literal), name_);
}

bool PartialAlgebra::is_total() const {
  return std::all_of(ops_.begin(), ops_.end(), [](const OpTable& t) {
    return std::find(t.values.begin(), t.values.end(), kUndefined) == t.values.end();
  });
}

bool PartialAlgebra::is_distinguished(Elem e) const {
  return std::find(consts_.begin(), consts_.end(), e) != consts_.end();
}

std::optional<std::int64_t> PartialAlgebra::int_value(Elem e) const {
  if (codec_.kind != CarrierKind::integer || e >= size()) return std::nullopt;
  return codec_.int_offset + static_cast<std::int64_t>(e);
}

std::optional<std::uint64_t> PartialAlgebra::set_mask(Elem e) const {
  if (codec_.kind != CarrierKind::powerset || e >= size()) return std::nullopt;
  return e;
}

AlgebraPair::AlgebraPair(AlgebraPtr source, AlgebraPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw BadParams("algebra pair needs two algebras");
  if (!(source_->language() == target_->language()))
    throw LanguageMismatch("algebras '" + source_->name() + "' [" +
                           source_->language().describe() + "] and '" +
                           target_->name() + "' [" +
                           target_->language().describe() +
                           "] do not share a language");
}

Elem eval_term(const PartialAlgebra& alg, const Term& t, Assignment asg) {
  switch (t.kind()) {
    case Term::Kind::variable:
      if (t.variable_index() > asg.size()) throw UnboundVariable(t.variable_index());
      return asg[t.variable_index() - 1];
    case Term::Kind::constant: {
      auto c = alg.language().find_constant(t.symbol());
      if (!c) throw UnknownConstant(t.symbol());
      return alg.constant(*c);
    }
    case Term::Kind::application: {
      auto fn = alg.language().find_function(t.symbol());
      if (!fn) throw UnknownSymbol(t.symbol());
      std::uint32_t rank = alg.language().functions()[*fn].rank;
      if (t.args().size() != rank) throw ArityMismatch(t.symbol(), rank, t.args().size());
      std::vector<Elem> args;
      args.reserve(rank);
      for (const auto& arg : t.args()) {
        Elem v = eval_term(alg, arg, asg);
        if (v == kUndefined) return kUndefined;
        args.push_back(v);
      }
      return alg.apply(*fn, args);
    }
  }
  return kUndefined;
}

std::vector<Elem> term_table(const PartialAlgebra& alg, const Term& t,
                             std::optional<std::uint32_t> arity) {
  std::uint32_t k = arity.value_or(t.max_variable());
  if (t.max_variable() > k) throw UnboundVariable(t.max_variable());
  const std::size_t points = point_count(alg.size(), k);
  std::vector<Elem> out(points);
  for (std::size_t p = 0; p < points; ++p) {
    auto tuple = decode_point(p, alg.size(), k);
    out[p] = eval_term(alg, t, tuple);
  }
  return out;
}

FunctionProperty is_injective(const PartialAlgebra& alg, const Term& t) {
  auto table = term_table(alg, t);
  FunctionProperty result{true, false};
  std::vector<bool> hit(alg.size(), false);
  for (Elem v : table) {
    if (v == kUndefined) {
      result.partial = true;
      continue;
    }
    if (hit[v]) result.value = false;
    hit[v] = true;
  }
  return result;
}

FunctionProperty is_constant(const PartialAlgebra& alg, const Term& t) {
  auto table = term_table(alg, t);
  FunctionProperty result{true, false};
  Elem seen = kUndefined;
  for (Elem v : table) {
    if (v == kUndefined) {
      result.partial = true;
      continue;
    }
    if (seen != kUndefined && seen != v) result.value = false;
    seen = v;
  }
  return result;
}

std::vector<bool> definedness_core(const PartialAlgebra& alg) {
  const std::size_t n = alg.size();
  std::vector<bool> in_core(n, true);
  // Each undefined application as its distinct arguments; removing any one of
  // them from the core retires it.
  std::vector<std::vector<Elem>> undefined;
  std::vector<std::vector<std::size_t>> touching(n);
  std::vector<std::size_t> blame(n, 0);
  const auto fns = alg.language().functions();
  for (std::size_t f = 0; f < fns.size(); ++f) {
    const OpTable& table = alg.op(f);
    for (std::size_t row = 0; row < table.values.size(); ++row) {
      if (table.values[row] != kUndefined) continue;
      auto tuple = decode_point(row, n, table.rank);
      std::sort(tuple.begin(), tuple.end());
      tuple.erase(std::unique(tuple.begin(), tuple.end()), tuple.end());
      for (Elem e : tuple) {
        ++blame[e];
        touching[e].push_back(undefined.size());
      }
      undefined.push_back(std::move(tuple));
    }
  }
  std::vector<bool> alive(undefined.size(), true);
  std::size_t remaining = undefined.size();
  while (remaining > 0) {
    const auto worst = static_cast<std::size_t>(std::max_element(blame.begin(), blame.end()) - blame.begin());
    in_core[worst] = false;
    for (auto id : touching[worst]) {
      if (!alive[id]) continue;
      alive[id] = false;
      --remaining;
      for (Elem e : undefined[id]) --blame[e];
    }
  }
  return in_core;
}

}  // namespace proportia
