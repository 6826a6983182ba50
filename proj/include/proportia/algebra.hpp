#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "proportia/term.hpp"

namespace proportia {

// Carrier elements are dense indices into the algebra's carrier list.
using Elem = std::uint32_t;
inline constexpr Elem kUndefined = std::numeric_limits<Elem>::max();

using Assignment = std::span<const Elem>;

// Operation table over carrier^rank, row-major with the first argument most
// significant. Undefined entries hold kUndefined.
struct OpTable {
  std::uint32_t rank = 0;
  std::vector<Elem> values;
};

// How element literals map to domain values. Only used for literal parsing
// and by the baseline models, which need the set or integer behind an element.
enum class CarrierKind : std::uint8_t { generic, powerset, integer, words };

struct CarrierCodec {
  CarrierKind kind = CarrierKind::generic;
  // powerset: element e is the subset with bitmask e over `universe`.
  std::vector<std::string> universe;
  // integer: element e denotes int_offset + e.
  std::int64_t int_offset = 0;
};

class PartialAlgebra {
 public:
  using Codec = CarrierCodec;

  // ops and consts are indexed like lang.functions() / lang.constants().
  PartialAlgebra(std::string name, Language lang,
                 std::vector<std::string> literals, std::vector<OpTable> ops,
                 std::vector<Elem> consts, Codec codec = {});

  const std::string& name() const { return name_; }
  const Language& language() const { return lang_; }
  std::size_t size() const { return literals_.size(); }
  std::span<const std::string> literals() const { return literals_; }
  const std::string& literal(Elem e) const { return literals_.at(e); }

  const OpTable& op(std::size_t index) const { return ops_[index]; }
  Elem constant(std::size_t index) const { return consts_[index]; }
  std::span<const Elem> constants() const { return consts_; }

  // Applies function symbol `index` to args (undefined propagates).
  Elem apply(std::size_t index, std::span<const Elem> args) const;

  std::optional<Elem> find(std::string_view literal) const;
  // Like find() but throws ElementNotInCarrier.
  Elem element(std::string_view literal) const;

  bool is_total() const;
  bool is_distinguished(Elem e) const;

  const Codec& codec() const { return codec_; }
  std::optional<std::int64_t> int_value(Elem e) const;
  std::optional<std::uint64_t> set_mask(Elem e) const;

 private:
  std::string name_;
  Language lang_;
  std::vector<std::string> literals_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<OpTable> ops_;
  std::vector<Elem> consts_;
  Codec codec_;
};

using AlgebraPtr = std::shared_ptr<const PartialAlgebra>;

// Source and target algebra over one shared language.
class AlgebraPair {
 public:
  AlgebraPair(AlgebraPtr source, AlgebraPtr target);
  // The single-domain pair (A, A).
  explicit AlgebraPair(AlgebraPtr single) : AlgebraPair(single, single) {}

  const PartialAlgebra& source() const { return *source_; }
  const PartialAlgebra& target() const { return *target_; }
  const AlgebraPtr& source_ptr() const { return source_; }
  const AlgebraPtr& target_ptr() const { return target_; }
  const Language& language() const { return source_->language(); }
  bool same_domain() const { return source_ == target_; }

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
};

// Structural evaluation; returns kUndefined if any sub-result is undefined.
Elem eval_term(const PartialAlgebra& alg, const Term& t, Assignment asg);

// Induced table of t over carrier^arity (arity defaults to t.max_variable()).
std::vector<Elem> term_table(const PartialAlgebra& alg, const Term& t,
                             std::optional<std::uint32_t> arity = std::nullopt);

struct FunctionProperty {
  bool value = false;
  // The induced table has undefined rows; value was judged on the defined part.
  bool partial = false;
};

FunctionProperty is_injective(const PartialAlgebra& alg, const Term& t);
FunctionProperty is_constant(const PartialAlgebra& alg, const Term& t);

// Greedy largest subset C of the carrier on which every operation is defined
// for all argument tuples from C. Peels the element involved in the most
// undefined applications first, ties broken by carrier order. Equals the whole
// carrier for total algebras.
std::vector<bool> definedness_core(const PartialAlgebra& alg);

// Tuple <-> point index over carrier^arity (first coordinate most significant).
std::vector<Elem> decode_point(std::size_t point, std::size_t carrier,
                               std::uint32_t arity);
std::size_t point_count(std::size_t carrier, std::uint32_t arity);

// ---------------------------------------------------------------------------
// Builtin structures.
//
//   bool_or, bool_and  carrier {0,1}; consts default zero:0,one:1
//   powerset           universe=a,b  ops=cap,cup,comp  consts=all|<sets>
//   int_interval       interval=lo..hi  ops=+,-,*,/  consts=all|<ints>
//   mod_n              n=5  ops=+,*  consts=all|<ints>
//   words              alphabet=a,b  maxlen=8  ops=mul  consts=<words>
//   bare_set           elems=a,b,d (no operations)
//   table              universe=...  ops=succ/1  table.<sym>=rows  consts=c:a
//
// Every ops/consts item may be written `symbol:value` to choose the symbol
// name (e.g. ops=circ:cup, consts=c:{b}). `consts=none` drops the defaults.
using BuiltinParams = std::map<std::string, std::string>;

PartialAlgebra builtin(std::string_view kind, const BuiltinParams& params,
                       std::string name = {});

struct BuiltinInfo {
  std::string kind;
  std::string keys;
  std::string summary;
};
std::span<const BuiltinInfo> builtin_catalog();

}  // namespace proportia
