#pragma once

// Justification sets Jus(a:b::c:d) over a ClassSet, witnesses, and the
// trivial / characteristic classification of single justifications.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proportia/bits.hpp"
#include "proportia/clone.hpp"

namespace proportia {

// s -> t at a fixed arity, given by joint tables (source points, then target
// points).
struct Rule {
  std::uint32_t arity = 0;
  std::span<const Elem> s;
  std::span<const Elem> t;
};

Rule rule_of(const ClassSet& cs, std::uint32_t s, std::uint32_t t);

// A rule built from arbitrary terms, for justifications outside a ClassSet.
struct TermRule {
  std::uint32_t arity = 0;
  Term s_term = Term::variable(1);
  Term t_term = Term::variable(1);
  std::vector<Elem> s;
  std::vector<Elem> t;

  Rule view() const { return {arity, s, t}; }
};

TermRule make_rule(const AlgebraPair& pair, const Term& s, const Term& t,
                   std::optional<std::uint32_t> arity = std::nullopt);

// Point indices e1 (source) and e2 (target) realizing the rule. `limit`
// caps each list; 0 means all.
struct Witnesses {
  std::vector<std::size_t> source;
  std::vector<std::size_t> target;
};

Witnesses witnesses(const AlgebraPair& pair, const Rule& r, Elem a, Elem b, Elem c, Elem d,
                    std::size_t limit = 0);
bool justifies(const AlgebraPair& pair, const Rule& r, Elem a, Elem b, Elem c, Elem d);

// {d : r in Jus(a:b::c:d)}; empty when r has no source witness for (a,b).
Bits d_set(const AlgebraPair& pair, const Rule& r, Elem a, Elem b, Elem c);

// Number of target points e with s^B(e) = c.
std::size_t target_preimage_size(const AlgebraPair& pair, const Rule& r, Elem c);

struct JustificationClass {
  std::uint32_t s = 0;
  std::uint32_t t = 0;
  std::uint32_t arity = 0;
  std::vector<std::size_t> witnesses_source;
  std::vector<std::size_t> witnesses_target;
};

struct JusSet {
  Elem a = 0, b = 0, c = 0, d = 0;
  std::vector<JustificationClass> members;
};

// Exhaustive scan over ordered class pairs of equal arity, in (s, t) order.
// `witness_limit` caps the stored witness lists per member and
// `member_limit` the number of members (0 = no cap).
JusSet jus(const ClassSet& cs, Elem a, Elem b, Elem c, Elem d, std::size_t witness_limit = 0,
           std::size_t member_limit = 0);

// One-sided sets as (s, t) id pairs, sorted.
std::vector<std::pair<std::uint32_t, std::uint32_t>> jus_source(const ClassSet& cs, Elem a, Elem b);
std::vector<std::pair<std::uint32_t, std::uint32_t>> jus_target(const ClassSet& cs, Elem c, Elem d);

struct Triviality {
  bool trivial = false;
  // Judged on the definedness cores of partial algebras only.
  bool partial = false;
};

// Coverage test: the rule's graph projected to (s(e), t(e)) must contain every
// pair over the definedness core, on both sides.
class TrivialityChecker {
 public:
  explicit TrivialityChecker(const AlgebraPair& pair);
  Triviality check(const Rule& r) const;
  // Covers every pair over the whole carriers, core or not: the rule then
  // justifies every 4-tuple and can be dropped without changing any answer.
  bool universal(const Rule& r) const;
  const std::vector<bool>& source_core() const { return source_core_; }
  const std::vector<bool>& target_core() const { return target_core_; }

 private:
  bool covers(std::span<const Elem> s, std::span<const Elem> t, std::size_t n,
              const std::vector<bool>& core, std::size_t core_size) const;

  const AlgebraPair* pair_;
  std::vector<bool> source_core_;
  std::vector<bool> target_core_;
  std::vector<bool> source_all_;
  std::vector<bool> target_all_;
  std::size_t source_core_size_ = 0;
  std::size_t target_core_size_ = 0;
  bool partial_ = false;
};

Triviality is_trivial(const ClassSet& cs, std::uint32_t s, std::uint32_t t);

enum class Characteristic : std::uint8_t {
  yes_by_injectivity,
  yes_by_exhaustion,
  no,
  unknown
};

std::string to_string(Characteristic tag);

// "(2)", "(ab,a)", "()" for a point index at the given arity.
std::string format_point(const PartialAlgebra& alg, std::size_t point, std::uint32_t arity);

}  // namespace proportia
