#pragma once

// Enumeration of term-induced functions over an algebra pair, deduplicated by
// the joint (source table, target table) pair.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "proportia/algebra.hpp"
#include "proportia/kernels.hpp"

namespace proportia {

struct Bounds {
  std::uint32_t max_arity = 2;
  std::uint32_t max_depth = 4;
  std::size_t cap = 50000;
  // Upper limit on table entries computed while enumerating one arity; a
  // second safety valve next to `cap` for large carriers.
  std::size_t entry_budget = std::size_t{1} << 26;
};

struct TermClass {
  std::uint32_t id = 0;
  std::uint32_t arity = 0;
  std::uint32_t depth = 0;
  Term representative = Term::variable(1);
  std::string print;
};

struct ArityInfo {
  std::uint32_t arity = 0;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::size_t source_points = 0;
  std::size_t target_points = 0;
  // A depth level added nothing and neither cap nor budget was hit.
  bool saturated = false;
  bool cap_hit = false;
  bool budget_hit = false;
  // Deepest level processed completely.
  std::uint32_t completed_depth = 0;
  // Classes added by variable identification / cylindrification.
  std::size_t closure_added = 0;

  std::size_t width() const { return source_points + target_points; }
};

class ClassSet {
 public:
  const AlgebraPair& pair() const { return pair_; }
  const Bounds& bounds() const { return bounds_; }

  std::span<const TermClass> classes() const { return classes_; }
  std::span<const TermClass> classes(std::uint32_t arity) const;
  const TermClass& at(std::uint32_t id) const { return classes_[id]; }
  std::size_t size() const { return classes_.size(); }

  std::uint32_t max_arity() const { return static_cast<std::uint32_t>(arities_.size()) - 1; }
  const ArityInfo& arity_info(std::uint32_t arity) const { return arities_[arity]; }

  std::span<const Elem> joint_table(std::uint32_t id) const;
  std::span<const Elem> source_table(std::uint32_t id) const;
  std::span<const Elem> target_table(std::uint32_t id) const;
  // Flat storage of all classes of one arity (width() entries per class).
  const Elem* arity_store(std::uint32_t arity) const { return stores_[arity].data(); }

  // Every arity saturated.
  bool saturated() const;
  // Cap or budget struck before depth 1 was complete at some arity.
  bool incomplete() const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<std::uint32_t> find(std::uint32_t arity, std::span<const Elem> joint) const;

 private:
  friend ClassSet enumerate(const AlgebraPair&, const Bounds&, Exec);
  explicit ClassSet(AlgebraPair pair, Bounds bounds)
      : pair_(std::move(pair)), bounds_(bounds) {}

  AlgebraPair pair_;
  Bounds bounds_;
  std::vector<TermClass> classes_;
  std::vector<ArityInfo> arities_;
  std::vector<std::vector<Elem>> stores_;
  std::vector<std::unordered_multimap<std::uint64_t, std::uint32_t>> index_;
  std::vector<std::string> warnings_;
};

ClassSet enumerate(const AlgebraPair& pair, const Bounds& bounds = {},
                   Exec exec = Exec::parallel);

// Looks t up by its joint table at `arity` (default: its largest variable).
std::optional<std::uint32_t> class_of(const ClassSet& cs, const Term& t,
                                      std::optional<std::uint32_t> arity = std::nullopt);

// Joint table of an arbitrary term at the given arity.
std::vector<Elem> joint_table(const AlgebraPair& pair, const Term& t, std::uint32_t arity);

}  // namespace proportia
