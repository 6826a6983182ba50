#pragma once

// Naive reference solver: enumerates term ASTs without any deduplication,
// evaluates each one directly, builds Jus sets over literal term pairs and
// compares them pairwise. Only meant for tiny algebras and bounds.

#include <cstdint>
#include <vector>

#include "proportia/algebra.hpp"
#include "proportia/bits.hpp"

namespace proportia {

struct OracleResult {
  std::vector<Elem> solutions;
  bool degenerate = false;
};

class NaiveOracle {
 public:
  // Throws ScopeTooLarge when more than `term_limit` terms would be built.
  NaiveOracle(AlgebraPair pair, std::uint32_t max_arity, std::uint32_t max_depth,
              std::size_t term_limit = 5000);

  OracleResult solve(Elem a, Elem b, Elem c) const;
  bool holds(Elem a, Elem b, Elem c, Elem d) const;

  std::size_t term_count() const;
  // Jus(a:b::c:d) as a bitset over all same-arity term pairs.
  Bits jus(Elem a, Elem b, Elem c, Elem d) const;

 private:
  struct Level {
    std::uint32_t arity;
    std::vector<Term> terms;
    // Per term: values on every source point, then every target point.
    std::vector<std::vector<Elem>> values;
    std::size_t source_points;
    std::size_t pair_offset;
  };

  AlgebraPair pair_;
  std::vector<Level> levels_;
  std::size_t pair_count_ = 0;
};

}  // namespace proportia
