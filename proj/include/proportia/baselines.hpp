#pragma once

// Two literature models of proportions used as baselines: the set and number
// decompositions of Stroppa and Yvon, and the finite-set model of Miclet,
// Bayoudh and Delhay.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "proportia/solver.hpp"

namespace proportia {

enum class Model : std::uint8_t { sy_sets, mbd_sets, sy_numbers };

std::string to_string(Model model);
std::optional<Model> parse_model(std::string_view name);

// Sets are bitmasks over a universe of at most 64 elements.
using SetMask = std::uint64_t;

struct BaselineVerdict {
  Model model = Model::sy_sets;
  bool holds = false;
  // sy_sets: A1, A2, D1, D2; mbd_sets: E, F.
  std::vector<SetMask> sets;
  // sy_numbers: a1, a2, d1, d2.
  std::vector<std::int64_t> numbers;
};

// A = A1|A2, B = A1|D2, C = D1|A2, D = D1|D2.
BaselineVerdict sy_sets(SetMask a, SetMask b, SetMask c, SetMask d, SetMask universe);
// B = (A-E)|F and D = (C-E)|F for one pair E, F.
BaselineVerdict mbd_sets(SetMask a, SetMask b, SetMask c, SetMask d, SetMask universe);
// a = a1+a2, b = a1+d2, c = d1+a2, d = d1+d2; requires |a|,|b|,|c|,|d| <= bound.
BaselineVerdict sy_numbers(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                           std::int64_t bound);

struct ComparisonReport {
  Model model = Model::sy_sets;
  std::size_t tuples = 0;
  // Baseline holds, solver fails.
  std::vector<std::array<Elem, 4>> baseline_only;
  // Solver holds, baseline fails.
  std::vector<std::array<Elem, 4>> solver_only;
  std::size_t both = 0;
  std::size_t neither = 0;
};

// Scans every 4-tuple of a single-domain solver's carrier. The carrier must
// be a powerset (set models) or an integer interval (sy_numbers).
ComparisonReport compare(Model model, const Solver& solver,
                         std::size_t scope_limit = 20'000'000);

}  // namespace proportia
