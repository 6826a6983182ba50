#pragma once

// Exhaustive audit of the six proportion axioms within one algebra.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "proportia/solver.hpp"

namespace proportia {

enum class Axiom : std::uint8_t {
  symmetry,
  central_permutation,
  strong_determinism,
  strong_reflexivity,
  determinism,
  reflexivity
};

inline constexpr std::array<Axiom, 6> kAllAxioms{
    Axiom::symmetry,           Axiom::central_permutation, Axiom::strong_determinism,
    Axiom::strong_reflexivity, Axiom::determinism,         Axiom::reflexivity};

std::string to_string(Axiom axiom);
std::optional<Axiom> parse_axiom(std::string_view name);

using Tuple = std::array<Elem, 4>;

// For the two-sided axioms `tuple` holds and `other` fails; for the
// one-sided ones `other` is absent and `tuple` is the offending proportion
// (holding when it should not, or failing when it should hold).
struct Counterexample {
  Tuple tuple{};
  bool tuple_holds = false;
  std::optional<Tuple> other;
  bool other_holds = false;
  // Dominance evidence for whichever proportion fails.
  std::optional<Dominance> evidence;
};

struct AxiomReport {
  Axiom axiom = Axiom::symmetry;
  bool holds = true;
  std::vector<Counterexample> counterexamples;
  std::size_t violations = 0;
  std::size_t tuples_checked = 0;
  double seconds = 0;
};

// Requires a single-domain pair. Keeps the first `max_counterexamples`
// violations in lexicographic order of the reported tuple.
AxiomReport check_axiom(const Solver& solver, Axiom axiom, std::size_t max_counterexamples = 10);

struct AxiomAudit {
  std::vector<AxiomReport> reports;
  // Central permutation and strong reflexivity together imply strong
  // determinism; false flags a contradiction between the reports.
  bool consistent = true;
};

AxiomAudit check_all(const Solver& solver, std::size_t max_counterexamples = 10);

}  // namespace proportia
