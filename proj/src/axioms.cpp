#include "proportia/axioms.hpp"

#include <chrono>
#include <stdexcept>

#include "proportia/error.hpp"

namespace proportia {

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::symmetry:
      return "symmetry";
    case Axiom::central_permutation:
      return "central_permutation";
    case Axiom::strong_determinism:
      return "strong_determinism";
    case Axiom::strong_reflexivity:
      return "strong_reflexivity";
    case Axiom::determinism:
      return "determinism";
    case Axiom::reflexivity:
      return "reflexivity";
  }
  return "?";
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (Axiom a : kAllAxioms)
    if (to_string(a) == name) return a;
  return std::nullopt;
}

namespace {

// Re-checks a verdict through the solver and, for failures, evaluates the
// separating justification's representatives directly.
std::optional<Dominance> confirm(const Solver& solver, const Tuple& x, bool expected) {
  auto v = solver.holds(x[0], x[1], x[2], x[3]);
  if (v.holds != expected)
    throw std::logic_error("axiom scan disagrees with holds() on a counterexample");
  if (v.holds) return std::nullopt;
  const ClassSet& cs = solver.classes();
  const auto& dom = *v.evidence;
  const auto& s = cs.at(dom.s);
  const auto& t = cs.at(dom.t);
  auto rule = make_rule(cs.pair(), s.representative, t.representative, s.arity);
  if (!justifies(cs.pair(), rule.view(), x[0], x[1], x[2], dom.dominator) ||
      justifies(cs.pair(), rule.view(), x[0], x[1], x[2], x[3]))
    throw std::logic_error("separating justification does not re-evaluate");
  return v.evidence;
}

}  // namespace

AxiomReport check_axiom(const Solver& solver, Axiom axiom, std::size_t max_counterexamples) {
  const ClassSet& cs = solver.classes();
  if (!cs.pair().same_domain()) throw NotSingleDomain();
  const auto start = std::chrono::steady_clock::now();
  const auto& table = solver.holds_table();
  const std::size_t n = cs.pair().source().size();
  auto holds = [&](const Tuple& x) {
    return table[(std::size_t{x[0]} * n + x[1]) * n + x[2]].test(x[3]);
  };

  AxiomReport report;
  report.axiom = axiom;
  auto record = [&](Counterexample ce) {
    ++report.violations;
    if (report.counterexamples.size() >= max_counterexamples) return;
    auto ev = confirm(solver, ce.tuple, ce.tuple_holds);
    if (ce.other) {
      auto other_ev = confirm(solver, *ce.other, ce.other_holds);
      ce.evidence = ce.tuple_holds ? other_ev : ev;
    } else {
      ce.evidence = ev;
    }
    report.counterexamples.push_back(ce);
  };

  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        for (Elem d = 0; d < n; ++d) {
          const Tuple x{a, b, c, d};
          switch (axiom) {
            case Axiom::symmetry:
            case Axiom::central_permutation: {
              ++report.tuples_checked;
              const Tuple y = axiom == Axiom::symmetry ? Tuple{c, d, a, b} : Tuple{a, c, b, d};
              if (holds(x) && !holds(y)) record({x, true, y, false, std::nullopt});
              break;
            }
            case Axiom::strong_determinism:
              if (a != b) break;
              ++report.tuples_checked;
              if (d != c && holds(x)) record({x, true, std::nullopt, false, std::nullopt});
              break;
            case Axiom::strong_reflexivity:
              if (c != a) break;
              ++report.tuples_checked;
              if (d != b && holds(x)) record({x, true, std::nullopt, false, std::nullopt});
              break;
            case Axiom::determinism:
              if (a != b || c != d) break;
              ++report.tuples_checked;
              if (!holds(x)) record({x, false, std::nullopt, false, std::nullopt});
              break;
            case Axiom::reflexivity:
              if (a != c || b != d) break;
              ++report.tuples_checked;
              if (!holds(x)) record({x, false, std::nullopt, false, std::nullopt});
              break;
          }
        }
      }
    }
  }
  report.holds = report.violations == 0;
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

AxiomAudit check_all(const Solver& solver, std::size_t max_counterexamples) {
  AxiomAudit audit;
  for (Axiom a : kAllAxioms) audit.reports.push_back(check_axiom(solver, a, max_counterexamples));
  auto verdict = [&](Axiom a) { return audit.reports[static_cast<std::size_t>(a)].holds; };
  if (verdict(Axiom::central_permutation) && verdict(Axiom::strong_reflexivity))
    audit.consistent = verdict(Axiom::strong_determinism);
  return audit;
}

}  // namespace proportia
