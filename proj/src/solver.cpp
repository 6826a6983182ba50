#include "proportia/solver.hpp"

#include <algorithm>

#include "proportia/error.hpp"

namespace proportia {

Solver::Solver(const ClassSet& cs, SolveOptions options) : cs_(cs), options_(options) {
  if (options_.exclude_trivial) triviality_ = std::make_unique<TrivialityChecker>(cs.pair());
}

std::vector<Solver::Profile> Solver::profiles(Elem a, Elem c, Exec exec) const {
  std::vector<Profile> out;
  const auto& pair = cs_.pair();
  for (std::uint32_t k = 0; k <= cs_.max_arity(); ++k) {
    const auto& info = cs_.arity_info(k);
    std::unordered_map<Key, std::size_t, KeyHash> local;
    for (std::uint32_t s = info.begin; s < info.end; ++s) {
      auto table = cs_.joint_table(s);
      Key key{k, options_.exclude_trivial ? s : 0, Bits(info.source_points),
              Bits(info.target_points)};
      for (std::size_t p = 0; p < info.source_points; ++p)
        if (table[p] == a) key.es.set(p);
      if (key.es.none()) continue;
      for (std::size_t p = 0; p < info.target_points; ++p)
        if (table[info.source_points + p] == c) key.fs.set(p);
      if (key.fs.none()) continue;
      if (auto it = local.find(key); it != local.end()) {
        ++out[it->second].s_count;
        continue;
      }
      std::shared_ptr<const std::vector<ProfileEntry>> entries;
      {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) entries = it->second;
      }
      if (!entries) {
        std::vector<std::uint32_t> es, fs;
        key.es.for_each([&](std::size_t p) { es.push_back(static_cast<std::uint32_t>(p)); });
        key.fs.for_each([&](std::size_t p) { fs.push_back(static_cast<std::uint32_t>(p)); });
        ProfileInput input;
        input.store = cs_.arity_store(k);
        input.width = info.width();
        input.source_points = info.source_points;
        input.count = info.end - info.begin;
        input.first_id = info.begin;
        input.source_size = pair.source().size();
        input.target_size = pair.target().size();
        input.es = es;
        input.fs = fs;
        if (triviality_) {
          input.skip = [this, s](std::uint32_t t) {
            return triviality_->universal(rule_of(cs_, s, t));
          };
        }
        entries = std::make_shared<const std::vector<ProfileEntry>>(profile_entries(exec, input));
        std::lock_guard lock(memo_mutex_);
        entries = memo_.emplace(key, entries).first->second;
      }
      local.emplace(std::move(key), out.size());
      out.push_back(Profile{s, 1, std::move(entries)});
    }
  }
  return out;
}

std::vector<Solver::FamilyMember> Solver::family(const std::vector<Profile>& profiles, Elem b) {
  std::vector<FamilyMember> fam;
  for (const auto& prof : profiles) {
    for (const auto& entry : *prof.entries) {
      if (entry.b.test(b)) fam.push_back({&entry.d, prof.s_min, entry.t_min, prof.s_count * entry.t_count});
    }
  }
  return fam;
}

Solver::Outcome Solver::decide(const std::vector<FamilyMember>& fam) const {
  const std::size_t n = cs_.pair().target().size();
  Outcome out;
  out.solutions = Bits(n);
  out.nonempty = Bits(n);
  if (fam.empty()) {
    out.solutions.fill();
    out.degenerate = true;
    return out;
  }
  for (const auto& m : fam) out.nonempty |= *m.d;
  out.includes.resize(n);
  out.nonempty.for_each([&](std::size_t d) {
    out.includes[d] = Bits(n);
    out.includes[d].fill();
  });
  for (const auto& m : fam) m.d->for_each([&](std::size_t d) { out.includes[d] &= *m.d; });
  out.nonempty.for_each([&](std::size_t d) {
    bool maximal = true;
    out.includes[d].for_each([&](std::size_t above) {
      if (!out.includes[above].test(d)) maximal = false;
    });
    if (maximal) out.solutions.set(d);
  });
  return out;
}

namespace {

void check_elements(const AlgebraPair& pair, Elem a, Elem b, Elem c) {
  if (a >= pair.source().size())
    throw ElementNotInCarrier("#" + std::to_string(a), pair.source().name());
  if (b >= pair.source().size())
    throw ElementNotInCarrier("#" + std::to_string(b), pair.source().name());
  if (c >= pair.target().size())
    throw ElementNotInCarrier("#" + std::to_string(c), pair.target().name());
}

}  // namespace

SolutionReport Solver::solve(Elem a, Elem b, Elem c) const {
  check_elements(cs_.pair(), a, b, c);
  const std::size_t n = cs_.pair().target().size();
  auto profs = profiles(a, c, options_.exec);
  auto fam = family(profs, b);
  auto outcome = decide(fam);
  {
    std::lock_guard lock(memo_mutex_);
    masks_.emplace(std::array<Elem, 3>{a, b, c}, outcome.solutions);
  }

  SolutionReport report;
  report.a = a;
  report.b = b;
  report.c = c;
  report.degenerate = outcome.degenerate;
  report.jus_count.assign(n, 0);
  for (const auto& m : fam) m.d->for_each([&](std::size_t d) { report.jus_count[d] += m.count; });
  outcome.solutions.for_each([&](std::size_t d) { report.solutions.push_back(static_cast<Elem>(d)); });
  if (outcome.degenerate) return report;

  const std::size_t first_solution = outcome.solutions.first();
  for (std::size_t d = 0; d < n; ++d) {
    if (outcome.solutions.test(d)) continue;
    std::size_t dominator = first_solution;
    if (outcome.nonempty.test(d)) {
      Bits above = outcome.includes[d];
      above &= outcome.solutions;
      dominator = above.first();
    }
    Dominance dom{static_cast<Elem>(d), static_cast<Elem>(dominator), 0, 0};
    bool found = false;
    for (const auto& m : fam) {
      if (!m.d->test(dominator) || m.d->test(d)) continue;
      if (!found || std::pair(m.s, m.t) < std::pair(dom.s, dom.t)) {
        dom.s = m.s;
        dom.t = m.t;
        found = true;
      }
    }
    if (!found) throw std::logic_error("dominance without a separating justification");
    report.dominance.push_back(dom);
  }
  return report;
}

Verdict Solver::holds(Elem a, Elem b, Elem c, Elem d) const {
  if (d >= cs_.pair().target().size())
    throw ElementNotInCarrier("#" + std::to_string(d), cs_.pair().target().name());
  auto report = solve(a, b, c);
  Verdict v;
  v.degenerate = report.degenerate;
  v.holds = std::binary_search(report.solutions.begin(), report.solutions.end(), d);
  if (!v.holds) {
    for (const auto& dom : report.dominance)
      if (dom.rejected == d) v.evidence = dom;
  }
  return v;
}

Bits Solver::solution_mask(Elem a, Elem b, Elem c) const {
  check_elements(cs_.pair(), a, b, c);
  const std::array<Elem, 3> key{a, b, c};
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = masks_.find(key); it != masks_.end()) return it->second;
  }
  Bits mask = decide(family(profiles(a, c, options_.exec), b)).solutions;
  std::lock_guard lock(memo_mutex_);
  return masks_.emplace(key, std::move(mask)).first->second;
}

std::vector<Bits> Solver::solution_masks(Elem a, Elem c) const {
  check_elements(cs_.pair(), a, a, c);
  auto profs = profiles(a, c, options_.exec);
  std::vector<Bits> out;
  for (Elem b = 0; b < cs_.pair().source().size(); ++b) out.push_back(decide(family(profs, b)).solutions);
  return out;
}

const std::vector<Bits>& Solver::holds_table() const {
  std::call_once(holds_once_, [this] {
    const std::size_t ns = cs_.pair().source().size();
    const std::size_t nt = cs_.pair().target().size();
    holds_.assign(ns * ns * nt, Bits());
    for_range(options_.exec, ns * nt, [&](std::size_t i) {
      const auto a = static_cast<Elem>(i / nt);
      const auto c = static_cast<Elem>(i % nt);
      auto profs = profiles(a, c, Exec::serial);
      for (Elem b = 0; b < ns; ++b)
        holds_[(std::size_t{a} * ns + b) * nt + c] = decide(family(profs, b)).solutions;
    });
  });
  return holds_;
}

Characteristic Solver::characteristic(const Rule& r, Elem a, Elem b, Elem c, Elem d) const {
  const auto& pair = cs_.pair();
  if (!justifies(pair, r, a, b, c, d))
    throw NotAJustification("the rule does not justify " + pair.source().literal(a) + ":" +
                            pair.source().literal(b) + "::" + pair.target().literal(c) + ":" +
                            pair.target().literal(d));
  if (target_preimage_size(pair, r, c) == 1) return Characteristic::yes_by_injectivity;
  Bits shared = d_set(pair, r, a, b, c);
  if (shared.count() == 1) return Characteristic::yes_by_exhaustion;
  Bits mask = solution_mask(a, b, c);
  bool refuted = false;
  shared.for_each([&](std::size_t other) {
    if (!mask.test(other)) refuted = true;
  });
  return refuted ? Characteristic::no : Characteristic::unknown;
}

Characteristic Solver::characteristic(std::uint32_t s, std::uint32_t t, Elem a, Elem b, Elem c,
                                      Elem d) const {
  return characteristic(rule_of(cs_, s, t), a, b, c, d);
}

FunctionalSolution Solver::functional_solution(const Term& t, Elem a, Elem c) const {
  if (t.max_variable() > 1)
    throw TermOutOfBounds("'" + print_term(t) + "' has more than one variable");
  const auto& pair = cs_.pair();
  check_elements(pair, a, a, c);
  FunctionalSolution out;
  const Elem ea[] = {a};
  const Elem ec[] = {c};
  out.b = eval_term(pair.source(), t, ea);
  if (out.b == kUndefined)
    throw UndefinedAt("'" + print_term(t) + "' is undefined at " + pair.source().literal(a));
  out.d = eval_term(pair.target(), t, ec);
  if (out.d == kUndefined)
    throw UndefinedAt("'" + print_term(t) + "' is undefined at " + pair.target().literal(c));
  out.enumerated = cs_.max_arity() >= 1 && class_of(cs_, t, 1).has_value();
  auto rule = make_rule(pair, Term::variable(1), t, 1);
  out.tag = characteristic(rule.view(), a, out.b, c, out.d);
  return out;
}

}  // namespace proportia
