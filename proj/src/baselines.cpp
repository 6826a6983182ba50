#include "proportia/baselines.hpp"

#include <algorithm>
#include <cstdlib>

#include "proportia/error.hpp"

namespace proportia {

std::string to_string(Model model) {
  switch (model) {
    case Model::sy_sets:
      return "sy_sets";
    case Model::mbd_sets:
      return "mbd_sets";
    case Model::sy_numbers:
      return "sy_numbers";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view name) {
  if (name == "sy_sets" || name == "sy") return Model::sy_sets;
  if (name == "mbd_sets" || name == "mbd") return Model::mbd_sets;
  if (name == "sy_numbers") return Model::sy_numbers;
  return std::nullopt;
}

namespace {

void check_universe(std::initializer_list<SetMask> sets, SetMask universe) {
  for (SetMask s : sets)
    if (s & ~universe) throw NotSubsetOfUniverse("set is not a subset of the universe");
}

}  // namespace

BaselineVerdict sy_sets(SetMask a, SetMask b, SetMask c, SetMask d, SetMask universe) {
  check_universe({a, b, c, d}, universe);
  BaselineVerdict v{Model::sy_sets, true, {0, 0, 0, 0}, {}};
  for (int x = 0; x < 64; ++x) {
    if (!(universe >> x & 1)) continue;
    const unsigned want = (a >> x & 1) << 3 | (b >> x & 1) << 2 | (c >> x & 1) << 1 | (d >> x & 1);
    bool found = false;
    // Option bits: a1 a2 d1 d2, tried in increasing order.
    for (unsigned opt = 0; opt < 16 && !found; ++opt) {
      const unsigned a1 = opt >> 3 & 1, a2 = opt >> 2 & 1, d1 = opt >> 1 & 1, d2 = opt & 1;
      const unsigned got = (a1 | a2) << 3 | (a1 | d2) << 2 | (d1 | a2) << 1 | (d1 | d2);
      if (got != want) continue;
      found = true;
      const SetMask bit = SetMask{1} << x;
      if (a1) v.sets[0] |= bit;
      if (a2) v.sets[1] |= bit;
      if (d1) v.sets[2] |= bit;
      if (d2) v.sets[3] |= bit;
    }
    if (!found) return {Model::sy_sets, false, {}, {}};
  }
  return v;
}

BaselineVerdict mbd_sets(SetMask a, SetMask b, SetMask c, SetMask d, SetMask universe) {
  check_universe({a, b, c, d}, universe);
  BaselineVerdict v{Model::mbd_sets, true, {0, 0}, {}};
  for (int x = 0; x < 64; ++x) {
    if (!(universe >> x & 1)) continue;
    const unsigned ax = a >> x & 1, bx = b >> x & 1, cx = c >> x & 1, dx = d >> x & 1;
    bool found = false;
    for (unsigned opt = 0; opt < 4 && !found; ++opt) {
      const unsigned e = opt >> 1 & 1, f = opt & 1;
      if (((ax & !e) | f) != bx || ((cx & !e) | f) != dx) continue;
      found = true;
      if (e) v.sets[0] |= SetMask{1} << x;
      if (f) v.sets[1] |= SetMask{1} << x;
    }
    if (!found) return {Model::mbd_sets, false, {}, {}};
  }
  return v;
}

BaselineVerdict sy_numbers(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                           std::int64_t bound) {
  for (auto x : {a, b, c, d})
    if (std::llabs(x) > bound)
      throw OutOfBound(std::to_string(x) + " exceeds the bound " + std::to_string(bound));
  if (a + d != b + c) return {Model::sy_numbers, false, {}, {}};
  const std::int64_t a2 = std::max<std::int64_t>(0, b - a);
  const std::int64_t d2 = a2 + (b - a);
  const std::int64_t a1 = a - a2;
  const std::int64_t d1 = c - a2;
  return {Model::sy_numbers, true, {}, {a1, a2, d1, d2}};
}

ComparisonReport compare(Model model, const Solver& solver, std::size_t scope_limit) {
  const ClassSet& cs = solver.classes();
  if (!cs.pair().same_domain()) throw NotSingleDomain();
  const PartialAlgebra& alg = cs.pair().source();
  const std::size_t n = alg.size();
  if (n * n * n * n > scope_limit)
    throw ScopeTooLarge(std::to_string(n * n * n * n) + " tuples exceed the limit of " +
                        std::to_string(scope_limit));
  const bool sets = model != Model::sy_numbers;
  if (sets && alg.codec().kind != CarrierKind::powerset)
    throw BadParams("set models need a powerset algebra");
  if (!sets && alg.codec().kind != CarrierKind::integer)
    throw BadParams("sy_numbers needs an integer algebra");
  const SetMask universe = sets ? (SetMask{1} << alg.codec().universe.size()) - 1 : 0;
  std::int64_t bound = 0;
  if (!sets)
    for (Elem e = 0; e < n; ++e) bound = std::max<std::int64_t>(bound, std::llabs(*alg.int_value(e)));

  const auto& table = solver.holds_table();
  ComparisonReport report;
  report.model = model;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        for (Elem d = 0; d < n; ++d) {
          ++report.tuples;
          bool base = false;
          switch (model) {
            case Model::sy_sets:
              base = sy_sets(a, b, c, d, universe).holds;
              break;
            case Model::mbd_sets:
              base = mbd_sets(a, b, c, d, universe).holds;
              break;
            case Model::sy_numbers:
              base = sy_numbers(*alg.int_value(a), *alg.int_value(b), *alg.int_value(c),
                                *alg.int_value(d), bound)
                         .holds;
              break;
          }
          const bool ours = table[(std::size_t{a} * n + b) * n + c].test(d);
          if (base && !ours) report.baseline_only.push_back({a, b, c, d});
          if (!base && ours) report.solver_only.push_back({a, b, c, d});
          if (base && ours) ++report.both;
          if (!base && !ours) ++report.neither;
        }
  return report;
}

}  // namespace proportia
