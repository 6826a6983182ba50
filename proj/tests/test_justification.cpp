#include <doctest.h>

#include <algorithm>
#include <random>

#include "proportia/clone.hpp"
#include "proportia/error.hpp"
#include "proportia/justification.hpp"
#include "proportia/solver.hpp"
#include "support.hpp"

using namespace proportia;

namespace {

using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

PairList members(const JusSet& j) {
  PairList out;
  for (const auto& m : j.members) out.emplace_back(m.s, m.t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("Jus is the intersection of both sides") {
  std::mt19937 rng(31);
  for (int round = 0; round < 25; ++round) {
    auto alg = testing::random_algebra(rng, {3, {2}, 1, round % 3 == 0 ? 0.2 : 0.0});
    auto cs = enumerate(AlgebraPair(alg), {2, 2});
    const auto n = static_cast<Elem>(alg->size());
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          for (Elem d = 0; d < n; ++d) {
            auto left = jus_source(cs, a, b);
            auto right = jus_target(cs, c, d);
            std::sort(left.begin(), left.end());
            std::sort(right.begin(), right.end());
            PairList both;
            std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                                  std::back_inserter(both));
            CHECK(members(jus(cs, a, b, c, d)) == both);
          }
  }
}

TEST_CASE("witnesses realise the proportion") {
  std::mt19937 rng(32);
  auto alg = testing::random_algebra(rng, {4, {2}, 1});
  AlgebraPair pair(alg);
  auto cs = enumerate(pair, {2, 2});
  const auto n = static_cast<Elem>(alg->size());
  for (Elem a = 0; a < n; ++a)
    for (Elem d = 0; d < n; ++d) {
      auto j = jus(cs, a, n - 1, 0, d);
      for (const auto& m : j.members) {
        auto s = cs.joint_table(m.s);
        auto t = cs.joint_table(m.t);
        const std::size_t ps = cs.arity_info(m.arity).source_points;
        REQUIRE_FALSE(m.witnesses_source.empty());
        REQUIRE_FALSE(m.witnesses_target.empty());
        for (auto p : m.witnesses_source) CHECK((s[p] == a && t[p] == n - 1));
        for (auto p : m.witnesses_target) CHECK((s[ps + p] == 0 && t[ps + p] == d));
        CHECK(justifies(pair, rule_of(cs, m.s, m.t), a, n - 1, 0, d));
      }
    }
}

TEST_CASE("limits cut the listing") {
  auto cs = enumerate(AlgebraPair(testing::structure("intAddSub8")), {2, 2});
  auto all = jus(cs, 8, 9, 8, 9);
  REQUIRE(all.members.size() > 3);
  auto few = jus(cs, 8, 9, 8, 9, 1, 3);
  CHECK(few.members.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(few.members[i].s == all.members[i].s);
    CHECK(few.members[i].t == all.members[i].t);
    CHECK(few.members[i].witnesses_source.size() == 1);
  }
}

TEST_CASE("trivial justifications") {
  auto pow = testing::make("powerset", {{"universe", "a,b"}, {"ops", "cap,cup,minus"}});
  AlgebraPair sets(pow);
  const auto& l = pow->language();
  auto r = make_rule(sets, parse_term("cup(cap(z1,z2),minus(z1,z2))", l),
                     parse_term("cup(cap(z1,z2),minus(z2,z1))", l));
  TrivialityChecker sets_check(sets);
  auto tr = sets_check.check(r.view());
  CHECK(tr.trivial);
  CHECK_FALSE(tr.partial);
  // z1 -> z1 maps every a to itself only
  CHECK_FALSE(sets_check.check(make_rule(sets, Term::variable(1), Term::variable(1)).view()).trivial);

  auto ints = testing::structure("intAddSub8");
  AlgebraPair ip(ints);
  const auto& il = ints->language();
  auto ir = make_rule(ip, parse_term("sub(add(z1,z2),z2)", il), parse_term("sub(add(z2,z1),z1)", il));
  auto itr = TrivialityChecker(ip).check(ir.view());
  CHECK(itr.trivial);
  CHECK(itr.partial);

  auto cs = enumerate(sets, {2, 2});
  auto z1 = class_of(cs, Term::variable(1), 2);
  auto z2 = class_of(cs, Term::variable(2), 2);
  CHECK(is_trivial(cs, *z1, *z2).trivial);
  CHECK_FALSE(is_trivial(cs, *z2, *z2).trivial);
}

TEST_CASE("characteristic tags") {
  const auto& reg = testing::structures();
  AlgebraPair pair(reg.get("natMul"), reg.get("words8"));
  auto cs = enumerate(pair, {1, 6});
  Solver solver(cs);
  const Elem two = pair.source().element("2"), four = pair.source().element("4");
  const Elem ab = pair.target().element("ab"), abab = pair.target().element("abab");
  const auto& l = pair.language();
  auto sq = make_rule(pair, Term::variable(1), parse_term("mul(z1,z1)", l));
  CHECK(solver.characteristic(sq.view(), two, four, ab, abab) == Characteristic::yes_by_injectivity);
  CHECK_THROWS_AS(solver.characteristic(sq.view(), two, four, ab, ab), NotAJustification);

  AlgebraPair b(reg.get("boolOr"));
  auto bcs = enumerate(b);
  Solver bs(bcs);
  const auto& bl = b.language();
  // a ground rule has a single point, hence a unique preimage
  auto g = make_rule(b, parse_term("one", bl), parse_term("zero", bl));
  CHECK(bs.characteristic(g.view(), 1, 0, 1, 0) == Characteristic::yes_by_injectivity);
  // z1 -> one at arity 2: c=1 has two preimages but the only d reached is 1
  auto cst = make_rule(b, Term::variable(1), parse_term("one", bl), 2);
  CHECK(bs.characteristic(cst.view(), 1, 1, 1, 1) == Characteristic::yes_by_exhaustion);
  // z1 -> z2 reaches every d; 1:0::1:1 fails, so the rule is refuted.
  auto proj = make_rule(b, Term::variable(1), Term::variable(2));
  CHECK(bs.characteristic(proj.view(), 1, 0, 1, 0) == Characteristic::no);
  // z1 -> z1 on 0:0::1:1 has the unique target preimage 1.
  auto id = make_rule(b, Term::variable(1), Term::variable(1));
  CHECK(bs.characteristic(id.view(), 0, 0, 1, 1) == Characteristic::yes_by_injectivity);
}

TEST_CASE("point formatting") {
  auto w = testing::make("words", {{"alphabet", "a,b"}, {"maxlen", "2"}});
  CHECK(format_point(*w, 0, 1) == "(\xCE\xB5)");
  CHECK(format_point(*w, 1 * 7 + 3, 2) == "(a,aa)");
  CHECK(format_point(*w, 0, 0) == "()");
}
