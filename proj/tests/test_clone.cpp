#include <doctest.h>

#include <random>
#include <set>

#include "proportia/clone.hpp"
#include "proportia/error.hpp"
#include "support.hpp"

using namespace proportia;

namespace {

std::set<std::vector<Elem>> tables_of(const ClassSet& cs, std::uint32_t arity) {
  std::set<std::vector<Elem>> out;
  for (const auto& c : cs.classes(arity)) {
    auto t = cs.joint_table(c.id);
    out.emplace(t.begin(), t.end());
  }
  return out;
}

}  // namespace

TEST_CASE("boolean clone") {
  auto cs = enumerate(AlgebraPair(testing::structure("boolOr")));
  CHECK(cs.saturated());
  CHECK(cs.classes(0).size() == 2);
  CHECK(cs.classes(1).size() == 3);
  // 0, 1, z1, z2, or(z1,z2)
  CHECK(cs.classes(2).size() == 5);
  std::vector<std::string> unary;
  for (const auto& c : cs.classes(1)) unary.push_back(c.print);
  CHECK(unary == std::vector<std::string>{"one", "z1", "zero"});
}

TEST_CASE("every class table is its representative's table") {
  std::mt19937 rng(21);
  for (int round = 0; round < 30; ++round) {
    auto a = testing::random_algebra(rng, {4, {2}, 1, round % 2 ? 0.2 : 0.0}, "a");
    auto lang = a->language();
    // a second algebra over the same language
    auto b = testing::random_algebra(rng, {4, {2}, 1, 0.0}, "b");
    if (!(b->language() == lang)) continue;
    AlgebraPair pair(a, b);
    auto cs = enumerate(pair, {2, 3, 5000});
    std::set<std::vector<Elem>> seen;
    for (const auto& c : cs.classes()) {
      auto expect = joint_table(pair, c.representative, c.arity);
      auto got = cs.joint_table(c.id);
      CHECK(std::equal(expect.begin(), expect.end(), got.begin(), got.end()));
      CHECK(seen.insert(expect).second);
      CHECK(c.representative.max_variable() <= c.arity);
      CHECK(c.representative.depth() == c.depth);
      CHECK(c.print == print_term(c.representative));
      CHECK(cs.find(c.arity, got) == c.id);
    }
  }
}

TEST_CASE("deeper bounds only add classes") {
  std::mt19937 rng(22);
  for (int round = 0; round < 20; ++round) {
    auto a = testing::random_algebra(rng, {4, {2, 1}, 1});
    AlgebraPair pair(a);
    auto lo = enumerate(pair, {2, 2, 100000});
    auto hi = enumerate(pair, {2, 3, 100000});
    for (std::uint32_t k = 0; k <= 2; ++k) {
      auto small = tables_of(lo, k);
      auto big = tables_of(hi, k);
      CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
  }
}

TEST_CASE("saturated enumerations are complete") {
  std::mt19937 rng(23);
  int saturated = 0;
  for (int round = 0; round < 30; ++round) {
    auto a = testing::random_algebra(rng, {3, {2}, 1});
    AlgebraPair pair(a);
    auto cs = enumerate(pair, {1, 6, 100000});
    if (!cs.saturated()) continue;
    ++saturated;
    auto deeper = enumerate(pair, {1, 12, 100000});
    CHECK(tables_of(cs, 1) == tables_of(deeper, 1));
    CHECK(tables_of(cs, 0) == tables_of(deeper, 0));
  }
  CHECK(saturated > 10);
}

TEST_CASE("class order is by arity, depth, print") {
  auto cs = enumerate(AlgebraPair(testing::structure("intAddSub8")), {2, 2});
  for (std::uint32_t id = 1; id < cs.size(); ++id) {
    const auto& p = cs.at(id - 1);
    const auto& c = cs.at(id);
    CHECK(c.id == id);
    CHECK(std::tie(p.arity, p.depth, p.print) < std::tie(c.arity, c.depth, c.print));
  }
}

TEST_CASE("cap and budget") {
  AlgebraPair pair(testing::structure("intAddSub8"));
  auto capped = enumerate(pair, {2, 4, 3});
  CHECK(capped.incomplete());
  CHECK_FALSE(capped.saturated());
  CHECK(capped.arity_info(1).cap_hit);
  CHECK_FALSE(capped.warnings().empty());

  auto roomy = enumerate(pair, {1, 2, 50000});
  CHECK_FALSE(roomy.incomplete());
  CHECK_FALSE(roomy.saturated());

  auto budget = enumerate(pair, {2, 4, 50000, 2000});
  CHECK(budget.arity_info(2).budget_hit);

  CHECK_THROWS_AS(enumerate(pair, {1, 0}), BadParams);
}

TEST_CASE("class lookup") {
  auto alg = testing::structure("boolOr");
  auto cs = enumerate(AlgebraPair(alg));
  auto t = parse_term("or(z1,or(z1,one))", alg->language());
  auto id = class_of(cs, t);
  REQUIRE(id.has_value());
  CHECK(cs.at(*id).print == "one");
  CHECK(cs.at(*id).arity == 1);
  auto id2 = class_of(cs, t, 2);
  REQUIRE(id2.has_value());
  CHECK(cs.at(*id2).arity == 2);
  CHECK_THROWS_AS(class_of(cs, Term::variable(3)), UnboundVariable);
}

TEST_CASE("cross-domain pair") {
  const auto& reg = testing::structures();
  AlgebraPair pair(reg.get("natMul"), reg.get("words8"));
  auto cs = enumerate(pair, {1, 6});
  CHECK(cs.saturated());
  CHECK(cs.classes(0).empty());
  CHECK(cs.arity_info(1).source_points == 100);
  CHECK(cs.arity_info(1).target_points == 511);
}
