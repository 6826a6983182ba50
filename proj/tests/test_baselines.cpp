#include <doctest.h>

#include "proportia/baselines.hpp"
#include "proportia/error.hpp"
#include "support.hpp"

using namespace proportia;

namespace {

// Exhaustive search for a1+a2=a, a1+d2=b, d1+a2=c, d1+d2=d within [-r, r].
bool sy_numbers_search(int a, int b, int c, int d, int r) {
  for (int a1 = -r; a1 <= r; ++a1)
    for (int a2 = -r; a2 <= r; ++a2) {
      if (a1 + a2 != a) continue;
      const int d2 = b - a1;
      const int d1 = c - a2;
      if (d1 + d2 == d && std::abs(d1) <= r && std::abs(d2) <= r) return true;
    }
  return false;
}

// Exhaustive search over all quadruples of subsets of a 3-element universe.
bool sy_sets_search(SetMask a, SetMask b, SetMask c, SetMask d) {
  for (SetMask a1 = 0; a1 < 8; ++a1)
    for (SetMask a2 = 0; a2 < 8; ++a2)
      for (SetMask d1 = 0; d1 < 8; ++d1)
        for (SetMask d2 = 0; d2 < 8; ++d2)
          if ((a1 | a2) == a && (a1 | d2) == b && (d1 | a2) == c && (d1 | d2) == d) return true;
  return false;
}

bool mbd_search(SetMask a, SetMask b, SetMask c, SetMask d) {
  for (SetMask e = 0; e < 8; ++e)
    for (SetMask f = 0; f < 8; ++f)
      if (((a & ~e) | f) == b && ((c & ~e) | f) == d) return true;
  return false;
}

}  // namespace

TEST_CASE("sy_numbers matches an exhaustive decomposition search") {
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c)
        for (int d = -4; d <= 4; ++d) {
          auto v = sy_numbers(a, b, c, d, 4);
          CHECK(v.holds == sy_numbers_search(a, b, c, d, 12));
          if (v.holds) {
            const auto& w = v.numbers;
            CHECK(w[0] + w[1] == a);
            CHECK(w[0] + w[3] == b);
            CHECK(w[2] + w[1] == c);
            CHECK(w[2] + w[3] == d);
          }
        }
  CHECK_FALSE(sy_numbers(0, 0, 1, 2, 10).holds);
  CHECK(sy_numbers(1, 2, 3, 4, 10).holds);
  CHECK_THROWS_AS(sy_numbers(0, 0, 11, 11, 10), OutOfBound);
}

TEST_CASE("set models match exhaustive searches") {
  for (SetMask a = 0; a < 8; ++a)
    for (SetMask b = 0; b < 8; ++b)
      for (SetMask c = 0; c < 8; ++c)
        for (SetMask d = 0; d < 8; ++d) {
          auto sy = sy_sets(a, b, c, d, 7);
          CHECK(sy.holds == sy_sets_search(a, b, c, d));
          if (sy.holds) {
            const auto& s = sy.sets;
            CHECK((s[0] | s[1]) == a);
            CHECK((s[0] | s[3]) == b);
            CHECK((s[2] | s[1]) == c);
            CHECK((s[2] | s[3]) == d);
          }
          auto mbd = mbd_sets(a, b, c, d, 7);
          CHECK(mbd.holds == mbd_search(a, b, c, d));
          if (mbd.holds) {
            CHECK((((a & ~mbd.sets[0]) | mbd.sets[1]) == b));
            CHECK((((c & ~mbd.sets[0]) | mbd.sets[1]) == d));
          }
        }
  // {a}:{a}::{a}:{} in the universe {a}
  CHECK(sy_sets(1, 1, 1, 0, 1).holds);
  CHECK_THROWS_AS(sy_sets(2, 0, 0, 0, 1), NotSubsetOfUniverse);
  CHECK_THROWS_AS(mbd_sets(0, 0, 0, 4, 3), NotSubsetOfUniverse);
}

TEST_CASE("model names") {
  CHECK(parse_model("mbd") == Model::mbd_sets);
  CHECK(parse_model("sy") == Model::sy_sets);
  CHECK(parse_model("sy_numbers") == Model::sy_numbers);
  CHECK_FALSE(parse_model("xyz").has_value());
}

TEST_CASE("comparison against the solver") {
  auto pow = testing::structure("powAB");
  auto cs = enumerate(AlgebraPair(pow));
  Solver s(cs);
  auto rep = compare(Model::mbd_sets, s);
  CHECK(rep.tuples == 256);
  CHECK(rep.baseline_only.empty());
  CHECK(rep.both + rep.neither + rep.solver_only.size() == 256);
  const std::array<Elem, 4> example{pow->element("{a}"), pow->element("{b}"), pow->element("{}"),
                                    pow->element("{a,b}")};
  CHECK(std::find(rep.solver_only.begin(), rep.solver_only.end(), example) != rep.solver_only.end());

  CHECK_THROWS_AS(compare(Model::sy_numbers, s), BadParams);
  CHECK_THROWS_AS(compare(Model::mbd_sets, s, 100), ScopeTooLarge);
  auto ints = enumerate(AlgebraPair(testing::structure("intAdd6")), {1, 2});
  CHECK_THROWS_AS(compare(Model::sy_sets, Solver(ints)), BadParams);
}
