#include <doctest.h>

#include <random>

#include "proportia/clone.hpp"
#include "proportia/kernels.hpp"
#include "proportia/solver.hpp"
#include "support.hpp"

using namespace proportia;

TEST_CASE("compose_batch: parallel equals serial") {
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    auto src = testing::random_algebra(rng, {5, {2, 1}, 1, round % 2 ? 0.2 : 0.0});
    AlgebraPair pair(src);
    const std::uint32_t arity = 2;
    const std::size_t points = point_count(src->size(), arity);
    const std::size_t width = 2 * points;
    const std::size_t classes = 12;
    std::uniform_int_distribution<Elem> value(0, static_cast<Elem>(src->size() - 1));
    std::vector<Elem> store(classes * width);
    for (auto& v : store) v = value(rng);
    for (std::size_t fn = 0; fn < 2; ++fn) {
      const std::uint32_t rank = src->language().functions()[fn].rank;
      ComposeBatch batch{&pair, fn, rank, store.data(), width, points};
      const std::size_t count = 40;
      std::vector<std::uint32_t> ids(count * rank);
      std::uniform_int_distribution<std::uint32_t> pick(0, classes - 1);
      for (auto& id : ids) id = pick(rng);
      std::vector<Elem> serial(count * width), parallel(count * width);
      std::vector<std::uint64_t> hs(count), hp(count);
      compose_batch(Exec::serial, batch, ids, serial.data(), hs.data());
      compose_batch(Exec::parallel, batch, ids, parallel.data(), hp.data());
      CHECK(serial == parallel);
      CHECK(hs == hp);
      for (std::size_t i = 0; i < count; ++i)
        CHECK(hs[i] == hash_table({serial.data() + i * width, width}));
    }
  }
}

TEST_CASE("profile_entries: parallel equals serial") {
  std::mt19937 rng(12);
  for (int round = 0; round < 20; ++round) {
    auto alg = testing::random_algebra(rng, {4, {2}, 1, 0.1});
    auto cs = enumerate(AlgebraPair(alg), {1, 3});
    const auto& info = cs.arity_info(1);
    if (info.end == info.begin) continue;
    std::vector<std::uint32_t> es, fs;
    for (std::uint32_t p = 0; p < info.source_points; ++p)
      if (rng() % 2) es.push_back(p);
    for (std::uint32_t p = 0; p < info.target_points; ++p)
      if (rng() % 2) fs.push_back(p);
    ProfileInput in;
    in.store = cs.arity_store(1);
    in.width = info.width();
    in.source_points = info.source_points;
    in.count = info.end - info.begin;
    in.first_id = info.begin;
    in.source_size = alg->size();
    in.target_size = alg->size();
    in.es = es;
    in.fs = fs;
    auto a = profile_entries(Exec::serial, in);
    auto b = profile_entries(Exec::parallel, in);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].b == b[i].b);
      CHECK(a[i].d == b[i].d);
      CHECK(a[i].t_min == b[i].t_min);
      CHECK(a[i].t_count == b[i].t_count);
    }
  }
}

TEST_CASE("enumeration and holds table do not depend on the executor") {
  std::mt19937 rng(13);
  for (int round = 0; round < 15; ++round) {
    auto alg = testing::random_algebra(rng, {4, {2, 1}, 1, round % 3 == 0 ? 0.15 : 0.0});
    Bounds bounds{2, 2, 2000};
    auto s = enumerate(AlgebraPair(alg), bounds, Exec::serial);
    auto p = enumerate(AlgebraPair(alg), bounds, Exec::parallel);
    REQUIRE(s.size() == p.size());
    for (std::uint32_t id = 0; id < s.size(); ++id) {
      CHECK(s.at(id).print == p.at(id).print);
      CHECK(std::equal(s.joint_table(id).begin(), s.joint_table(id).end(), p.joint_table(id).begin()));
    }
    CHECK(s.saturated() == p.saturated());
    Solver ss(s, {false, Exec::serial});
    Solver sp(p, {false, Exec::parallel});
    CHECK(ss.holds_table() == sp.holds_table());
  }
}

TEST_CASE("for_range visits every index once") {
  for (auto exec : {Exec::serial, Exec::parallel}) {
    std::vector<int> hits(1000, 0);
    for_range(exec, hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}
