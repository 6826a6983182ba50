#include "proportia/kernels.hpp"

#include <unordered_map>

namespace proportia {

std::uint64_t hash_table(std::span<const Elem> table) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Elem v : table) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

void compose_into(const PartialAlgebra& alg, std::size_t fn,
                  std::span<const Elem* const> args, std::size_t points, Elem* out) {
  const OpTable& table = alg.op(fn);
  const std::size_t n = alg.size();
  const Elem* values = table.values.data();
  switch (args.size()) {
    case 1:
      for (std::size_t p = 0; p < points; ++p) {
        Elem x = args[0][p];
        out[p] = x == kUndefined ? kUndefined : values[x];
      }
      return;
    case 2:
      for (std::size_t p = 0; p < points; ++p) {
        Elem x = args[0][p];
        Elem y = args[1][p];
        out[p] = (x == kUndefined || y == kUndefined) ? kUndefined
                                                      : values[std::size_t{x} * n + y];
      }
      return;
    default:
      for (std::size_t p = 0; p < points; ++p) {
        std::size_t row = 0;
        bool defined = true;
        for (const Elem* arg : args) {
          if (arg[p] == kUndefined) {
            defined = false;
            break;
          }
          row = row * n + arg[p];
        }
        out[p] = defined ? values[row] : kUndefined;
      }
  }
}

namespace {

void compose_one(const ComposeBatch& batch, const std::uint32_t* ids, Elem* out,
                 std::uint64_t* hash) {
  std::vector<const Elem*> args(batch.rank);
  for (std::uint32_t j = 0; j < batch.rank; ++j)
    args[j] = batch.store + std::size_t{ids[j]} * batch.width;
  compose_into(batch.pair->source(), batch.fn, args, batch.source_points, out);
  for (auto& a : args) a += batch.source_points;
  compose_into(batch.pair->target(), batch.fn, args, batch.width - batch.source_points,
               out + batch.source_points);
  *hash = hash_table({out, batch.width});
}

}  // namespace

void compose_batch(Exec exec, const ComposeBatch& batch,
                   std::span<const std::uint32_t> arg_ids, Elem* out,
                   std::uint64_t* hashes) {
  const std::size_t count = batch.rank ? arg_ids.size() / batch.rank : 0;
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      compose_one(batch, arg_ids.data() + i * batch.rank, out + i * batch.width, hashes + i);
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      compose_one(batch, arg_ids.data() + i * batch.rank, out + i * batch.width, hashes + i);
  }
}

namespace {

struct Projection {
  Bits b;
  Bits d;
  bool keep = false;
};

Projection project(const ProfileInput& in, std::size_t local) {
  const std::uint32_t t = in.first_id + static_cast<std::uint32_t>(local);
  Projection out;
  if (in.skip && in.skip(t)) return out;
  const Elem* table = in.store + local * in.width;
  out.b = Bits(in.source_size);
  for (auto e : in.es) {
    Elem v = table[e];
    if (v != kUndefined) out.b.set(v);
  }
  if (out.b.none()) return out;
  out.d = Bits(in.target_size);
  const Elem* target = table + in.source_points;
  for (auto f : in.fs) {
    Elem v = target[f];
    if (v != kUndefined) out.d.set(v);
  }
  out.keep = out.d.any();
  return out;
}

struct PairHash {
  std::size_t operator()(const std::pair<Bits, Bits>& p) const {
    return p.first.hash() * 31 + p.second.hash();
  }
};

}  // namespace

std::vector<ProfileEntry> profile_entries(Exec exec, const ProfileInput& input) {
  std::vector<Projection> projections(input.count);
  const auto n = static_cast<std::int64_t>(input.count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) projections[i] = project(input, i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) projections[i] = project(input, i);
  }
  std::vector<ProfileEntry> entries;
  std::unordered_map<std::pair<Bits, Bits>, std::size_t, PairHash> index;
  for (std::size_t i = 0; i < input.count; ++i) {
    auto& p = projections[i];
    if (!p.keep) continue;
    auto key = std::make_pair(std::move(p.b), std::move(p.d));
    auto [it, inserted] = index.try_emplace(key, entries.size());
    if (inserted) {
      entries.push_back({std::move(key.first), std::move(key.second),
                         input.first_id + static_cast<std::uint32_t>(i), 1});
    } else {
      ++entries[it->second].t_count;
    }
  }
  return entries;
}

void for_range(Exec exec, std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  }
}

}  // namespace proportia
