#pragma once

// Inner loops shared by the clone engine and the solver. Every batch kernel
// has a serial reference and an OpenMP version; both must produce identical
// output for identical input.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "proportia/algebra.hpp"
#include "proportia/bits.hpp"

namespace proportia {

enum class Exec : std::uint8_t { serial, parallel };

std::uint64_t hash_table(std::span<const Elem> table);

// out[p] = f(args[0][p], ..., args[r-1][p]) for p < points, undefined if any
// argument is undefined or f is undefined there.
void compose_into(const PartialAlgebra& alg, std::size_t fn,
                  std::span<const Elem* const> args, std::size_t points, Elem* out);

// Joint (source then target) tables for `count` candidates that all apply
// function symbol `fn` of rank `rank`. Candidate i uses the classes
// arg_ids[i*rank .. i*rank+rank) of `store`, a flat array with `width`
// entries per class whose first `source_points` entries belong to the source.
struct ComposeBatch {
  const AlgebraPair* pair = nullptr;
  std::size_t fn = 0;
  std::uint32_t rank = 0;
  const Elem* store = nullptr;
  std::size_t width = 0;
  std::size_t source_points = 0;
};

void compose_batch(Exec exec, const ComposeBatch& batch,
                   std::span<const std::uint32_t> arg_ids, Elem* out,
                   std::uint64_t* hashes);

// One distinct (B-set, D-set) projection of a justification group: for every
// t in the group, B = t^A(Es) and D = t^B(Fs) over defined values.
struct ProfileEntry {
  Bits b;
  Bits d;
  std::uint32_t t_min = 0;
  std::uint64_t t_count = 0;
};

struct ProfileInput {
  // Tables of the candidate right-hand sides, flat as in ComposeBatch.
  const Elem* store = nullptr;
  std::size_t width = 0;
  std::size_t source_points = 0;
  std::size_t count = 0;
  std::uint32_t first_id = 0;
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::span<const std::uint32_t> es;
  std::span<const std::uint32_t> fs;
  // Optional filter; t is skipped when it returns true.
  std::function<bool(std::uint32_t)> skip;
};

// Entries are returned in order of their smallest t.
std::vector<ProfileEntry> profile_entries(Exec exec, const ProfileInput& input);

// Calls body(i) for i < count, in parallel when exec says so.
void for_range(Exec exec, std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace proportia
