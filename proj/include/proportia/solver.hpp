#pragma once

// Subset-maximality solving of a:b::c:z over a ClassSet.
//
// For a fixed (a, c) every s groups by its preimages Es = s^-A(a) and
// Fs = s^-B(c). Each right-hand side t of the same arity then contributes the
// pair (t^A(Es), t^B(Fs)); the distinct pairs of a group are its profile.
// For a given b the family F_b = {D : (B, D) in some profile, b in B} decides
// everything: Jus(d) is contained in Jus(d') iff d' lies in every D of F_b
// that contains d.

#include <cstdint>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "proportia/bits.hpp"
#include "proportia/clone.hpp"
#include "proportia/justification.hpp"

namespace proportia {

struct SolveOptions {
  // Leave out every pair s -> t that justifies every 4-tuple over the pair.
  bool exclude_trivial = false;
  Exec exec = Exec::parallel;
};

// A rejected d with a solution d' above it and a pair s -> t that justifies
// a:b::c:d' but not a:b::c:d.
struct Dominance {
  Elem rejected = 0;
  Elem dominator = 0;
  std::uint32_t s = 0;
  std::uint32_t t = 0;
};

struct SolutionReport {
  Elem a = 0, b = 0, c = 0;
  std::vector<Elem> solutions;
  // |Jus(a:b::c:d)| for every target element d.
  std::vector<std::uint64_t> jus_count;
  std::vector<Dominance> dominance;
  // Every Jus set was empty, so every d is a solution.
  bool degenerate = false;
};

struct Verdict {
  bool holds = false;
  bool degenerate = false;
  std::optional<Dominance> evidence;
};

struct FunctionalSolution {
  Elem b = 0;
  Elem d = 0;
  // z1 -> t has a class in the ClassSet (at arity 1).
  bool enumerated = false;
  Characteristic tag = Characteristic::yes_by_injectivity;
};

class Solver {
 public:
  explicit Solver(const ClassSet& cs, SolveOptions options = {});

  const ClassSet& classes() const { return cs_; }
  const SolveOptions& options() const { return options_; }

  SolutionReport solve(Elem a, Elem b, Elem c) const;
  Verdict holds(Elem a, Elem b, Elem c, Elem d) const;
  Bits solution_mask(Elem a, Elem b, Elem c) const;
  // Solution masks for every b at once.
  std::vector<Bits> solution_masks(Elem a, Elem c) const;

  // holds(a,b,c,d) for the whole carrier, indexed ((a*nS + b)*nT + c) -> mask
  // over d. Computed on first use.
  const std::vector<Bits>& holds_table() const;

  Characteristic characteristic(const Rule& r, Elem a, Elem b, Elem c, Elem d) const;
  Characteristic characteristic(std::uint32_t s, std::uint32_t t, Elem a, Elem b, Elem c,
                                Elem d) const;

  FunctionalSolution functional_solution(const Term& t, Elem a, Elem c) const;

 private:
  struct FamilyMember {
    const Bits* d;
    std::uint32_t s;
    std::uint32_t t;
    std::uint64_t count;
  };
  struct Profile {
    std::uint32_t s_min = 0;
    std::uint64_t s_count = 0;
    std::shared_ptr<const std::vector<ProfileEntry>> entries;
  };
  struct Outcome {
    Bits solutions;
    bool degenerate = false;
    std::vector<Bits> includes;  // includes[d] = {d' : Jus(d) within Jus(d')}
    Bits nonempty;
  };

  std::vector<Profile> profiles(Elem a, Elem c, Exec exec) const;
  static std::vector<FamilyMember> family(const std::vector<Profile>& profiles, Elem b);
  Outcome decide(const std::vector<FamilyMember>& fam) const;

  const ClassSet& cs_;
  SolveOptions options_;
  std::unique_ptr<TrivialityChecker> triviality_;

  struct Key {
    std::uint32_t arity;
    std::uint32_t s;  // only set when trivial pairs are excluded
    Bits es;
    Bits fs;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return (k.es.hash() * 1000003u) ^ k.fs.hash() ^ (std::size_t{k.arity} << 48) ^ k.s;
    }
  };
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<Key, std::shared_ptr<const std::vector<ProfileEntry>>, KeyHash> memo_;
  // Solution masks already decided, keyed by (a, b, c).
  mutable std::map<std::array<Elem, 3>, Bits> masks_;
  mutable std::once_flag holds_once_;
  mutable std::vector<Bits> holds_;
};

}  // namespace proportia
