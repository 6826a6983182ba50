#include "proportia/oracle.hpp"

#include <algorithm>

#include "proportia/error.hpp"

namespace proportia {

namespace {

// All terms over z1..zk of depth at most `depth`, each AST once.
std::vector<Term> all_terms(const Language& lang, std::uint32_t k, std::uint32_t depth,
                            std::size_t limit) {
  std::vector<std::vector<Term>> by_depth(1);
  for (std::uint32_t v = 1; v <= k; ++v) by_depth[0].push_back(Term::variable(v));
  for (const auto& c : lang.constants()) by_depth[0].push_back(Term::constant(c));
  std::size_t total = by_depth[0].size();
  for (std::uint32_t d = 1; d <= depth; ++d) {
    std::vector<Term> below;
    for (const auto& level : by_depth) below.insert(below.end(), level.begin(), level.end());
    std::vector<Term> next;
    for (const auto& fn : lang.functions()) {
      std::vector<std::size_t> idx(fn.rank, 0);
      if (below.empty()) break;
      while (true) {
        std::vector<Term> args;
        bool reaches = false;
        for (auto i : idx) {
          args.push_back(below[i]);
          reaches = reaches || below[i].depth() == d - 1;
        }
        if (reaches) {
          next.push_back(Term::apply(fn.name, std::move(args)));
          if (++total > limit)
            throw ScopeTooLarge("naive enumeration exceeds " + std::to_string(limit) + " terms");
        }
        std::size_t pos = fn.rank;
        while (pos > 0) {
          if (++idx[pos - 1] < below.size()) break;
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
    by_depth.push_back(std::move(next));
  }
  std::vector<Term> out;
  for (auto& level : by_depth) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace

NaiveOracle::NaiveOracle(AlgebraPair pair, std::uint32_t max_arity, std::uint32_t max_depth,
                         std::size_t term_limit)
    : pair_(std::move(pair)) {
  std::size_t total = 0;
  for (std::uint32_t k = 0; k <= max_arity; ++k) {
    Level level;
    level.arity = k;
    level.terms = all_terms(pair_.language(), k, max_depth, term_limit - total);
    total += level.terms.size();
    level.source_points = point_count(pair_.source().size(), k);
    const std::size_t target_points = point_count(pair_.target().size(), k);
    for (const auto& t : level.terms) {
      std::vector<Elem> values;
      for (std::size_t p = 0; p < level.source_points; ++p)
        values.push_back(eval_term(pair_.source(), t, decode_point(p, pair_.source().size(), k)));
      for (std::size_t p = 0; p < target_points; ++p)
        values.push_back(eval_term(pair_.target(), t, decode_point(p, pair_.target().size(), k)));
      level.values.push_back(std::move(values));
    }
    level.pair_offset = pair_count_;
    pair_count_ += level.terms.size() * level.terms.size();
    levels_.push_back(std::move(level));
  }
}

std::size_t NaiveOracle::term_count() const {
  std::size_t n = 0;
  for (const auto& l : levels_) n += l.terms.size();
  return n;
}

Bits NaiveOracle::jus(Elem a, Elem b, Elem c, Elem d) const {
  Bits out(pair_count_);
  for (const auto& level : levels_) {
    const std::size_t m = level.terms.size();
    for (std::size_t i = 0; i < m; ++i) {
      const auto& s = level.values[i];
      for (std::size_t j = 0; j < m; ++j) {
        const auto& t = level.values[j];
        bool left = false;
        bool right = false;
        for (std::size_t p = 0; p < s.size(); ++p) {
          if (p < level.source_points)
            left = left || (s[p] == a && t[p] == b);
          else
            right = right || (s[p] == c && t[p] == d);
        }
        if (left && right) out.set(level.pair_offset + i * m + j);
      }
    }
  }
  return out;
}

OracleResult NaiveOracle::solve(Elem a, Elem b, Elem c) const {
  const std::size_t n = pair_.target().size();
  std::vector<Bits> sets;
  for (Elem d = 0; d < n; ++d) sets.push_back(jus(a, b, c, d));
  OracleResult out;
  out.degenerate = true;
  for (const auto& s : sets) out.degenerate = out.degenerate && s.none();
  for (Elem d = 0; d < n; ++d) {
    bool maximal = true;
    for (Elem e = 0; e < n && maximal; ++e) {
      if (e != d && sets[d].subset_of(sets[e]) && !(sets[d] == sets[e])) maximal = false;
    }
    if (maximal) out.solutions.push_back(d);
  }
  return out;
}

bool NaiveOracle::holds(Elem a, Elem b, Elem c, Elem d) const {
  auto r = solve(a, b, c);
  return std::find(r.solutions.begin(), r.solutions.end(), d) != r.solutions.end();
}

}  // namespace proportia
