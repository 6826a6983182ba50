#include "proportia/clone.hpp"

#include <algorithm>
#include <numeric>

#include "proportia/error.hpp"

namespace proportia {

namespace {

struct Meta {
  Term term;
  std::string print;
  std::uint32_t depth;
};

// Flat table store with a hash index, used for committed classes and for the
// pending classes of the level being built.
struct TableSet {
  std::size_t width = 0;
  std::vector<Elem> tables;
  std::vector<Meta> meta;
  std::unordered_multimap<std::uint64_t, std::uint32_t> index;

  std::size_t size() const { return meta.size(); }
  const Elem* table(std::size_t i) const { return tables.data() + i * width; }

  std::optional<std::uint32_t> find(const Elem* tb, std::uint64_t h) const {
    auto [lo, hi] = index.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (std::equal(tb, tb + width, table(it->second))) return it->second;
    }
    return std::nullopt;
  }

  void add(const Elem* tb, std::uint64_t h, Meta m) {
    index.emplace(h, static_cast<std::uint32_t>(meta.size()));
    tables.insert(tables.end(), tb, tb + width);
    meta.push_back(std::move(m));
  }
};

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

class ArityBuilder {
 public:
  ArityBuilder(const AlgebraPair& pair, const Bounds& bounds, Exec exec, std::uint32_t k)
      : pair_(pair), bounds_(bounds), exec_(exec) {
    info_.arity = k;
    info_.source_points = point_count(pair.source().size(), k);
    info_.target_points = point_count(pair.target().size(), k);
    committed_.width = info_.width();
  }

  void run() {
    seed();
    if (stopped_) return;
    for (std::uint32_t d = 1; d <= bounds_.max_depth; ++d) {
      level(d);
      if (stopped_) return;
      info_.completed_depth = d;
      if (last_level_empty_) {
        info_.saturated = true;
        return;
      }
    }
  }

  ArityInfo& info() { return info_; }
  TableSet& committed() { return committed_; }

  // Adds a class produced outside the level loop; returns false at the cap.
  bool add_extra(const Elem* tb, Meta m) {
    std::uint64_t h = hash_table({tb, committed_.width});
    if (committed_.find(tb, h)) return true;
    if (committed_.size() >= bounds_.cap) {
      info_.cap_hit = true;
      info_.saturated = false;
      return false;
    }
    committed_.add(tb, h, std::move(m));
    ++info_.closure_added;
    info_.saturated = false;
    return true;
  }

 private:
  void begin_level() {
    pending_ = TableSet{};
    pending_.width = committed_.width;
  }

  // Offers one candidate; `make` builds its representative lazily.
  template <typename Make>
  void offer(const Elem* tb, std::uint64_t h, Make&& make) {
    if (committed_.find(tb, h)) return;
    if (auto at = pending_.find(tb, h)) {
      Meta m = make();
      if (m.print < pending_.meta[*at].print) pending_.meta[*at] = std::move(m);
      return;
    }
    if (committed_.size() + pending_.size() >= bounds_.cap) {
      info_.cap_hit = true;
      stopped_ = true;
      return;
    }
    pending_.add(tb, h, make());
  }

  void commit_level() {
    std::vector<std::uint32_t> order(pending_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      return pending_.meta[x].print < pending_.meta[y].print;
    });
    for (auto i : order) {
      const Elem* tb = pending_.table(i);
      committed_.add(tb, hash_table({tb, committed_.width}), std::move(pending_.meta[i]));
    }
    last_level_empty_ = pending_.size() == 0;
  }

  void seed() {
    begin_level();
    level_start_.push_back(0);
    const std::uint32_t k = info_.arity;
    const std::size_t ns = pair_.source().size();
    const std::size_t nt = pair_.target().size();
    std::vector<Elem> tb(committed_.width);
    for (std::uint32_t v = 1; v <= k && !stopped_; ++v) {
      auto fill = [&](std::size_t n, std::size_t points, Elem* out) {
        std::size_t stride = point_count(n, k - v);
        for (std::size_t p = 0; p < points; ++p) out[p] = static_cast<Elem>(p / stride % n);
      };
      fill(ns, info_.source_points, tb.data());
      fill(nt, info_.target_points, tb.data() + info_.source_points);
      Term t = Term::variable(v);
      offer(tb.data(), hash_table(tb), [&] { return Meta{t, print_term(t), 0}; });
    }
    const auto consts = pair_.language().constants();
    for (std::size_t c = 0; c < consts.size() && !stopped_; ++c) {
      std::fill(tb.begin(), tb.begin() + info_.source_points, pair_.source().constant(c));
      std::fill(tb.begin() + info_.source_points, tb.end(), pair_.target().constant(c));
      Term t = Term::constant(consts[c]);
      offer(tb.data(), hash_table(tb), [&] { return Meta{t, consts[c], 0}; });
    }
    commit_level();
  }

  void level(std::uint32_t d) {
    begin_level();
    const auto n_before = static_cast<std::uint32_t>(committed_.size());
    const std::uint32_t prev_start = level_start_[d - 1];
    level_start_.push_back(n_before);
    const std::size_t width = committed_.width;
    const std::size_t chunk_cap =
        std::max<std::size_t>(1, std::min<std::size_t>(4096, (std::size_t{1} << 22) / width));
    const auto fns = pair_.language().functions();

    for (std::size_t f = 0; f < fns.size() && !stopped_; ++f) {
      const std::uint32_t r = fns[f].rank;
      ComposeBatch batch{&pair_, f, r, committed_.tables.data(), width, info_.source_points};
      // Block j: positions before j draw from [0, prev_start), position j from
      // the previous level, positions after j from [0, n_before).
      for (std::uint32_t j = 0; j < r && !stopped_; ++j) {
        std::vector<std::uint32_t> lo(r), hi(r);
        std::size_t total = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
          lo[i] = (i == j) ? prev_start : 0;
          hi[i] = (i < j) ? prev_start : n_before;
          total = saturating_mul(total, hi[i] - lo[i]);
        }
        if (total == 0) continue;
        std::vector<std::uint32_t> cursor(lo);
        std::size_t done = 0;
        std::vector<std::uint32_t> ids;
        std::vector<Elem> out;
        std::vector<std::uint64_t> hashes;
        while (done < total && !stopped_) {
          std::size_t allowed = (bounds_.entry_budget - std::min(bounds_.entry_budget, used_)) / width;
          if (allowed == 0) {
            info_.budget_hit = true;
            stopped_ = true;
            break;
          }
          std::size_t count = std::min({chunk_cap, total - done, allowed});
          ids.resize(count * r);
          for (std::size_t c = 0; c < count; ++c) {
            std::copy(cursor.begin(), cursor.end(), ids.begin() + c * r);
            for (std::uint32_t i = r; i-- > 0;) {
              if (++cursor[i] < hi[i]) break;
              cursor[i] = lo[i];
            }
          }
          out.resize(count * width);
          hashes.resize(count);
          compose_batch(exec_, batch, ids, out.data(), hashes.data());
          used_ += count * width;
          done += count;
          for (std::size_t c = 0; c < count && !stopped_; ++c) {
            const std::uint32_t* args = ids.data() + c * r;
            offer(out.data() + c * width, hashes[c], [&] {
              std::vector<Term> sub;
              std::string print = fns[f].name + "(";
              for (std::uint32_t i = 0; i < r; ++i) {
                if (i) print += ',';
                print += committed_.meta[args[i]].print;
                sub.push_back(committed_.meta[args[i]].term);
              }
              print += ')';
              return Meta{Term::apply(fns[f].name, std::move(sub)), std::move(print), d};
            });
          }
        }
      }
    }
    commit_level();
  }

  const AlgebraPair& pair_;
  const Bounds& bounds_;
  Exec exec_;
  ArityInfo info_;
  TableSet committed_;
  TableSet pending_;
  std::vector<std::uint32_t> level_start_;
  std::size_t used_ = 0;
  bool stopped_ = false;
  bool last_level_empty_ = false;
};

// z_k := z_{k-1}: table of arity k restricted to points whose last two
// coordinates agree.
std::vector<Elem> identify(const Elem* tb, std::size_t n, std::size_t points_lower) {
  std::vector<Elem> out(points_lower);
  for (std::size_t p = 0; p < points_lower; ++p) out[p] = tb[p * n + p % n];
  return out;
}

// Views an arity k-1 table as arity k, ignoring the new last variable.
std::vector<Elem> cylindrify(const Elem* tb, std::size_t n, std::size_t points_upper) {
  std::vector<Elem> out(points_upper);
  for (std::size_t p = 0; p < points_upper; ++p) out[p] = tb[p / n];
  return out;
}

}  // namespace

std::span<const TermClass> ClassSet::classes(std::uint32_t arity) const {
  if (arity >= arities_.size()) return {};
  const auto& info = arities_[arity];
  return std::span<const TermClass>(classes_).subspan(info.begin, info.end - info.begin);
}

std::span<const Elem> ClassSet::joint_table(std::uint32_t id) const {
  const auto& c = classes_[id];
  const auto& info = arities_[c.arity];
  return {stores_[c.arity].data() + std::size_t{id - info.begin} * info.width(), info.width()};
}

std::span<const Elem> ClassSet::source_table(std::uint32_t id) const {
  return joint_table(id).first(arities_[classes_[id].arity].source_points);
}

std::span<const Elem> ClassSet::target_table(std::uint32_t id) const {
  return joint_table(id).subspan(arities_[classes_[id].arity].source_points);
}

bool ClassSet::saturated() const {
  return std::all_of(arities_.begin(), arities_.end(),
                     [](const ArityInfo& a) { return a.saturated; });
}

bool ClassSet::incomplete() const {
  return std::any_of(arities_.begin(), arities_.end(), [](const ArityInfo& a) {
    return (a.cap_hit || a.budget_hit) && a.completed_depth < 1;
  });
}

std::optional<std::uint32_t> ClassSet::find(std::uint32_t arity,
                                            std::span<const Elem> joint) const {
  if (arity >= arities_.size() || joint.size() != arities_[arity].width()) return std::nullopt;
  auto [lo, hi] = index_[arity].equal_range(hash_table(joint));
  for (auto it = lo; it != hi; ++it) {
    auto table = joint_table(it->second);
    if (std::equal(joint.begin(), joint.end(), table.begin())) return it->second;
  }
  return std::nullopt;
}

ClassSet enumerate(const AlgebraPair& pair, const Bounds& bounds, Exec exec) {
  if (bounds.max_depth < 1) throw BadParams("max depth must be at least 1");
  if (bounds.cap < 1) throw BadParams("cap must be positive");
  ClassSet cs(pair, bounds);
  std::vector<ArityBuilder> builders;
  builders.reserve(bounds.max_arity + 1);
  for (std::uint32_t k = 0; k <= bounds.max_arity; ++k) {
    builders.emplace_back(pair, bounds, exec, k);
    builders.back().run();
  }

  const std::size_t ns = pair.source().size();
  const std::size_t nt = pair.target().size();
  for (std::uint32_t k = 1; k <= bounds.max_arity; ++k) {
    auto& lower = builders[k - 1];
    auto& upper = builders[k];
    const std::size_t upper_count = upper.committed().size();
    const std::size_t lower_count = lower.committed().size();
    if (k >= 2) {
      std::vector<Term> repl;
      for (std::uint32_t v = 1; v < k; ++v) repl.push_back(Term::variable(v));
      repl.push_back(Term::variable(k - 1));
      for (std::size_t i = 0; i < upper_count; ++i) {
        const Elem* tb = upper.committed().table(i);
        auto joint = identify(tb, ns, lower.info().source_points);
        auto target = identify(tb + upper.info().source_points, nt, lower.info().target_points);
        joint.insert(joint.end(), target.begin(), target.end());
        const Meta& m = upper.committed().meta[i];
        Term t = m.term.substitute(repl);
        if (!lower.add_extra(joint.data(), Meta{t, print_term(t), m.depth})) break;
      }
    }
    for (std::size_t i = 0; i < lower_count; ++i) {
      const Elem* tb = lower.committed().table(i);
      auto joint = cylindrify(tb, ns, upper.info().source_points);
      auto target = cylindrify(tb + lower.info().source_points, nt, upper.info().target_points);
      joint.insert(joint.end(), target.begin(), target.end());
      if (!upper.add_extra(joint.data(), lower.committed().meta[i])) break;
    }
  }

  for (std::uint32_t k = 0; k <= bounds.max_arity; ++k) {
    auto& set = builders[k].committed();
    ArityInfo info = builders[k].info();
    std::vector<std::uint32_t> order(set.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      const Meta& a = set.meta[x];
      const Meta& b = set.meta[y];
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.print < b.print;
    });
    info.begin = static_cast<std::uint32_t>(cs.classes_.size());
    std::vector<Elem> store;
    store.reserve(set.tables.size());
    std::unordered_multimap<std::uint64_t, std::uint32_t> index;
    for (auto i : order) {
      const Elem* tb = set.table(i);
      store.insert(store.end(), tb, tb + set.width);
      auto id = static_cast<std::uint32_t>(cs.classes_.size());
      index.emplace(hash_table({tb, set.width}), id);
      Meta& m = set.meta[i];
      cs.classes_.push_back(TermClass{id, k, m.depth, std::move(m.term), std::move(m.print)});
    }
    info.end = static_cast<std::uint32_t>(cs.classes_.size());
    if (info.cap_hit)
      cs.warnings_.push_back("arity " + std::to_string(k) + ": cap of " +
                             std::to_string(bounds.cap) + " classes reached after depth " +
                             std::to_string(info.completed_depth));
    if (info.budget_hit)
      cs.warnings_.push_back("arity " + std::to_string(k) + ": entry budget exhausted after depth " +
                             std::to_string(info.completed_depth));
    if (info.closure_added)
      cs.warnings_.push_back("arity " + std::to_string(k) + ": variable closure added " +
                             std::to_string(info.closure_added) + " classes");
    cs.arities_.push_back(info);
    cs.stores_.push_back(std::move(store));
    cs.index_.push_back(std::move(index));
  }
  return cs;
}

std::vector<Elem> joint_table(const AlgebraPair& pair, const Term& t, std::uint32_t arity) {
  auto joint = term_table(pair.source(), t, arity);
  auto target = term_table(pair.target(), t, arity);
  joint.insert(joint.end(), target.begin(), target.end());
  return joint;
}

std::optional<std::uint32_t> class_of(const ClassSet& cs, const Term& t,
                                      std::optional<std::uint32_t> arity) {
  const std::uint32_t k = arity.value_or(t.max_variable());
  if (t.max_variable() > k) throw UnboundVariable(t.max_variable());
  if (k > cs.max_arity()) throw UnboundVariable(std::max(k, t.max_variable()));
  return cs.find(k, joint_table(cs.pair(), t, k));
}

}  // namespace proportia
