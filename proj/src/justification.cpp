#include "proportia/justification.hpp"

#include <algorithm>

#include "proportia/error.hpp"

namespace proportia {

namespace {

std::size_t source_points(const AlgebraPair& pair, std::uint32_t arity) {
  return point_count(pair.source().size(), arity);
}

}  // namespace

Rule rule_of(const ClassSet& cs, std::uint32_t s, std::uint32_t t) {
  if (cs.at(s).arity != cs.at(t).arity)
    throw BadParams("justification sides must have the same arity");
  return {cs.at(s).arity, cs.joint_table(s), cs.joint_table(t)};
}

TermRule make_rule(const AlgebraPair& pair, const Term& s, const Term& t,
                   std::optional<std::uint32_t> arity) {
  TermRule r;
  r.arity = arity.value_or(std::max(s.max_variable(), t.max_variable()));
  r.s_term = s;
  r.t_term = t;
  r.s = joint_table(pair, s, r.arity);
  r.t = joint_table(pair, t, r.arity);
  return r;
}

Witnesses witnesses(const AlgebraPair& pair, const Rule& r, Elem a, Elem b, Elem c, Elem d,
                    std::size_t limit) {
  Witnesses w;
  const std::size_t ps = source_points(pair, r.arity);
  for (std::size_t p = 0; p < ps; ++p) {
    if (r.s[p] == a && r.t[p] == b) {
      w.source.push_back(p);
      if (limit && w.source.size() >= limit) break;
    }
  }
  for (std::size_t p = ps; p < r.s.size(); ++p) {
    if (r.s[p] == c && r.t[p] == d) {
      w.target.push_back(p - ps);
      if (limit && w.target.size() >= limit) break;
    }
  }
  return w;
}

bool justifies(const AlgebraPair& pair, const Rule& r, Elem a, Elem b, Elem c, Elem d) {
  auto w = witnesses(pair, r, a, b, c, d, 1);
  return !w.source.empty() && !w.target.empty();
}

Bits d_set(const AlgebraPair& pair, const Rule& r, Elem a, Elem b, Elem c) {
  Bits out(pair.target().size());
  const std::size_t ps = source_points(pair, r.arity);
  bool source_ok = false;
  for (std::size_t p = 0; p < ps && !source_ok; ++p) source_ok = r.s[p] == a && r.t[p] == b;
  if (!source_ok) return out;
  for (std::size_t p = ps; p < r.s.size(); ++p) {
    if (r.s[p] == c && r.t[p] != kUndefined) out.set(r.t[p]);
  }
  return out;
}

std::size_t target_preimage_size(const AlgebraPair& pair, const Rule& r, Elem c) {
  const std::size_t ps = source_points(pair, r.arity);
  return static_cast<std::size_t>(std::count(r.s.begin() + static_cast<std::ptrdiff_t>(ps), r.s.end(), c));
}

JusSet jus(const ClassSet& cs, Elem a, Elem b, Elem c, Elem d, std::size_t witness_limit,
           std::size_t member_limit) {
  const auto& pair = cs.pair();
  if (a >= pair.source().size() || b >= pair.source().size())
    throw ElementNotInCarrier(std::to_string(std::max(a, b)), pair.source().name());
  if (c >= pair.target().size() || d >= pair.target().size())
    throw ElementNotInCarrier(std::to_string(std::max(c, d)), pair.target().name());
  JusSet out{a, b, c, d, {}};
  for (std::uint32_t k = 0; k <= cs.max_arity(); ++k) {
    const auto& info = cs.arity_info(k);
    const std::size_t ps = info.source_points;
    for (std::uint32_t s = info.begin; s < info.end; ++s) {
      auto st = cs.joint_table(s);
      std::vector<std::size_t> es, fs;
      for (std::size_t p = 0; p < ps; ++p)
        if (st[p] == a) es.push_back(p);
      if (es.empty()) continue;
      for (std::size_t p = ps; p < st.size(); ++p)
        if (st[p] == c) fs.push_back(p);
      if (fs.empty()) continue;
      for (std::uint32_t t = info.begin; t < info.end; ++t) {
        auto tt = cs.joint_table(t);
        JustificationClass member{s, t, k, {}, {}};
        for (auto p : es) {
          if (tt[p] != b) continue;
          member.witnesses_source.push_back(p);
          if (witness_limit && member.witnesses_source.size() >= witness_limit) break;
        }
        if (member.witnesses_source.empty()) continue;
        for (auto p : fs) {
          if (tt[p] != d) continue;
          member.witnesses_target.push_back(p - ps);
          if (witness_limit && member.witnesses_target.size() >= witness_limit) break;
        }
        if (member.witnesses_target.empty()) continue;
        out.members.push_back(std::move(member));
        if (member_limit && out.members.size() >= member_limit) return out;
      }
    }
  }
  return out;
}

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> one_sided(const ClassSet& cs, Elem x, Elem y,
                                                               bool source) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t k = 0; k <= cs.max_arity(); ++k) {
    const auto& info = cs.arity_info(k);
    for (std::uint32_t s = info.begin; s < info.end; ++s) {
      auto st = source ? cs.source_table(s) : cs.target_table(s);
      for (std::uint32_t t = info.begin; t < info.end; ++t) {
        auto tt = source ? cs.source_table(t) : cs.target_table(t);
        for (std::size_t p = 0; p < st.size(); ++p) {
          if (st[p] == x && tt[p] == y) {
            out.emplace_back(s, t);
            break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> jus_source(const ClassSet& cs, Elem a, Elem b) {
  return one_sided(cs, a, b, true);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> jus_target(const ClassSet& cs, Elem c, Elem d) {
  return one_sided(cs, c, d, false);
}

TrivialityChecker::TrivialityChecker(const AlgebraPair& pair)
    : pair_(&pair),
      source_core_(definedness_core(pair.source())),
      target_core_(pair.same_domain() ? source_core_ : definedness_core(pair.target())),
      source_all_(pair.source().size(), true),
      target_all_(pair.target().size(), true) {
  source_core_size_ = static_cast<std::size_t>(std::count(source_core_.begin(), source_core_.end(), true));
  target_core_size_ = static_cast<std::size_t>(std::count(target_core_.begin(), target_core_.end(), true));
  partial_ = !pair.source().is_total() || !pair.target().is_total();
}

bool TrivialityChecker::covers(std::span<const Elem> s, std::span<const Elem> t, std::size_t n,
                               const std::vector<bool>& core, std::size_t core_size) const {
  Bits seen(n * n);
  std::size_t hit = 0;
  for (std::size_t p = 0; p < s.size(); ++p) {
    Elem x = s[p];
    Elem y = t[p];
    if (x == kUndefined || y == kUndefined || !core[x] || !core[y]) continue;
    std::size_t cell = std::size_t{x} * n + y;
    if (!seen.test(cell)) {
      seen.set(cell);
      if (++hit == core_size * core_size) return true;
    }
  }
  return hit == core_size * core_size;
}

Triviality TrivialityChecker::check(const Rule& r) const {
  const std::size_t ps = source_points(*pair_, r.arity);
  bool ok = covers(r.s.first(ps), r.t.first(ps), pair_->source().size(), source_core_,
                   source_core_size_) &&
            covers(r.s.subspan(ps), r.t.subspan(ps), pair_->target().size(), target_core_,
                   target_core_size_);
  return {ok, partial_};
}

bool TrivialityChecker::universal(const Rule& r) const {
  const std::size_t ps = source_points(*pair_, r.arity);
  return covers(r.s.first(ps), r.t.first(ps), pair_->source().size(), source_all_,
                source_all_.size()) &&
         covers(r.s.subspan(ps), r.t.subspan(ps), pair_->target().size(), target_all_,
                target_all_.size());
}

Triviality is_trivial(const ClassSet& cs, std::uint32_t s, std::uint32_t t) {
  return TrivialityChecker(cs.pair()).check(rule_of(cs, s, t));
}

std::string to_string(Characteristic tag) {
  switch (tag) {
    case Characteristic::yes_by_injectivity:
      return "yes_by_injectivity";
    case Characteristic::yes_by_exhaustion:
      return "yes_by_exhaustion";
    case Characteristic::no:
      return "no";
    case Characteristic::unknown:
      return "unknown";
  }
  return "unknown";
}

std::string format_point(const PartialAlgebra& alg, std::size_t point, std::uint32_t arity) {
  std::string out = "(";
  auto tuple = decode_point(point, alg.size(), arity);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    const std::string& lit = alg.literal(tuple[i]);
    out += lit.empty() ? std::string("\xCE\xB5") : lit;
  }
  return out + ")";
}

}  // namespace proportia
