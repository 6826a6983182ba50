#include "proportia/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "proportia/axioms.hpp"
#include "proportia/baselines.hpp"
#include "proportia/error.hpp"
#include "proportia/oracle.hpp"
#include "proportia/solver.hpp"
#include "proportia/spec_file.hpp"

namespace proportia {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string spec;
  std::string pair;
  std::string algebra;
  std::uint32_t max_arity = 2;
  std::uint32_t max_depth = 4;
  std::size_t cap = 50000;
  std::size_t entry_budget = std::size_t{1} << 26;
  bool json = false;
  bool oracle = false;
  bool exclude_trivial = false;
  std::size_t members = 5;
  std::size_t counterexamples = 10;
  std::string query;
  std::string axiom;
  std::string model;
  std::string universe;
  std::string range;
  std::int64_t bound = 1'000'000;
  std::size_t listed = 10;
};

// Thrown when the command line itself is malformed.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error("UsageError", msg) {}
};

std::string show(const PartialAlgebra& alg, Elem e) {
  if (e == kUndefined) return "?";
  const auto& lit = alg.literal(e);
  return lit.empty() ? std::string("\xCE\xB5") : lit;
}

Elem parse_elem(const PartialAlgebra& alg, const std::string& text) {
  if (text == "\xCE\xB5") return alg.element("");
  return alg.element(text);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

class Session {
 public:
  explicit Session(const Options& opt) : opt_(opt) {
    std::string path = opt.spec;
    if (path.empty()) {
      if (const char* env = std::getenv("PROPORTIA_SPEC_PATH")) path = env;
    }
#ifdef PROPORTIA_DEFAULT_SPEC
    if (path.empty() && std::filesystem::exists(PROPORTIA_DEFAULT_SPEC)) path = PROPORTIA_DEFAULT_SPEC;
#endif
    if (!path.empty()) registry_ = load_spec(path);
    spec_path_ = path;
  }

  const Registry& registry() const { return registry_; }

  // Query suffix, then --pair, then --algebra, then the only loaded algebra.
  AlgebraPair pair(const std::optional<std::string>& src = std::nullopt,
                   const std::optional<std::string>& tgt = std::nullopt) const {
    if (src) return {registry_.get(*src), registry_.get(tgt.value_or(*src))};
    if (!opt_.pair.empty()) {
      auto names = split_commas(opt_.pair);
      if (names.empty() || names.size() > 2) throw UsageError("--pair expects NAME or NAME,NAME");
      if (names.size() == 1) return AlgebraPair(registry_.get(names[0]));
      return {registry_.get(names[0]), registry_.get(names[1])};
    }
    if (!opt_.algebra.empty()) return AlgebraPair(registry_.get(opt_.algebra));
    if (registry_.algebras.size() == 1) return AlgebraPair(registry_.algebras.begin()->second);
    throw MissingAlgebra(registry_.empty() ? "no algebra loaded; pass --spec"
                                           : "several algebras loaded; pass --pair or --algebra");
  }

  Bounds bounds() const {
    if (opt_.cap == 0) throw UsageError("--cap must be positive");
    return {opt_.max_arity, opt_.max_depth, opt_.cap, opt_.entry_budget};
  }

 private:
  const Options& opt_;
  Registry registry_;
  std::string spec_path_;
};

Json bounds_json(const ClassSet& cs) {
  Json j;
  j["bounds"] = {{"max_arity", cs.bounds().max_arity},
                 {"max_depth", cs.bounds().max_depth},
                 {"cap", cs.bounds().cap},
                 {"entry_budget", cs.bounds().entry_budget}};
  j["saturated"] = cs.saturated();
  Json per = Json::array();
  for (std::uint32_t k = 0; k <= cs.max_arity(); ++k) {
    const auto& info = cs.arity_info(k);
    per.push_back({{"arity", k},
                   {"classes", info.end - info.begin},
                   {"saturated", info.saturated},
                   {"completed_depth", info.completed_depth},
                   {"cap_hit", info.cap_hit},
                   {"budget_hit", info.budget_hit},
                   {"closure_added", info.closure_added}});
  }
  j["saturation"] = per;
  j["incomplete"] = cs.incomplete();
  j["warnings"] = cs.warnings();
  return j;
}

std::string bounds_text(const ClassSet& cs) {
  std::ostringstream out;
  out << "bounds: K=" << cs.bounds().max_arity << " D=" << cs.bounds().max_depth
      << " cap=" << cs.bounds().cap << "  saturated: " << (cs.saturated() ? "yes" : "no");
  for (std::uint32_t k = 0; k <= cs.max_arity(); ++k) {
    const auto& info = cs.arity_info(k);
    out << (k ? ", " : " (") << "arity " << k << ": " << (info.end - info.begin) << " classes"
        << (info.saturated ? "" : " unsaturated");
  }
  out << ")\n";
  if (cs.incomplete()) out << "incomplete: cap or budget hit before depth 1\n";
  for (const auto& w : cs.warnings()) out << "warning: " << w << "\n";
  return out.str();
}

Json query_json(const AlgebraPair& pair, Elem a, Elem b, Elem c, std::optional<Elem> d) {
  Json q;
  q["a"] = show(pair.source(), a);
  q["b"] = show(pair.source(), b);
  q["c"] = show(pair.target(), c);
  q["d"] = d ? Json(show(pair.target(), *d)) : Json(nullptr);
  q["source"] = pair.source().name();
  q["target"] = pair.target().name();
  return q;
}

// One Jus member with its first witnesses and tags.
struct MemberView {
  std::string s, t, e1, e2, characteristic;
  std::uint32_t arity = 0;
  bool trivial = false;
  bool trivial_partial = false;
};

std::vector<MemberView> member_views(const Solver& solver, const TrivialityChecker& triv, Elem a,
                                     Elem b, Elem c, Elem d, std::size_t limit) {
  const ClassSet& cs = solver.classes();
  const auto& pair = cs.pair();
  std::vector<MemberView> out;
  for (const auto& m : jus(cs, a, b, c, d, 1, limit).members) {
    MemberView v;
    v.arity = m.arity;
    v.s = cs.at(m.s).print;
    v.t = cs.at(m.t).print;
    v.e1 = format_point(pair.source(), m.witnesses_source.front(), m.arity);
    v.e2 = format_point(pair.target(), m.witnesses_target.front(), m.arity);
    auto tr = triv.check(rule_of(cs, m.s, m.t));
    v.trivial = tr.trivial;
    v.trivial_partial = tr.partial;
    v.characteristic = to_string(solver.characteristic(m.s, m.t, a, b, c, d));
    out.push_back(std::move(v));
  }
  return out;
}

Json member_json(const MemberView& v) {
  return {{"s", v.s},
          {"t", v.t},
          {"arity", v.arity},
          {"e1", v.e1},
          {"e2", v.e2},
          {"tags", {{"trivial", v.trivial},
                    {"trivial_partial", v.trivial_partial},
                    {"characteristic", v.characteristic}}}};
}

std::string member_text(const MemberView& v) {
  std::string out = v.s + " -> " + v.t + "  [" + v.e1 + " -> " + v.e2 + "]";
  out += "  characteristic=" + v.characteristic;
  if (v.trivial) out += v.trivial_partial ? "  trivial(partial)" : "  trivial";
  return out;
}

Json dominance_json(const ClassSet& cs, const Dominance& dom) {
  const auto& tgt = cs.pair().target();
  return {{"rejected", show(tgt, dom.rejected)},
          {"dominator", show(tgt, dom.dominator)},
          {"s", cs.at(dom.s).print},
          {"t", cs.at(dom.t).print}};
}

std::string dominance_text(const ClassSet& cs, const Dominance& dom) {
  const auto& tgt = cs.pair().target();
  return show(tgt, dom.rejected) + " dominated by " + show(tgt, dom.dominator) + " via " +
         cs.at(dom.s).print + " -> " + cs.at(dom.t).print;
}

struct Resolved {
  AlgebraPair pair;
  Elem a, b, c;
  std::optional<Elem> d;
};

Resolved resolve_query(const Session& session, const std::string& text, bool want_d) {
  auto q = parse_query(text);
  if (want_d && q.is_solve()) throw UsageError("this command needs a concrete d, not z");
  auto pair = session.pair(q.source_name, q.target_name);
  Resolved r{pair, parse_elem(pair.source(), q.a), parse_elem(pair.source(), q.b),
             parse_elem(pair.target(), q.c), std::nullopt};
  if (q.d) r.d = parse_elem(pair.target(), *q.d);
  return r;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int exit_for(const ClassSet& cs) { return cs.incomplete() ? 2 : 0; }

std::string elem_list(const PartialAlgebra& alg, const std::vector<Elem>& elems) {
  std::string out = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) out += (i ? ", " : "") + show(alg, elems[i]);
  return out + "}";
}

Json oracle_json(const AlgebraPair& pair, const Bounds& bounds, Elem a, Elem b, Elem c,
                 const std::vector<Elem>& ours, std::string& text) {
  NaiveOracle oracle(pair, bounds.max_arity, bounds.max_depth);
  auto res = oracle.solve(a, b, c);
  const bool agrees = res.solutions == ours;
  Json j;
  j["terms"] = oracle.term_count();
  Json sols = Json::array();
  for (auto d : res.solutions) sols.push_back(show(pair.target(), d));
  j["solutions"] = sols;
  j["degenerate"] = res.degenerate;
  j["agrees"] = agrees;
  text = "oracle: " + elem_list(pair.target(), res.solutions) + (agrees ? "  agrees" : "  DIFFERS") +
         " (" + std::to_string(oracle.term_count()) + " terms)\n";
  return j;
}

int cmd_solve(const Session& session, const Options& opt, std::ostream& out) {
  auto r = resolve_query(session, opt.query, false);
  auto cs = enumerate(r.pair, session.bounds());
  Solver solver(cs, {opt.exclude_trivial});
  TrivialityChecker triv(cs.pair());
  auto rep = solver.solve(r.a, r.b, r.c);

  Json j;
  j["command"] = "solve";
  j["query"] = query_json(r.pair, r.a, r.b, r.c, std::nullopt);
  j.update(bounds_json(cs));
  j["exclude_trivial"] = opt.exclude_trivial;
  j["degenerate"] = rep.degenerate;
  std::ostringstream text;
  text << "solve " << show(r.pair.source(), r.a) << ":" << show(r.pair.source(), r.b)
       << "::" << show(r.pair.target(), r.c) << ":z  over " << r.pair.source().name() << ","
       << r.pair.target().name() << "\n"
       << bounds_text(cs);
  text << "solutions: " << elem_list(r.pair.target(), rep.solutions)
       << (rep.degenerate ? "  (degenerate: every Jus set is empty)" : "") << "\n";

  Json sols = Json::array();
  for (auto d : rep.solutions) {
    Json s;
    s["d"] = show(r.pair.target(), d);
    s["jus_count"] = rep.jus_count[d];
    Json members = Json::array();
    if (!rep.degenerate)
      text << "  " << show(r.pair.target(), d) << "  |Jus|=" << rep.jus_count[d] << "\n";
    auto views = member_views(solver, triv, r.a, r.b, r.c, d, opt.members);
    for (const auto& v : views) {
      members.push_back(member_json(v));
      text << "    " << member_text(v) << "\n";
    }
    s["jus"] = members;
    s["jus_truncated"] = rep.jus_count[d] > views.size();
    sols.push_back(s);
  }
  j["solutions"] = sols;
  Json dom = Json::array();
  if (!rep.dominance.empty()) text << "dominated:\n";
  for (std::size_t i = 0; i < rep.dominance.size(); ++i) {
    dom.push_back(dominance_json(cs, rep.dominance[i]));
    if (i < opt.listed) text << "  " << dominance_text(cs, rep.dominance[i]) << "\n";
  }
  if (rep.dominance.size() > opt.listed)
    text << "  ... " << rep.dominance.size() - opt.listed << " more\n";
  j["dominance"] = dom;
  if (opt.oracle) {
    std::string otext;
    j["oracle"] = oracle_json(r.pair, cs.bounds(), r.a, r.b, r.c, rep.solutions, otext);
    text << otext;
  }
  if (opt.json)
    emit(out, j);
  else
    out << text.str();
  return exit_for(cs);
}

int cmd_holds(const Session& session, const Options& opt, std::ostream& out) {
  auto r = resolve_query(session, opt.query, true);
  auto cs = enumerate(r.pair, session.bounds());
  Solver solver(cs, {opt.exclude_trivial});
  auto v = solver.holds(r.a, r.b, r.c, *r.d);

  Json j;
  j["command"] = "holds";
  j["query"] = query_json(r.pair, r.a, r.b, r.c, r.d);
  j.update(bounds_json(cs));
  j["exclude_trivial"] = opt.exclude_trivial;
  j["verdict"] = v.holds ? "holds" : "fails";
  j["degenerate"] = v.degenerate;
  std::ostringstream text;
  text << (v.holds ? "holds" : "fails") << (v.degenerate ? " (degenerate)" : "") << "\n"
       << bounds_text(cs);
  if (v.evidence) {
    Json ev = dominance_json(cs, *v.evidence);
    auto rule = rule_of(cs, v.evidence->s, v.evidence->t);
    auto w = witnesses(r.pair, rule, r.a, r.b, r.c, v.evidence->dominator, 1);
    const auto arity = rule.arity;
    if (!w.source.empty() && !w.target.empty()) {
      ev["e1"] = format_point(r.pair.source(), w.source.front(), arity);
      ev["e2"] = format_point(r.pair.target(), w.target.front(), arity);
    }
    j["dominance"] = Json::array({ev});
    text << "dominated by " << show(r.pair.target(), v.evidence->dominator) << " via "
         << cs.at(v.evidence->s).print << " -> " << cs.at(v.evidence->t).print << "\n";
  } else {
    j["dominance"] = Json::array();
  }
  if (opt.oracle) {
    auto rep = solver.solve(r.a, r.b, r.c);
    std::string otext;
    Json oj = oracle_json(r.pair, cs.bounds(), r.a, r.b, r.c, rep.solutions, otext);
    const bool oracle_holds = std::find(oj["solutions"].begin(), oj["solutions"].end(),
                                        Json(show(r.pair.target(), *r.d))) != oj["solutions"].end();
    oj["verdict"] = oracle_holds ? "holds" : "fails";
    j["oracle"] = oj;
    text << otext;
  }
  if (opt.json)
    emit(out, j);
  else
    out << text.str();
  return exit_for(cs);
}

int cmd_justify(const Session& session, const Options& opt, std::ostream& out) {
  auto r = resolve_query(session, opt.query, true);
  auto cs = enumerate(r.pair, session.bounds());
  Solver solver(cs, {opt.exclude_trivial});
  TrivialityChecker triv(cs.pair());
  auto views = member_views(solver, triv, r.a, r.b, r.c, *r.d, opt.members);
  auto rep = solver.solve(r.a, r.b, r.c);
  const auto total = rep.jus_count[*r.d];

  Json j;
  j["command"] = "justify";
  j["query"] = query_json(r.pair, r.a, r.b, r.c, r.d);
  j.update(bounds_json(cs));
  j["jus_count"] = total;
  Json members = Json::array();
  std::ostringstream text;
  text << "Jus has " << total << " members" << (views.size() < total ? ", showing " + std::to_string(views.size()) : "")
       << "\n"
       << bounds_text(cs);
  for (const auto& v : views) {
    members.push_back(member_json(v));
    text << member_text(v) << "\n";
  }
  j["jus"] = members;
  j["jus_truncated"] = total > views.size();
  if (opt.json)
    emit(out, j);
  else
    out << text.str();
  return exit_for(cs);
}

Json tuple_json(const PartialAlgebra& alg, const Tuple& t) {
  Json j = Json::array();
  for (auto e : t) j.push_back(show(alg, e));
  return j;
}

std::string tuple_text(const PartialAlgebra& alg, const Tuple& t) {
  return show(alg, t[0]) + ":" + show(alg, t[1]) + "::" + show(alg, t[2]) + ":" + show(alg, t[3]);
}

int cmd_axioms(const Session& session, const Options& opt, std::ostream& out) {
  auto pair = session.pair();
  if (!pair.same_domain()) throw NotSingleDomain();
  auto cs = enumerate(pair, session.bounds());
  Solver solver(cs, {opt.exclude_trivial});
  const auto& alg = pair.source();

  std::vector<AxiomReport> reports;
  std::optional<bool> consistent;
  if (opt.axiom.empty()) {
    auto audit = check_all(solver, opt.counterexamples);
    reports = std::move(audit.reports);
    consistent = audit.consistent;
  } else {
    auto ax = parse_axiom(opt.axiom);
    if (!ax) throw UsageError("unknown axiom '" + opt.axiom + "'");
    reports.push_back(check_axiom(solver, *ax, opt.counterexamples));
  }

  Json j;
  j["command"] = "axioms";
  j["algebra"] = alg.name();
  j.update(bounds_json(cs));
  Json list = Json::array();
  std::ostringstream text;
  text << "axioms over " << alg.name() << "\n" << bounds_text(cs);
  for (const auto& rep : reports) {
    Json r;
    r["axiom"] = to_string(rep.axiom);
    r["verdict"] = rep.holds ? "holds" : "fails";
    r["violations"] = rep.violations;
    r["tuples_checked"] = rep.tuples_checked;
    text << to_string(rep.axiom) << ": " << (rep.holds ? "holds" : "fails");
    if (!rep.holds) text << " (" << rep.violations << " violations)";
    text << "\n";
    Json ces = Json::array();
    for (const auto& ce : rep.counterexamples) {
      Json c;
      c["tuple"] = tuple_json(alg, ce.tuple);
      c["tuple_holds"] = ce.tuple_holds;
      text << "  " << tuple_text(alg, ce.tuple) << " " << (ce.tuple_holds ? "holds" : "fails");
      if (ce.other) {
        c["other"] = tuple_json(alg, *ce.other);
        c["other_holds"] = ce.other_holds;
        text << ", " << tuple_text(alg, *ce.other) << " " << (ce.other_holds ? "holds" : "fails");
      }
      if (ce.evidence) {
        c["evidence"] = dominance_json(cs, *ce.evidence);
        text << "  [" << dominance_text(cs, *ce.evidence) << "]";
      }
      text << "\n";
      ces.push_back(c);
    }
    r["counterexamples"] = ces;
    list.push_back(r);
  }
  j["axioms"] = list;
  if (consistent) {
    j["consistent"] = *consistent;
    if (!*consistent) text << "inconsistent: central_permutation and strong_reflexivity without strong_determinism\n";
  }
  if (opt.json)
    emit(out, j);
  else
    out << text.str();
  return exit_for(cs);
}

Model require_model(const Options& opt) {
  auto m = parse_model(opt.model);
  if (!m) throw UsageError("--model must be one of sy_sets, mbd_sets, sy_numbers");
  return *m;
}

SetMask parse_set(const std::vector<std::string>& universe, std::string text) {
  if (text == "\xE2\x88\x85" || text == "{}" || text.empty()) return 0;
  if (text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
  SetMask m = 0;
  for (const auto& item : split_commas(text)) {
    if (item.empty()) continue;
    auto it = std::find(universe.begin(), universe.end(), item);
    if (it == universe.end()) throw NotSubsetOfUniverse("'" + item + "' is not in the universe");
    m |= SetMask{1} << (it - universe.begin());
  }
  return m;
}

std::string set_text(const std::vector<std::string>& universe, SetMask m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (!(m >> i & 1)) continue;
    out += (first ? "" : ",") + universe[i];
    first = false;
  }
  return out + "}";
}

// Splits "A:B::C:D" where the elements may be brace sets containing commas.
std::array<std::string, 4> split_tuple(const std::string& text) {
  auto mid = text.find("::");
  if (mid == std::string::npos) throw SyntaxError(0, "expected a:b::c:d");
  auto left = text.substr(0, mid);
  auto right = text.substr(mid + 2);
  auto lc = left.rfind(':');
  auto rc = right.rfind(':');
  if (lc == std::string::npos || rc == std::string::npos) throw SyntaxError(0, "expected a:b::c:d");
  return {left.substr(0, lc), left.substr(lc + 1), right.substr(0, rc), right.substr(rc + 1)};
}

int cmd_baseline(const Options& opt, std::ostream& out) {
  const Model model = require_model(opt);
  auto parts = split_tuple(opt.query);
  Json j;
  j["command"] = "baseline";
  j["model"] = to_string(model);
  j["query"] = parts;
  std::ostringstream text;
  BaselineVerdict v;
  if (model == Model::sy_numbers) {
    std::array<std::int64_t, 4> x{};
    for (int i = 0; i < 4; ++i) {
      try {
        std::size_t used = 0;
        x[i] = std::stoll(parts[i], &used);
        if (used != parts[i].size()) throw std::invalid_argument("");
      } catch (const std::logic_error&) {
        throw SyntaxError(0, "'" + parts[i] + "' is not an integer");
      }
    }
    v = sy_numbers(x[0], x[1], x[2], x[3], opt.bound);
    j["bound"] = opt.bound;
    j["verdict"] = v.holds ? "holds" : "fails";
    text << to_string(model) << ": " << (v.holds ? "holds" : "fails") << "\n";
    if (v.holds) {
      j["witness"] = {{"a1", v.numbers[0]}, {"a2", v.numbers[1]}, {"d1", v.numbers[2]}, {"d2", v.numbers[3]}};
      text << "  a1=" << v.numbers[0] << " a2=" << v.numbers[1] << " d1=" << v.numbers[2]
           << " d2=" << v.numbers[3] << "\n";
    }
  } else {
    if (opt.universe.empty()) throw UsageError("set models need --universe");
    auto universe = split_commas(opt.universe);
    if (universe.size() > 64) throw BadParams("universe larger than 64 elements");
    const SetMask all = universe.size() == 64 ? ~SetMask{0} : (SetMask{1} << universe.size()) - 1;
    std::array<SetMask, 4> s{};
    for (int i = 0; i < 4; ++i) s[i] = parse_set(universe, parts[i]);
    v = model == Model::sy_sets ? sy_sets(s[0], s[1], s[2], s[3], all)
                                : mbd_sets(s[0], s[1], s[2], s[3], all);
    j["universe"] = universe;
    j["verdict"] = v.holds ? "holds" : "fails";
    text << to_string(model) << ": " << (v.holds ? "holds" : "fails") << "\n";
    if (v.holds) {
      static const char* sy_names[] = {"A1", "A2", "D1", "D2"};
      static const char* mbd_names[] = {"E", "F"};
      Json w;
      for (std::size_t i = 0; i < v.sets.size(); ++i) {
        const char* name = model == Model::sy_sets ? sy_names[i] : mbd_names[i];
        w[name] = set_text(universe, v.sets[i]);
        text << "  " << name << "=" << set_text(universe, v.sets[i]) << "\n";
      }
      j["witness"] = w;
    }
  }
  if (opt.json)
    emit(out, j);
  else
    out << text.str();
  return 0;
}

AlgebraPtr compare_algebra(const Session& session, const Options& opt, Model model) {
  if (!opt.universe.empty() && !opt.range.empty()) throw UsageError("give --universe or --range, not both");
  if (!opt.universe.empty()) {
    if (model == Model::sy_numbers) throw UsageError("sy_numbers compares over --range");
    return std::make_shared<const PartialAlgebra>(
        builtin("powerset", {{"universe", opt.universe}, {"consts", "all"}}, "powerset"));
  }
  if (!opt.range.empty()) {
    if (model != Model::sy_numbers) throw UsageError("set models compare over --universe");
    std::string r = opt.range;
    if (r.find("..") == std::string::npos) {
      auto comma = r.find(',', 1);
      if (comma == std::string::npos) throw UsageError("--range expects lo..hi or lo,hi");
      r = r.substr(0, comma) + ".." + r.substr(comma + 1);
    }
    return std::make_shared<const PartialAlgebra>(
        builtin("int_interval", {{"interval", r}, {"ops", "+"}, {"consts", "all"}}, "int_interval"));
  }
  auto pair = session.pair();
  if (!pair.same_domain()) throw NotSingleDomain();
  return pair.source_ptr();
}

int cmd_compare(const Session& session, const Options& opt, std::ostream& out) {
  const Model model = require_model(opt);
  AlgebraPair pair(compare_algebra(session, opt, model));
  auto cs = enumerate(pair, session.bounds());
  Solver solver(cs, {opt.exclude_trivial});
  auto rep = compare(model, solver);
  const auto& alg = pair.source();

  Json j;
  j["command"] = "compare";
  j["model"] = to_string(model);
  j["algebra"] = alg.name();
  j["carrier"] = alg.size();
  j.update(bounds_json(cs));
  j["tuples"] = rep.tuples;
  j["both"] = rep.both;
  j["neither"] = rep.neither;
  j["implication_violations"] = rep.baseline_only.size();
  j["strictness"] = rep.solver_only.size();
  auto listing = [&](const std::vector<std::array<Elem, 4>>& v) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size() && i < opt.listed; ++i) a.push_back(tuple_json(alg, v[i]));
    return a;
  };
  j["baseline_only"] = listing(rep.baseline_only);
  j["solver_only"] = listing(rep.solver_only);

  std::ostringstream text;
  text << "compare " << to_string(model) << " over " << alg.name() << " (" << rep.tuples
       << " tuples)\n"
       << bounds_text(cs);
  text << "baseline implies solver: " << (rep.baseline_only.empty() ? "yes" : "no") << " ("
       << rep.baseline_only.size() << " violations)\n";
  for (std::size_t i = 0; i < rep.baseline_only.size() && i < opt.listed; ++i)
    text << "  baseline only: " << tuple_text(alg, rep.baseline_only[i]) << "\n";
  text << "solver only (strictness): " << rep.solver_only.size() << "\n";
  for (std::size_t i = 0; i < rep.solver_only.size() && i < opt.listed; ++i)
    text << "  " << tuple_text(alg, rep.solver_only[i]) << "\n";
  text << "both: " << rep.both << "  neither: " << rep.neither << "\n";
  if (opt.json)
    emit(out, j);
  else
    out << text.str();
  return exit_for(cs);
}

int cmd_dump(const Session& session, const Options& opt, std::ostream& out) {
  auto pair = session.pair();
  auto cs = enumerate(pair, session.bounds());
  auto row = [](const PartialAlgebra& alg, std::span<const Elem> table) {
    std::vector<std::string> v;
    for (auto e : table) v.push_back(show(alg, e));
    return v;
  };
  if (opt.json) {
    Json j;
    j["command"] = "dump-classes";
    j["source"] = pair.source().name();
    j["target"] = pair.target().name();
    j.update(bounds_json(cs));
    Json list = Json::array();
    for (const auto& c : cs.classes()) {
      Json e = {{"id", c.id}, {"arity", c.arity}, {"depth", c.depth}, {"representative", c.print},
                {"source", row(pair.source(), cs.source_table(c.id))}};
      if (!pair.same_domain()) e["target"] = row(pair.target(), cs.target_table(c.id));
      list.push_back(e);
    }
    j["classes"] = list;
    emit(out, j);
    return exit_for(cs);
  }
  out << bounds_text(cs);
  for (const auto& c : cs.classes()) {
    out << c.arity << "  " << c.print << "  |";
    for (const auto& s : row(pair.source(), cs.source_table(c.id))) out << " " << s;
    if (!pair.same_domain()) {
      out << "  |";
      for (const auto& s : row(pair.target(), cs.target_table(c.id))) out << " " << s;
    }
    out << "\n";
  }
  return exit_for(cs);
}

int cmd_list(const Session& session, const Options& opt, std::ostream& out) {
  Json j;
  j["command"] = "list-builtins";
  Json kinds = Json::array();
  for (const auto& b : builtin_catalog())
    kinds.push_back({{"kind", b.kind}, {"keys", b.keys}, {"summary", b.summary}});
  j["builtins"] = kinds;
  Json loaded = Json::array();
  for (const auto& name : session.registry().order) {
    auto alg = session.registry().get(name);
    loaded.push_back({{"name", name}, {"carrier", alg->size()}, {"language", alg->language().describe()}});
  }
  j["loaded"] = loaded;
  if (opt.json) {
    emit(out, j);
    return 0;
  }
  out << "builtin kinds:\n";
  for (const auto& b : builtin_catalog()) out << "  " << b.kind << "  [" << b.keys << "]  " << b.summary << "\n";
  if (!session.registry().order.empty()) out << "loaded algebras:\n";
  for (const auto& name : session.registry().order) {
    auto alg = session.registry().get(name);
    out << "  " << name << "  |A|=" << alg->size() << "  " << alg->language().describe() << "\n";
  }
  return 0;
}

void error_record(std::ostream& err, const std::string& kind, const std::string& message) {
  Json j = {{"error", kind}, {"message", message}};
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Analogical proportions over finite algebras", "proportia"};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();

  app.add_option("--spec", opt.spec, "Algebra spec file (default $PROPORTIA_SPEC_PATH)");
  app.add_option("--pair", opt.pair, "Source and target algebra: NAME or NAME,NAME");
  app.add_option("--algebra", opt.algebra, "Single algebra, same as --pair NAME");
  app.add_option("--max-arity", opt.max_arity, "Largest term arity K");
  app.add_option("--max-depth", opt.max_depth, "Largest term depth D");
  app.add_option("--cap", opt.cap, "Class cap per arity")->check(CLI::PositiveNumber);
  app.add_option("--entry-budget", opt.entry_budget, "Table entries computed per arity");
  app.add_flag("--json", opt.json, "Print JSON");
  app.add_flag("--oracle", opt.oracle, "Cross-check solve/holds with naive term enumeration");
  app.add_flag("--exclude-trivial", opt.exclude_trivial, "Leave out trivial justifications");

  auto* solve = app.add_subcommand("solve", "Solve a:b::c:z");
  solve->add_option("query", opt.query, "a:b::c:z[@source,target]")->required();
  solve->add_option("--members", opt.members, "Jus members listed per solution");
  solve->add_option("--list", opt.listed, "Dominated elements listed in text output");
  auto* holds = app.add_subcommand("holds", "Decide a:b::c:d");
  holds->add_option("query", opt.query, "a:b::c:d[@source,target]")->required();
  auto* justify = app.add_subcommand("justify", "List Jus(a:b::c:d)");
  justify->add_option("query", opt.query, "a:b::c:d[@source,target]")->required();
  justify->add_option("--members", opt.members, "Members listed (0 for all)");
  auto* axioms = app.add_subcommand("axioms", "Audit the proportion axioms");
  axioms->add_option("--axiom", opt.axiom, "Only this axiom");
  axioms->add_option("--counterexamples", opt.counterexamples, "Counterexamples kept per axiom");
  auto* baseline = app.add_subcommand("baseline", "Evaluate a baseline model");
  baseline->add_option("query", opt.query, "a:b::c:d with sets like {a,b} or integers")->required();
  baseline->add_option("--model", opt.model, "sy_sets, mbd_sets or sy_numbers")->required();
  baseline->add_option("--universe", opt.universe, "Set universe, e.g. a,b");
  baseline->add_option("--bound", opt.bound, "Integer bound for sy_numbers");
  auto* cmp = app.add_subcommand("compare", "Compare a baseline model with the solver");
  cmp->add_option("--model", opt.model, "sy_sets, mbd_sets or sy_numbers")->required();
  cmp->add_option("--universe", opt.universe, "Powerset universe with every set distinguished");
  cmp->add_option("--range", opt.range, "Integer interval lo..hi with + and every constant");
  cmp->add_option("--list", opt.listed, "Tuples listed per difference");
  auto* dump = app.add_subcommand("dump-classes", "Print every enumerated term class");
  auto* list = app.add_subcommand("list-builtins", "List builtin kinds and loaded algebras");
  for (auto* sub : {solve, holds, justify, axioms, baseline, cmp, dump, list}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_record(err, "UsageError", e.what());
    return 1;
  }

  try {
    if (baseline->parsed()) return cmd_baseline(opt, out);
    Session session(opt);
    if (solve->parsed()) return cmd_solve(session, opt, out);
    if (holds->parsed()) return cmd_holds(session, opt, out);
    if (justify->parsed()) return cmd_justify(session, opt, out);
    if (axioms->parsed()) return cmd_axioms(session, opt, out);
    if (cmp->parsed()) return cmd_compare(session, opt, out);
    if (dump->parsed()) return cmd_dump(session, opt, out);
    return cmd_list(session, opt, out);
  } catch (const Error& e) {
    error_record(err, e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_record(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace proportia
