#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "proportia/cli.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

const std::string kSpec = PROPORTIA_DATA_DIR "/structures.alg";

Run run(std::vector<std::string> args, bool with_spec = true) {
  if (with_spec) {
    args.push_back("--spec");
    args.push_back(kSpec);
  }
  std::ostringstream out, err;
  int code = proportia::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve prints the cross-domain answer") {
  auto r = run({"solve", "2:4::ab:z", "--pair", "natMul,words", "--max-arity", "1", "--max-depth", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solutions: {abab}") != std::string::npos);
  CHECK(r.out.find("z1 -> mul(z1,z1)  [(2) -> (ab)]  characteristic=yes_by_injectivity") !=
        std::string::npos);
  CHECK(r.out.find("bounds: K=1 D=6") != std::string::npos);
}

TEST_CASE("solve JSON is stable") {
  std::vector<std::string> args{"solve", "1:0::1:z", "--algebra", "boolOr", "--max-depth", "2", "--json", "--oracle"};
  auto first = run(args);
  auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  auto j = Json::parse(first.out);
  CHECK(j["command"] == "solve");
  CHECK(j["query"]["a"] == "1");
  CHECK(j["bounds"]["max_arity"] == 2);
  CHECK(j["saturated"] == true);
  CHECK(j["saturation"].size() == 3);
  REQUIRE(j["solutions"].size() == 1);
  CHECK(j["solutions"][0]["d"] == "0");
  CHECK(j["solutions"][0]["jus"][0].contains("tags"));
  CHECK(j["dominance"][0]["rejected"] == "1");
  CHECK(j["oracle"]["agrees"] == true);
}

TEST_CASE("holds reports fails as an answer") {
  auto r = run({"holds", "1:0::1:1", "--algebra", "boolOr", "--json"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["verdict"] == "fails");
  CHECK(j["dominance"][0]["dominator"] == "0");
  CHECK(j["dominance"][0]["s"] == "one");
  CHECK(j["dominance"][0]["t"] == "zero");
  auto h = run({"holds", "1:1::0:1@boolOr,boolOr"});
  CHECK(h.code == 0);
  CHECK(h.out.rfind("holds", 0) == 0);
}

TEST_CASE("justify lists members with tags") {
  auto r = run({"justify", "1:1::0:1", "--algebra", "boolOr", "--members", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("z1 -> one  [(1) -> (0)]") != std::string::npos);
  auto j = Json::parse(run({"justify", "1:1::0:1", "--algebra", "boolOr", "--json"}).out);
  CHECK(j["jus"][0]["tags"].contains("characteristic"));
}

TEST_CASE("axioms subcommand") {
  auto r = run({"axioms", "--algebra", "boolOr", "--axiom", "central_permutation"});
  CHECK(r.code == 0);
  CHECK(r.out.find("central_permutation: fails") != std::string::npos);
  CHECK(r.out.find("1:1::0:1 holds, 1:0::1:1 fails") != std::string::npos);
  auto all = Json::parse(run({"axioms", "--algebra", "boolOr", "--json"}).out);
  CHECK(all["axioms"].size() == 6);
  CHECK(all["consistent"] == true);
}

TEST_CASE("baseline and compare") {
  auto b = run({"baseline", "{a}:{a}::{a}:{}", "--model", "sy_sets", "--universe", "a"}, false);
  CHECK(b.code == 0);
  CHECK(b.out.rfind("sy_sets: holds", 0) == 0);
  auto n = run({"baseline", "0:0::1:2", "--model", "sy_numbers"}, false);
  CHECK(n.out.rfind("sy_numbers: fails", 0) == 0);
  auto c = run({"compare", "--model", "mbd", "--universe", "a,b", "--json"}, false);
  CHECK(c.code == 0);
  auto j = Json::parse(c.out);
  CHECK(j["implication_violations"] == 0);
  CHECK(j["tuples"] == 256);
  auto num = Json::parse(run({"compare", "--model", "sy_numbers", "--range=-3..3", "--json", "--max-arity", "1"}, false).out);
  CHECK(num["implication_violations"] == 0);
}

TEST_CASE("dump-classes and list-builtins") {
  auto d = run({"dump-classes", "--algebra", "boolOr"});
  CHECK(d.code == 0);
  CHECK(d.out.find("1  z1  | 0 1") != std::string::npos);
  auto l = run({"list-builtins"});
  CHECK(l.out.find("powerset") != std::string::npos);
  CHECK(l.out.find("succStruct") != std::string::npos);
}

TEST_CASE("exit codes and error records") {
  auto usage = run({"frobnicate"});
  CHECK(usage.code == 1);
  CHECK(Json::parse(usage.err)["error"] == "UsageError");

  auto missing = run({"solve", "1:0::1:z", "--algebra", "nope"});
  CHECK(missing.code == 1);
  CHECK(Json::parse(missing.err)["error"] == "MissingAlgebra");

  auto several = run({"solve", "1:0::1:z"});
  CHECK(several.code == 1);
  CHECK(Json::parse(several.err)["error"] == "MissingAlgebra");

  auto bad_elem = run({"solve", "7:0::1:z", "--algebra", "boolOr"});
  CHECK(bad_elem.code == 1);
  CHECK(Json::parse(bad_elem.err)["error"] == "ElementNotInCarrier");

  auto need_d = run({"holds", "1:0::1:z", "--algebra", "boolOr"});
  CHECK(need_d.code == 1);

  auto capped = run({"solve", "2:4::3:z", "--algebra", "natAdd", "--cap", "1"});
  CHECK(capped.code == 2);

  const std::string bad = "/tmp/proportia_bad_spec.alg";
  std::ofstream(bad) << "[algebra x]\nkind = bool_or\nbogus = 1\n";
  auto spec = run({"list-builtins", "--spec", bad}, false);
  CHECK(spec.code == 1);
  auto rec = Json::parse(spec.err);
  CHECK(rec["error"] == "SpecError");
  CHECK(rec["message"].get<std::string>().find("3") != std::string::npos);
}

TEST_CASE("spec path from the environment") {
  const std::string path = "/tmp/proportia_env_spec.alg";
  std::ofstream(path) << "[algebra only]\nkind = bool_and\n";
  setenv("PROPORTIA_SPEC_PATH", path.c_str(), 1);
  auto r = run({"solve", "1:1::0:z", "--json"}, false);
  unsetenv("PROPORTIA_SPEC_PATH");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["query"]["source"] == "only");
}
