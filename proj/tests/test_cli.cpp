#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string c(const char* name) { return corpus(name).string(); }

std::filesystem::path scratch() {
  auto d = std::filesystem::temp_directory_path() / "sdcat_cli";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("check exit codes follow the verdict") {
  CHECK(run({"check", "epic", "--category", "K3", c("xor3.bmap")}).code == 0);
  CHECK(run({"check", "epic", "--category", "K3", c("golden_incl.bmap")}).code == 1);
  CHECK(run({"check", "split-epic", "--category", "K3", c("strong_f.bmap")}).code == 2);
  CHECK(run({"check", "exists-morphism", "--category", "K2", c("golden.shift"), c("full2.shift")}).code == 0);
}

TEST_CASE("split-epic report carries the failing tuple") {
  auto r = run({"check", "split-epic", "--category", "K2", c("compress.bmap"), "--json"});
  REQUIRE(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["exit_code"] == 1);
  CHECK(j["verdict"]["answer"] == "NO");
  const auto& wt = j["verdict"]["witness"];
  REQUIRE(wt.contains("candidates"));
  for (const auto& cand : wt["candidates"])
    for (const char* key : {"u", "v", "w"}) CHECK(cand.contains(key));
  CHECK(j.contains("elapsed_ms"));
}

TEST_CASE("build product then analyze") {
  auto out = scratch() / "aa.shift";
  auto b = run({"build", "product", c("golden.shift"), c("golden.shift"), "--category", "K2", "-o", out.string()});
  REQUIRE(b.code == 0);
  auto a = run({"analyze", out.string(), "--json"});
  REQUIRE(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["alphabet"].size() == 4);
  auto leg = load_bmap(scratch() / "aa.leg1.bmap");
  CHECK(same_language(*leg.target(), *shift("golden.shift")));
  CHECK(same_language(*load_shift(out), *product(shift("golden.shift"), shift("golden.shift"), cat("K2")).object));
}

TEST_CASE("certificates are written on request") {
  auto cert = scratch() / "section.bmap";
  auto r = run({"check", "split-epic", "--category", "K1", c("shrink.bmap"), "--cert", cert.string()});
  REQUIRE(r.code == 0);
  auto g = load_bmap(cert);
  auto f = bmap("shrink.bmap");
  CHECK(maps_equal(compose(f.with_source(g.target()).with_target(g.target()), g), BlockMap::identity(g.source())));
}

TEST_CASE("error exit codes") {
  CHECK(run({"check", "epic", c("xor3.bmap")}).code == 64);
  CHECK(run({"check", "epic", "--category", "Q9", c("xor3.bmap")}).code == 64);
  CHECK(run({"check", "epic", "--category", "K2", "/nonexistent.bmap"}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"check", "epic", "--category", "M2", c("shrink.bmap")}).code == 65);
  auto bad = scratch() / "bad.shift";
  std::ofstream(bad) << "alphabet: 0 1\nforbidden: 0 2\n";
  CHECK(run({"analyze", bad.string()}).code == 64);
}

TEST_CASE("budget exhaustion exits 69") {
  setenv("SDCAT_BUDGET", "1", 1);
  auto r = run({"oracle", "decide", "split-epic", c("xor2.bmap")});
  auto e = run({"check", "split-epic", "--category", "K2", c("compress.bmap")});
  unsetenv("SDCAT_BUDGET");
  CHECK(r.code == 69);
  // Engine searches that run out report an undecided or exact verdict instead.
  CHECK(e.code != 69);
}

TEST_CASE("limits report not-exists with exit 1") {
  CHECK(run({"build", "coproduct", c("golden.shift"), c("golden.shift"), "--category", "M2"}).code == 1);
  CHECK(run({"build", "image", c("parity.bmap"), "--category", "K2"}).code == 1);
  CHECK(run({"build", "terminal", "--category", "K3"}).code == 0);
}

TEST_CASE("coeq-id, dynamics and oracle commands") {
  auto q = scratch() / "q.bmap";
  auto r = run({"coeq-id", c("flip.bmap"), "--category", "K3", "-o", q.string(), "--json"});
  REQUIRE(r.code == 0);
  CHECK(same_language(*kernel_set(load_bmap(q)).relation, *kernel_set(bmap("xor2.bmap")).relation));
  auto d = run({"dynamics", c("and.bmap"), "--json"});
  REQUIRE(d.code == 0);
  auto j = nlohmann::json::parse(d.out);
  CHECK(j["spreading_state"] == "0");
  CHECK(run({"oracle", "decide", "epic", c("xor3.bmap")}).code == 0);
  CHECK(run({"oracle", "decide", "injective", c("xor3.bmap")}).code == 1);
  auto cen = run({"oracle", "census", "--radius", "0", "--check", "epic,monic"});
  CHECK(cen.code == 0);
  CHECK(cen.out.rfind("rule,epic_engine", 0) == 0);
}
