// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;
using oracle::Property;

namespace {

struct Criterion {
  int id;
  const char* title;
  double limit_s;  // 0 means no time limit
  std::function<std::string()> body;  // empty string on success, else the failure
};

struct CliRun {
  int code;
  nlohmann::json out;
};

CliRun cli(std::vector<std::string> args) {
  args.push_back("--json");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(out.str());
  } catch (const std::exception&) {
  }
  return {code, j};
}

std::string c(const char* name) { return corpus(name).string(); }

#define EXPECT(cond)                    \
  do {                                  \
    if (!(cond)) return "failed: " #cond; \
  } while (0)

std::string xor3_kernel() {
  auto f = bmap("xor3.bmap");
  auto ker = kernel_set(f);
  auto cs = constituents(*ker.relation);
  EXPECT(cs.size() == 2);
  auto delta = diagonal(f.source());
  int diag = -1;
  for (int i = 0; i < 2; ++i)
    if (same_language(*cs[i], *delta.relation)) diag = i;
  EXPECT(diag >= 0);
  const auto& other = *cs[1 - diag];
  EXPECT(!is_mixing(other));
  auto per = periods(other);
  EXPECT(per.contains(3) && per.contains(6) && !per.contains(1) && !per.contains(2) && !per.contains(4));
  EXPECT(cli({"check", "monic", "--category", "M2", c("xor3.bmap")}).code == 0);
  EXPECT(cli({"check", "injective", "--category", "M2", c("xor3.bmap")}).code == 1);
  return {};
}

std::string xor2_kernel() {
  auto f = bmap("xor2_n3.bmap");
  auto cs = constituents(*kernel_set(f).relation);
  EXPECT(cs.size() == 2);
  for (const auto& s : cs) EXPECT(is_mixing(*s));
  EXPECT(cli({"check", "monic", "--category", "M2", c("xor2_n3.bmap")}).code == 1);
  return {};
}

std::string equalizer_example() {
  auto f = bmap("eqf.bmap");
  auto g = bmap("zero.bmap").with_source(f.source()).with_target(f.target());
  auto e = equalizer_set(f, g);
  EXPECT(is_finite(*e));
  EXPECT(e->words(12).size() == 3);
  auto k2 = equalizer(f, g, cat("K2"));
  EXPECT(k2.exists());
  EXPECT(same_language(*k2.object, *e));
  EXPECT(k2.legs.size() == 1);
  EXPECT(maps_equal(k2.legs[0], BlockMap::inclusion(k2.object, f.source())));
  auto m2 = equalizer(f, g, cat("M2"));
  EXPECT(m2.exists());
  EXPECT(m2.object->words(8).size() == 1);
  EXPECT(m2.object->contains_periodic({0}));
  EXPECT(maps_equal(m2.legs[0], BlockMap::inclusion(m2.object, f.source())));
  return {};
}

std::string run_compression() {
  auto f = bmap("compress.bmap");
  EXPECT(cli({"check", "epic", "--category", "K2", c("compress.bmap")}).code == 0);
  EXPECT(oracle::same_period_preimages(f, 6));
  auto r = cli({"check", "split-epic", "--category", "K2", c("compress.bmap")});
  EXPECT(r.code == 1);
  const auto& wt = r.out["verdict"]["witness"];
  EXPECT(wt.contains("p") && wt.contains("candidates") && !wt["candidates"].empty());
  const auto& a = f.source()->alphabet();
  for (const auto& cand : wt["candidates"]) {
    auto word = [&](const char* k) { return a.parse_word(cand[k].get<std::string>()); };
    EXPECT(oracle::tuple_has_no_preimage(f, word("u"), word("a"), word("v"), word("b"), word("w"), 8));
  }
  return {};
}

std::string flip_coequalizer() {
  auto q = std::filesystem::temp_directory_path() / "sdcat_accept_q.bmap";
  auto r = cli({"coeq-id", c("flip.bmap"), "--category", "K3", "-o", q.string()});
  EXPECT(r.code == 0);
  auto kq = kernel_set(load_bmap(q));
  auto kx = kernel_set(bmap("xor2.bmap"));
  for (int n = 1; n <= 8; ++n) EXPECT(kq.relation->words(n) == kx.relation->words(n));
  return {};
}

std::string local_relations() {
  auto r = carry_relation();
  EXPECT(is_subshift(*diagonal(r.left).relation, *r.relation));
  EXPECT(same_language(*r.transposed().relation, *r.relation));
  EXPECT(transitive_on_periodic(r).is_yes());
  auto v = is_local_equivalence(r, 6);
  EXPECT(v.is_no());
  auto six = is_local_equivalence(six_symbol_relation(), 6);
  EXPECT(six.is_yes());
  EXPECT(six.certificate["n"] == 1);
  EXPECT(six.certificate["extra_pairs"].dump() == R"([["1","3"],["3","1"]])");
  return {};
}

std::string sofic_preinjectivity() {
  auto f = bmap("sofic_f.bmap");
  auto cs = constituents(*kernel_set(f).relation);
  EXPECT(cs.size() == 1);
  EXPECT(same_language(*cs[0], *diagonal(f.source()).relation));
  auto r = cli({"check", "preinjective", "--category", "K3", c("sofic_f.bmap")});
  EXPECT(r.code == 1);
  const auto& wt = r.out["verdict"]["witness"];
  EXPECT(wt.contains("x") && wt.contains("y") && wt["x"] != wt["y"]);
  return {};
}

std::string k1_section() {
  auto f = bmap("shrink.bmap");
  auto v = is_split_epic(f, cat("K1"));
  EXPECT(v.is_yes() && v.certificate_map);
  EXPECT(v.certificate_map->radius() <= 1);
  EXPECT(oracle::brute_composite_equals(f, *v.certificate_map, BlockMap::identity(f.target())));
  return {};
}

std::string census() {
  int bad = -1;
  oracle::census_csv(1, 2, {Property::Surjective, Property::Injective, Property::MonicK2, Property::Preinjective},
                     &bad);
  if (bad != 0) return std::to_string(bad) + " disagreements";
  return {};
}

std::string implication_lattice() {
  const char* cats[] = {"K1", "K2", "K3", "T1", "T2", "T3", "M1", "M2", "M3", "P1", "P2", "P3"};
  int rows = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SDCAT_CORPUS_DIR)) {
    if (entry.path().extension() != ".bmap") continue;
    auto f = load_bmap(entry.path());
    for (const char* cs : cats) {
      auto tag = cat(cs);
      BlockMap g = f;
      if (tag.pointed()) {
        // Point the map at a fixed point it preserves, if any.
        bool found = false;
        for (int s = 0; s < f.source()->k() && !found; ++s) {
          if (!f.source()->contains_periodic({s})) continue;
          auto img = f.apply(PeriodicPoint{{s}, 0});
          if (img.word.size() != 1) continue;
          auto xs = f.source()->with_point(s);
          auto ys = f.source() == f.target() ? xs : f.target()->with_point(img.word[0]);
          g = f.with_source(xs).with_target(ys);
          found = true;
        }
        if (!found) continue;
      }
      nlohmann::json row;
      try {
        row = classify(g, tag);
      } catch (const ValidationError&) {
        continue;
      }
      ++rows;
      auto yes = [&](const char* k) { return row[k]["answer"] == "YES"; };
      auto no = [&](const char* k) { return row[k]["answer"] == "NO"; };
      std::string where = entry.path().filename().string() + " in " + cs;
      if (yes("split_epic") && no("epic")) return where + ": split epic but not epic";
      if (yes("split_monic") && no("monic")) return where + ": split monic but not monic";
      if (yes("regular_monic") && no("monic")) return where + ": regular monic but not monic";
      if (yes("regular_epic") && no("epic")) return where + ": regular epic but not epic";
    }
  }
  EXPECT(rows >= 40);
  return {};
}

// Mediators for every cone from a handful of two-symbol test objects.
struct Diagram {
  std::string name;
  LimitResult lim;
  std::vector<ShiftPtr> bases;                                   // codomains of the cone legs
  std::function<bool(const std::vector<BlockMap>&)> commutes;    // cone condition
  std::function<BlockMap(const std::vector<BlockMap>&)> engine;  // engine mediator
};

std::string check_diagram(const Diagram& d, const std::vector<ShiftPtr>& tests, int* cones) {
  if (!d.lim.exists()) return d.name + ": limit not constructed";
  for (const auto& z : tests) {
    std::vector<std::vector<BlockMap>> per_leg;
    for (const auto& b : d.bases) {
      std::vector<BlockMap> maps;
      for (int r = 0; r <= 1; ++r)
        for (auto& m : oracle::enumerate_block_maps(z, b, r)) maps.push_back(std::move(m));
      per_leg.push_back(std::move(maps));
    }
    std::vector<std::size_t> pick(per_leg.size(), 0);
    while (true) {
      std::vector<BlockMap> cone;
      for (std::size_t i = 0; i < pick.size(); ++i) cone.push_back(per_leg[i][pick[i]].padded(1));
      if (d.commutes(cone)) {
        ++*cones;
        auto found = oracle::mediators(z, d.lim.object, d.lim.legs, cone, 1);
        if (found.size() != 1)
          return d.name + ": " + std::to_string(found.size()) + " mediators for a cone";
        if (!oracle::brute_maps_equal(found[0], d.engine(cone).padded(1)))
          return d.name + ": engine mediator differs from the enumerated one";
      }
      int i = static_cast<int>(pick.size()) - 1;
      while (i >= 0 && ++pick[i] == per_leg[i].size()) pick[i--] = 0;
      if (i < 0) break;
    }
  }
  return {};
}

std::string universal_properties() {
  auto f2 = full(2);
  auto golden = shift("golden.shift");
  auto K2 = cat("K2");
  auto x2 = bmap("xor2.bmap");
  auto flip = bmap("flip.bmap").with_source(f2).with_target(f2);
  auto xor2 = x2.with_source(f2).with_target(f2);
  auto eqf = bmap("eqf.bmap").with_source(f2).with_target(f2);
  auto zero = bmap("zero.bmap").with_source(f2).with_target(f2);
  auto sigma = bmap("sigma.bmap").with_source(f2).with_target(f2);
  auto idf = BlockMap::identity(f2);

  std::vector<Diagram> ds;
  ds.push_back({"product golden x full2", product(golden, f2, K2), {golden, f2},
                [](const std::vector<BlockMap>&) { return true; },
                [&](const std::vector<BlockMap>& h) {
                  return pairing(h[0], h[1], product(golden, f2, K2).object);
                }});
  auto pb = pullback(xor2, flip, K2);
  ds.push_back({"pullback xor2, flip", pb, {f2, f2},
                [&](const std::vector<BlockMap>& h) {
                  return oracle::brute_maps_equal(compose(xor2, h[0]), compose(flip, h[1]));
                },
                [&](const std::vector<BlockMap>& h) { return pairing(h[0], h[1], pb.object); }});
  auto kp = kernel_pair(xor2, K2);
  ds.push_back({"kernel pair xor2", kp, {f2, f2},
                [&](const std::vector<BlockMap>& h) {
                  return oracle::brute_maps_equal(compose(xor2, h[0]), compose(xor2, h[1]));
                },
                [&](const std::vector<BlockMap>& h) { return pairing(h[0], h[1], kp.object); }});
  auto eq = equalizer(eqf, zero, K2);
  ds.push_back({"equalizer eqf, zero", eq, {f2},
                [&](const std::vector<BlockMap>& h) {
                  return oracle::brute_maps_equal(compose(eqf, h[0]), compose(zero, h[0]));
                },
                [&](const std::vector<BlockMap>& h) { return corestrict(h[0], eq.object); }});
  auto eq2 = equalizer(sigma, idf, K2);
  ds.push_back({"equalizer sigma, id", eq2, {f2},
                [&](const std::vector<BlockMap>& h) {
                  return oracle::brute_maps_equal(compose(sigma, h[0]), compose(idf, h[0]));
                },
                [&](const std::vector<BlockMap>& h) { return corestrict(h[0], eq2.object); }});

  std::vector<ShiftPtr> tests{golden, orbit_of(digits(2), {0, 1}), shift("even.shift")};
  int cones = 0;
  for (const auto& d : ds) {
    auto e = check_diagram(d, tests, &cones);
    if (!e.empty()) return e;
  }
  EXPECT(cones > 0);
  return {};
}

std::string spreading_coequalizer() {
  auto a = bmap("and.bmap");
  auto q = coequalizer_id(a, cat("M2"));
  EXPECT(q.exists());
  EXPECT(q.object->words(4).size() == 1);
  auto f3 = full(3);
  auto hs = oracle::enumerate_block_maps(a.target(), f3, 1);
  EXPECT(hs.size() == 6561);
  int invariant = 0;
  for (const auto& h : hs) {
    if (!oracle::brute_composite_equals(h, a, h)) continue;
    ++invariant;
    const auto& rule = h.rule();
    for (int o : rule)
      if (o != rule[0]) return "a non-constant invariant map exists";
  }
  EXPECT(invariant == 3);
  return {};
}

}  // namespace

int main() {
  std::vector<Criterion> all{
      {1, "Ker(XOR3): two constituents, M2 monic, not injective", 1, xor3_kernel},
      {2, "Ker(XOR2) on no-000/111: two mixing constituents, M2 not monic", 1, xor2_kernel},
      {3, "equalizer of eqf and zero in K2 and M2", 1, equalizer_example},
      {4, "run compression: epic, periodic preimages, split-epic NO with verified tuples", 30, run_compression},
      {5, "coequalizer of flip and id has the XOR2 kernel", 5, flip_coequalizer},
      {6, "carry relation not local; six-symbol relation local at window 1", 10, local_relations},
      {7, "sofic preinjectivity counterexample", 5, sofic_preinjectivity},
      {8, "K1 section of radius at most 1", 10, k1_section},
      {9, "census of radius-1 binary endomorphisms", 300, census},
      {10, "implication lattice over the corpus", 0, implication_lattice},
      {11, "universal properties against enumerated cones", 120, universal_properties},
      {12, "spreading-state coequalizer is trivial", 120, spreading_coequalizer},
  };
  int failed = 0;
  for (const auto& cr : all) {
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      err = cr.body();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (err.empty() && cr.limit_s > 0 && s > cr.limit_s) err = "over the time limit";
    std::printf("%s %2d %-78s %8.3fs", err.empty() ? "PASS" : "FAIL", cr.id, cr.title, s);
    if (cr.limit_s > 0) std::printf(" (limit %gs)", cr.limit_s);
    if (!err.empty()) std::printf("  %s", err.c_str());
    std::printf("\n");
    std::fflush(stdout);
    failed += !err.empty();
  }
  return failed ? 1 : 0;
}
