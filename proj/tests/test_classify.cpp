#include <doctest.h>

#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;

TEST_CASE("epic") {
  CHECK(is_epic(BlockMap::identity(full(2)), cat("K2")).is_yes());
  CHECK(is_epic(bmap("xor3.bmap"), cat("K3")).is_yes());
  auto v = is_epic(bmap("golden_incl.bmap"), cat("M2"));
  REQUIRE(v.is_no());
  CHECK(v.witness["word"] == "11");
}

TEST_CASE("monic") {
  CHECK(is_monic(bmap("xor3.bmap"), cat("M2")).is_yes());
  CHECK(is_monic(bmap("xor3.bmap"), cat("K2")).is_no());
  CHECK(is_monic(bmap("xor2_n3.bmap"), cat("M2")).is_no());
  for (const char* c : {"K2", "K3", "T2", "T3", "M2", "M3", "P2", "P3"}) {
    auto x = full(2)->with_point(0);
    CHECK(is_monic(BlockMap::identity(x), cat(c)).is_yes());
  }
}

TEST_CASE("strong periodic point condition") {
  auto id = BlockMap::identity(full(2));
  for (int p = 1; p <= 3; ++p) {
    auto r = strong_condition(id, p);
    CHECK(r.answer == Answer::Yes);
    for (const auto& [u, a] : r.G) CHECK(u == a);
  }
  auto rc = bmap("compress.bmap");
  Answer first = Answer::Yes;
  for (int p = 1; p <= 3 && first == Answer::Yes; ++p) {
    auto r = strong_condition(rc, p);
    first = r.answer;
    if (r.answer == Answer::No) {
      CHECK(r.witness.contains("u"));
      CHECK(r.witness["candidates"].size() >= 1);
    }
  }
  CHECK(first == Answer::No);

  auto x2 = bmap("xor2.bmap");
  CHECK(strong_condition(x2, 1).answer == Answer::No);
  // Both choices of G(0) fail on w = 1: no preimage of ∞0.10∞ keeps the tails of G(0).
  for (int a = 0; a < 2; ++a) CHECK(oracle::tuple_has_no_preimage(x2, {0}, {a}, {0}, {a}, {1}));
}

TEST_CASE("split epic") {
  auto shrink = bmap("shrink.bmap");
  auto v = is_split_epic(shrink, cat("K1"));
  REQUIRE(v.is_yes());
  REQUIRE(v.certificate_map);
  CHECK(v.certificate_map->radius() <= 1);
  CHECK(maps_equal(compose(shrink, *v.certificate_map), BlockMap::identity(shrink.source())));
  CHECK(is_split_epic(bmap("compress.bmap"), cat("K2")).is_no());
  CHECK(is_split_epic(bmap("compress.bmap"), cat("M3")).is_no());
  auto id = is_split_epic(BlockMap::identity(full(2)), cat("K2"));
  REQUIRE(id.is_yes());
  CHECK(maps_equal(*id.certificate_map, BlockMap::identity(full(2))));
  CHECK(is_split_epic(bmap("xor3.bmap"), cat("M2")).is_no());
  // Surjective and injective on periodic points, but the sofic source has no section.
  auto sf = bmap("strong_f.bmap");
  CHECK(is_surjective(sf));
  CHECK(injectivity_family(sf).injective_on_periodic);
  CHECK(is_split_epic(sf, cat("K3")).is_undecided());
}

TEST_CASE("split monic") {
  auto gi = bmap("golden_incl.bmap");
  auto v = is_split_monic(gi, cat("M2"));
  REQUIRE(v.is_yes());
  CHECK(is_split_monic(bmap("xor2.bmap"), cat("M2")).is_no());
  auto nf = bmap("nofix_incl.bmap");
  CHECK(injectivity_family(nf).injective);
  CHECK(is_split_monic(nf, cat("M2")).is_no());
  auto r = find_retraction(gi, 1, false);
  REQUIRE(r);
  CHECK(maps_equal(compose(*r, gi), BlockMap::identity(gi.source())));
}

TEST_CASE("regular epic") {
  CHECK(is_regular_epic(bmap("xor3.bmap"), cat("K3")).is_yes());
  CHECK(is_regular_epic(bmap("golden_incl.bmap"), cat("K3")).is_no());
  CHECK(is_regular_epic(bmap("xor2.bmap"), cat("M1")).is_yes());
  CHECK(is_regular_epic(bmap("xor3.bmap"), cat("M2")).is_undecided());
}

TEST_CASE("regular monic") {
  CHECK(is_regular_monic(bmap("golden_incl.bmap"), cat("K2")).is_yes());
  auto ev = BlockMap::inclusion(shift("even.shift"), full(2));
  CHECK(is_regular_monic(ev, cat("K3")).is_no());
  CHECK(is_regular_monic(ev, cat("M3")).is_no());
  CHECK(is_regular_monic(bmap("xor3.bmap"), cat("M2")).is_no());
}

TEST_CASE("classification rows") {
  auto row = classify(BlockMap::identity(full(2)), cat("K2"));
  for (const char* k : {"epic", "monic", "split_epic", "split_monic", "regular_epic", "regular_monic"})
    CHECK(row[k]["answer"] == "YES");
  auto x3 = classify(bmap("xor3.bmap"), cat("M2"));
  CHECK(x3["epic"]["answer"] == "YES");
  CHECK(x3["monic"]["answer"] == "YES");
  CHECK(x3["split_epic"]["answer"] == "NO");
  CHECK(x3["split_monic"]["answer"] == "NO");
  CHECK(x3["regular_epic"]["answer"] == "UNDECIDED");
  CHECK(x3["regular_monic"]["answer"] == "NO");
  auto gi = classify(bmap("golden_incl.bmap"), cat("M2"));
  CHECK(gi["epic"]["answer"] == "NO");
  CHECK(gi["monic"]["answer"] == "YES");
  CHECK(gi["split_monic"]["answer"] == "YES");
  CHECK(gi["regular_monic"]["answer"] == "YES");
  CHECK(gi["split_epic"]["answer"] == "NO");
  CHECK(gi["regular_epic"]["answer"] == "NO");
}

TEST_CASE("existence of morphisms") {
  CHECK(exists_morphism(*shift("golden.shift"), *full(2)).is_yes());
  auto v = exists_morphism(*shift("full_abc.shift"), *shift("nofix.shift"));
  CHECK(v.is_no());
  CHECK(exists_morphism(*Shift::empty(digits(2)), *full(2)).is_yes());
}

TEST_CASE("undecided verdicts carry their caps") {
  auto v = is_split_epic(bmap("strong_f.bmap"), cat("K3"));
  REQUIRE(v.is_undecided());
  CHECK_FALSE(v.bound.is_null());
}

TEST_CASE("constraint solver") {
  // Proper 3-colorings of a 4-cycle.
  Csp csp;
  csp.domains.assign(4, {0, 1, 2});
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    csp.constraints.push_back({{i, j}, [i, j](const std::vector<int>& a) { return a[i] != a[j]; }});
  }
  int count = 0;
  auto st = solve_csp(csp, 1u << 20, [&](const std::vector<int>&) {
    ++count;
    return false;
  });
  CHECK(st == CspStatus::Exhausted);
  CHECK(count == 18);
}
