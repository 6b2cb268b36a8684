#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;
using oracle::Property;

TEST_CASE("brute shifts read the raw presentation") {
  oracle::BruteShift g(*shift("golden.shift"));
  CHECK(g.contains_word({0, 1, 0}));
  CHECK_FALSE(g.contains_word({1, 1}));
  CHECK(g.contains_periodic({0, 1}));
  CHECK_FALSE(g.contains_periodic({1}));
  CHECK(g.words(4).size() == 8);
}

TEST_CASE("3-XOR is onto at length 8") {
  auto f = bmap("xor3.bmap");
  CHECK(oracle::brute_decide(Property::Surjective, f));
  oracle::BruteShift src(*f.source());
  std::set<Word> img;
  for (const auto& u : src.words(10)) img.insert(f.apply(u));
  CHECK(img.size() == 256);
}

TEST_CASE("XOR2 has no section of radius at most 2") {
  auto f = bmap("xor2.bmap");
  for (int s = 0; s <= 2; ++s) CHECK_FALSE(oracle::brute_section(f, s));
}

TEST_CASE("identity has every property") {
  auto id = BlockMap::identity(full(2));
  for (auto p : {Property::Surjective, Property::Injective, Property::InjectiveOnPeriodic, Property::Preinjective,
                 Property::SplitEpic, Property::MonicK2, Property::RegularMonicK2})
    CHECK(oracle::brute_decide(p, id));
}

TEST_CASE("enumeration of block maps") {
  CHECK(oracle::enumerate_block_maps(full(2), full(2), 1).size() == 256);
  CHECK(oracle::enumerate_block_maps(full(2), shift("golden.shift"), 0).size() == 1);
  CHECK(oracle::enumerate_block_maps(shift("golden.shift"), full(2), 1).size() == 32);
}

TEST_CASE("brute composite and equality") {
  auto x2 = bmap("xor2.bmap");
  CHECK(oracle::brute_composite_equals(x2, x2, compose(x2, x2)));
  CHECK_FALSE(oracle::brute_composite_equals(x2, x2, x2));
  CHECK(oracle::brute_maps_equal(x2, x2.padded(2)));
}

TEST_CASE("periodic preimages of the run-compression map") {
  CHECK(oracle::same_period_preimages(bmap("compress.bmap"), 6));
  CHECK_FALSE(oracle::same_period_preimages(bmap("golden_incl.bmap"), 2));
}

TEST_CASE("census agrees on radius 0") {
  int bad = -1;
  auto csv = oracle::census_csv(0, 2, {Property::Surjective, Property::Injective, Property::MonicK2}, &bad);
  CHECK(bad == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("property names round trip") {
  for (auto p : {Property::Surjective, Property::Injective, Property::InjectiveOnPeriodic, Property::Preinjective,
                 Property::SplitEpic, Property::MonicK2, Property::RegularMonicK2})
    CHECK(oracle::parse_property(oracle::to_string(p)) == p);
  CHECK_THROWS_AS(oracle::parse_property("bogus"), ParseError);
}
