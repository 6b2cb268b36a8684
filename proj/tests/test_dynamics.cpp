#include <doctest.h>

#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;

namespace {

BlockMap rotation3() {
  auto x = full(3);
  return BlockMap::from_function(x, x, 0, [](const Word& u) { return (u[0] + 1) % 3; });
}

// Flip the first track of {0,1}² exactly where the second track reads 1.
BlockMap guarded_flip() {
  auto x = full(4);
  return BlockMap::from_function(x, x, 0, [](const Word& u) {
    int a = u[0] / 2, b = u[0] % 2;
    return (b ? 1 - a : a) * 2 + b;
  });
}

}  // namespace

TEST_CASE("reversibility") {
  auto s = is_reversible(bmap("sigma.bmap"));
  REQUIRE(s.is_yes());
  REQUIRE(s.certificate_map);
  CHECK(maps_equal(compose(*s.certificate_map, bmap("sigma.bmap")), BlockMap::identity(full(2))));
  auto fl = is_reversible(bmap("flip.bmap"));
  REQUIRE(fl.is_yes());
  REQUIRE(fl.certificate_map);
  CHECK(maps_equal(*fl.certificate_map, bmap("flip.bmap")));
  CHECK(is_reversible(bmap("xor2.bmap")).is_no());
}

TEST_CASE("eventual periodicity") {
  auto ep = eventual_periodicity(bmap("flip.bmap"));
  REQUIRE(ep.found);
  CHECK(ep.preperiod == 0);
  CHECK(ep.period == 2);
  auto ez = eventual_periodicity(bmap("zero.bmap"));
  REQUIRE(ez.found);
  CHECK(ez.preperiod == 1);
  CHECK(ez.period == 1);
  auto ex = eventual_periodicity(bmap("xor2.bmap"), 12);
  CHECK_FALSE(ex.found);
}

TEST_CASE("visible eventual periodicity") {
  auto flip = bmap("flip.bmap");
  CHECK(is_visibly_eventually_periodic(flip, eventual_periodicity(flip)).is_yes());
  auto id = BlockMap::identity(full(2));
  CHECK(is_visibly_eventually_periodic(id, eventual_periodicity(id)).is_yes());
  auto g = guarded_flip();
  auto ep = eventual_periodicity(g);
  REQUIRE(ep.found);
  CHECK(ep.period == 2);
  auto v = is_visibly_eventually_periodic(g, ep);
  CHECK(v.is_no());
  CHECK_FALSE(v.witness.is_null());
}

TEST_CASE("orbit subshifts") {
  auto flip = bmap("flip.bmap");
  auto q = orbit_subshift(flip, 0, 2);
  REQUIRE(q);
  CHECK(maps_equal(compose(q->g, flip), q->g));
  CHECK(same_language(*kernel_set(q->g).relation, *kernel_set(bmap("xor2.bmap")).relation));

  auto id = BlockMap::identity(full(2));
  auto qi = orbit_subshift(id, 0, 1);
  REQUIRE(qi);
  CHECK(injectivity_family(qi->g).injective);

  auto rot = rotation3();
  auto qr = orbit_subshift(rot, 0, 3);
  REQUIRE(qr);
  // A single cell cannot tell x from its rotations; a 3-window sees the relative symbols.
  CHECK(qr->window == 1);
  CHECK(qr->object->words(1).size() == 9);
  CHECK(qr->object->words(3).size() == 81);
  CHECK(maps_equal(compose(qr->g, rot), qr->g));
}

TEST_CASE("chain transitivity levels") {
  CHECK(chain_transitive_level(bmap("sigma.bmap"), 3));
  CHECK_FALSE(chain_transitive_level(BlockMap::identity(full(2)), 1));
  CHECK(chain_transitive_level(bmap("flip.bmap"), 1));
}

TEST_CASE("spreading states and nilpotency") {
  auto a = spreading_nilpotent(bmap("and.bmap"));
  REQUIRE(a.spreading);
  CHECK(*a.spreading == 0);
  auto i = spreading_nilpotent(BlockMap::identity(full(2)));
  CHECK_FALSE(i.spreading);
  CHECK_FALSE(i.nilpotent);
  auto z = spreading_nilpotent(bmap("zero.bmap"));
  CHECK(z.nilpotent);
  CHECK(z.nilpotent_steps == 1);
}

TEST_CASE("visibly blocking sets") {
  auto id = BlockMap::identity(full(2));
  CHECK(visibly_blocking(id, {{0, 1}}).is_yes());
  CHECK(visibly_blocking(bmap("sigma.bmap"), {{0}}).is_no());
  CHECK(visibly_blocking(bmap("flip.bmap"), {{0}}).is_no());
}

TEST_CASE("powers") {
  auto x2 = bmap("xor2.bmap");
  CHECK(maps_equal(power(x2, 0), BlockMap::identity(full(2))));
  CHECK(maps_equal(power(x2, 2), compose(x2, x2)));
  // x + σ⁴x after four steps.
  auto expect = BlockMap::from_function(full(2), full(2), 4, [](const Word& u) { return u[4] ^ u[8]; });
  CHECK(maps_equal(power(x2, 4).with_source(full(2)).with_target(full(2)), expect));
}
