#include <doctest.h>

#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;

TEST_CASE("the diagonal is local at window 1") {
  auto g = shift("golden.shift");
  auto v = is_local_equivalence(diagonal(g), 3);
  REQUIRE(v.is_yes());
  CHECK(v.certificate["n"] == 1);
}

TEST_CASE("six-symbol local equivalence") {
  auto r = six_symbol_relation();
  CHECK(transitive_on_periodic(r).is_yes());
  auto v = is_local_equivalence(r, 2);
  REQUIRE(v.is_yes());
  CHECK(v.certificate["n"] == 1);
  auto extra = v.certificate["extra_pairs"];
  CHECK(extra.size() == 2);
  CHECK(extra.dump() == R"([["1","3"],["3","1"]])");
}

TEST_CASE("binary carry relation is not local") {
  auto r = carry_relation();
  CHECK(is_subshift(*diagonal(r.left).relation, *r.relation));
  CHECK(same_language(*r.transposed().relation, *r.relation));
  CHECK(transitive_on_periodic(r).is_yes());
  CHECK(is_local_equivalence(r, 4).is_no());
}

TEST_CASE("local closure") {
  auto x = full(2);
  auto d = diagonal(x);
  for (int n = 1; n <= 3; ++n) CHECK(same_language(*local_closure(d, x, n).relation.relation, *d.relation));
  auto flip = bmap("flip.bmap");
  auto gen = fiber_product(BlockMap::identity(x), flip);
  auto le = local_closure(gen, x, 1);
  CHECK(le.classes() == 1);
  CHECK(same_language(*le.relation.relation, *product_shift(*x, *x)));
  auto same = fiber_product(flip, flip);
  CHECK(same_language(*local_closure(same, x, 2).relation.relation, *kernel_set(flip).relation));
}

TEST_CASE("coequalizers of a map and the identity") {
  auto x = full(2);
  auto id = coequalizer_id(BlockMap::identity(x), cat("K3"));
  REQUIRE(id.exists());
  CHECK(injectivity_family(id.legs[0]).injective);

  auto flip = bmap("flip.bmap");
  auto fl = coequalizer_id(flip, cat("K3"));
  REQUIRE(fl.exists());
  CHECK(same_language(*kernel_set(fl.legs[0]).relation, *kernel_set(bmap("xor2.bmap")).relation));

  auto a = bmap("and.bmap");
  auto ca = coequalizer_id(a, cat("M2"));
  REQUIRE(ca.exists());
  CHECK(ca.object->words(3).size() == 1);
  CHECK(maps_equal(compose(ca.legs[0], a), ca.legs[0]));
}

TEST_CASE("kernels and cokernels in pointed categories") {
  auto x = full(2)->with_point(0);
  auto zero = BlockMap::constant(x, x, 0);
  auto ck = cokernel_P(zero, cat("P2"));
  REQUIRE(ck.exists());
  CHECK(maps_equal(ck.legs[0], BlockMap::identity(x)));
  auto xor3 = BlockMap::from_function(x, x, 1, [](const Word& u) { return u[0] ^ u[1] ^ u[2]; });
  auto cs = cokernel_P(xor3, cat("P2"));
  REQUIRE(cs.exists());
  CHECK(cs.object->words(2).size() == 1);
  auto g = shift("golden.shift")->with_point(0);
  auto incl = BlockMap::inclusion(g, x);
  CHECK(cokernel_P(incl, cat("P2")).status == LimitStatus::NotExists);
  // XOR3⁻¹(∞0∞) is ∞0∞ plus the orbit of ∞(011)∞; only the fixed point is mixing.
  auto k = kernel_P(xor3, cat("P2"));
  REQUIRE(k.exists());
  CHECK(k.object->words(3).size() == 1);
}
