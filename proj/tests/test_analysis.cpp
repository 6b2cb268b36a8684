#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;

namespace {

// Points of period n (σⁿ-fixed) of x, by listing words.
std::set<Word> periodic_words(const Shift& x, int n) {
  std::set<Word> out;
  const int k = x.k();
  for (std::uint64_t c = 0; c < ipow_checked(k, n); ++c) {
    Word u = decode(c, n, k);
    if (x.contains_periodic(u)) out.insert(u);
  }
  return out;
}

bool sums_to(const Word& a, const Word& b, const Word& y) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] ^ b[i]) != y[i % y.size()]) return false;
  return true;
}

}  // namespace

TEST_CASE("images") {
  auto g = shift("golden.shift");
  CHECK(same_language(*image(BlockMap::identity(g)), *g));
  auto z = image(bmap("zero.bmap"));
  CHECK(z->words(4).size() == 1);
  CHECK(z->contains_periodic({0}));

  // Image of XOR2 on the no-000/111 shift, compared with direct evaluation.
  auto f = bmap("xor2_n3.bmap");
  auto img = image(f);
  oracle::BruteShift src(*f.source());
  for (int n = 1; n <= 8; ++n) {
    std::set<Word> direct;
    for (const auto& u : src.words(n + 2)) direct.insert(f.apply(u));
    auto ws = img->words(n);
    CHECK(std::set<Word>(ws.begin(), ws.end()) == direct);
  }
}

TEST_CASE("kernel of the 3-neighbor XOR") {
  auto f = bmap("xor3.bmap");
  auto ker = kernel_set(f);
  // Periodic pairs of period 6 are exactly (x, x + y) with y in {0, 011, 101, 110}.
  const std::vector<Word> ys{{0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  for (const auto& a : periodic_words(*f.source(), 6))
    for (const auto& b : periodic_words(*f.source(), 6)) {
      Word pair;
      for (int i = 0; i < 6; ++i) pair.push_back(ker.pair(a[i], b[i]));
      bool expect = false;
      for (const auto& y : ys) expect = expect || sums_to(a, b, y);
      CHECK(ker.relation->contains_periodic(pair) == expect);
    }
  auto cs = constituents(*ker.relation);
  REQUIRE(cs.size() == 2);
  auto delta = diagonal(f.source());
  int deltas = 0;
  for (const auto& c : cs) deltas += same_language(*c, *delta.relation);
  CHECK(deltas == 1);
  CHECK(same_language(*image(BlockMap::identity(f.source())), *f.source()));
  CHECK(same_language(*kernel_set(BlockMap::identity(f.source())).relation, *delta.relation));
}

TEST_CASE("kernel of XOR2 on the no-000/111 shift") {
  auto f = bmap("xor2_n3.bmap");
  auto cs = constituents(*kernel_set(f).relation);
  REQUIRE(cs.size() == 2);
  for (const auto& c : cs) CHECK(is_mixing(*c));
}

TEST_CASE("equalizer sets") {
  auto f = bmap("eqf.bmap");
  auto zero = bmap("zero.bmap");
  auto e = equalizer_set(f, zero);
  auto e_by_hand = Shift::from_allowed(digits(2), 3, {{0, 0, 0}, {0, 1, 0}, {1, 0, 1}});
  CHECK(same_language(*e, *e_by_hand));
  CHECK(periodic_words(*e, 6).size() == 3);  // 000000, 010101, 101010
  CHECK(same_language(*equalizer_set(f, f), *f.source()));
  auto x2 = bmap("xor2.bmap");
  auto e2 = equalizer_set(x2, zero);
  CHECK(same_language(*e2, *Shift::from_allowed(digits(2), 2, {{0, 0}, {1, 1}})));
  CHECK(same_language(*equalizer_set(x2, zero), *equalizer_set(zero, x2)));
}

TEST_CASE("constituents and transitivity") {
  auto g = shift("golden.shift");
  CHECK(constituents(*g).size() == 1);
  CHECK(is_transitive(*g));
  CHECK(is_mixing(*g));
  auto gg = coproduct(g, g, cat("K3")).object;
  CHECK(constituents(*gg).size() == 2);
  CHECK_FALSE(is_transitive(*gg));
  auto o = orbit_of(digits(2), {0, 1});
  CHECK(is_transitive(*o));
  CHECK_FALSE(is_mixing(*o));
}

TEST_CASE("period sets") {
  auto p = periods(*full(2));
  for (int n = 1; n <= 12; ++n) CHECK(p.contains(n));
  auto po = periods(*orbit_of(digits(2), {0, 1}));
  for (int n = 1; n <= 12; ++n) CHECK(po.contains(n) == (n % 2 == 0));
  CHECK(periods(*Shift::empty(digits(2))).empty());
  // Against periodic point listing.
  for (const char* name : {"golden.shift", "even.shift", "nofix.shift", "no000111.shift", "z012.shift"}) {
    auto x = shift(name);
    auto px = periods(*x);
    for (int n = 1; n <= 8; ++n) CHECK(px.contains(n) == !periodic_words(*x, n).empty());
  }
}

TEST_CASE("peric") {
  auto f2 = full(2);
  auto o = orbit_of(digits(2), {0, 1});
  CHECK(is_peric(BlockMap::inclusion(o, f2)).is_yes());
  // The rule is not a morphism into o; is_peric reads only the two period sets.
  CHECK(is_peric(BlockMap::constant(f2, o, 0)).is_no());
  auto e = Shift::empty(digits(2));
  CHECK(is_peric(BlockMap(e, f2, 0, {})).is_yes());
}

TEST_CASE("finite type") {
  LabeledGraph lg;
  lg.k = 2;
  lg.n = 2;
  lg.edges = {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}};
  auto g = Shift::from_graph(digits(2), lg);
  auto v = is_sft(*g);
  CHECK(v.is_yes());
  CHECK(v.certificate["window"] == 2);
  CHECK(is_sft(*shift("even.shift")).is_no());
  auto vf = is_sft(*full(2));
  CHECK(vf.is_yes());
  CHECK(vf.certificate["window"] == 1);
}

TEST_CASE("injectivity family") {
  auto id = BlockMap::identity(full(2));
  auto fi = injectivity_family(id);
  CHECK(fi.injective);
  CHECK(fi.injective_on_periodic);
  CHECK(fi.injective_on_uniform);
  auto x3 = injectivity_family(bmap("xor3.bmap"));
  CHECK_FALSE(x3.injective);
  CHECK_FALSE(x3.injective_on_periodic);
  CHECK(x3.injective_on_uniform);

  // 021 and 031 both go to 001 on the shift of 0+21+2 and 0+31+3 blocks.
  auto x = Shift::from_regex(digits(4), "(0+21+2|0+31+3)*");
  auto f = BlockMap::from_function(x, full(4), 1, [](const Word& u) {
    return u[0] == 0 && u[1] >= 2 && u[2] == 1 ? 0 : u[1];
  });
  auto fam = injectivity_family(f);
  CHECK_FALSE(fam.injective);
  CHECK(fam.injective_on_periodic);
}

TEST_CASE("preinjectivity") {
  CHECK(is_preinjective(bmap("xor3.bmap")).is_yes());
  CHECK(is_preinjective(BlockMap::identity(full(2))).is_yes());
  auto f = bmap("sofic_f.bmap");
  CHECK(constituents(*kernel_set(f).relation).size() == 1);
  CHECK(is_preinjective(f).is_no());
}

TEST_CASE("resolvingness") {
  auto r = resolvingness(bmap("xor2.bmap"));
  CHECK(r.left);
  CHECK(r.right);
  auto f3 = full(3);
  // (2, b) -> 2, (a, b) -> a + b mod 2.
  auto m = BlockMap::from_function(f3, f3, 1, [](const Word& u) { return u[1] == 2 ? 2 : (u[1] + u[2]) % 2; });
  auto rm = resolvingness(m);
  CHECK(rm.left);
  CHECK_FALSE(rm.right);
  auto ri = resolvingness(BlockMap::identity(f3));
  CHECK(ri.left);
  CHECK(ri.right);
}

TEST_CASE("finite and countable") {
  auto o = orbit_of(digits(2), {0, 1});
  CHECK(is_finite(*o));
  auto z = shift("z012.shift");
  CHECK_FALSE(is_finite(*z));
  CHECK(is_countable(*z));
  CHECK_FALSE(is_countable(*shift("golden.shift")));
}

TEST_CASE("mirror functor on maps") {
  auto g = bmap("xor2.bmap");
  auto f = bmap("xor3.bmap");
  CHECK(maps_equal(mirror(compose(g, f)), compose(mirror(g), mirror(f))));
}
