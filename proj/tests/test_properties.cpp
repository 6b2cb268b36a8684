#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace sdcat;
using namespace sdcat::test;

namespace {

constexpr int kTrials = 25;

bool implies(const nlohmann::json& row, const char* a, const char* b) {
  return row[a]["answer"] != "YES" || row[b]["answer"] != "NO";
}

Word rotate(const Word& u, int by) {
  Word out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[(i + by) % u.size()];
  return out;
}

}  // namespace

TEST_CASE("engine words match the raw presentation") {
  Gen gen(11);
  for (int t = 0; t < kTrials; ++t) {
    auto x = t % 2 ? gen.sofic(2 + gen.below(2)) : gen.sft(2 + gen.below(2));
    oracle::BruteShift b(*x);
    for (int n = 1; n <= 6; ++n) {
      auto e = x->words(n);
      auto r = b.words(n);
      CHECK(std::set<Word>(e.begin(), e.end()) == std::set<Word>(r.begin(), r.end()));
    }
    CHECK(minimize(x->language()) == x->language());
  }
}

TEST_CASE("maps commute with the shift on periodic points") {
  Gen gen(12);
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.endo_full(2, 1);
    for (int n = 1; n <= 8; ++n) {
      Word u = gen.word(2, n);
      auto lhs = f.apply(PeriodicPoint{rotate(u, 1), 0});
      auto rhs = f.apply(PeriodicPoint{u, 0}).shifted(1);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("composition is associative and mirror is a functor") {
  Gen gen(13);
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.endo_full(2, gen.below(2));
    auto g = gen.endo_full(2, 1).with_source(f.target()).with_target(f.target());
    auto h = gen.endo_full(2, gen.below(2)).with_source(f.target()).with_target(f.target());
    CHECK(maps_equal(compose(h, compose(g, f)), compose(compose(h, g), f)));
    CHECK(maps_equal(mirror(compose(g, f)), compose(mirror(g), mirror(f))));
    CHECK(maps_equal(mirror(mirror(f)), f));
  }
}

TEST_CASE("kernel sets are equivalence relations") {
  Gen gen(14);
  for (int t = 0; t < kTrials / 2; ++t) {
    auto x = gen.sft(2);
    auto f = gen.map_to_full(x, 2, 1);
    auto ker = kernel_set(f);
    CHECK(is_subshift(*diagonal(x).relation, *ker.relation));
    CHECK(same_language(*ker.transposed().relation, *ker.relation));
    CHECK(transitive_on_periodic(ker, 6).is_yes());
  }
}

TEST_CASE("equalizer sets") {
  Gen gen(15);
  for (int t = 0; t < kTrials; ++t) {
    auto x = gen.sft(2);
    auto f = gen.map_to_full(x, 2, 1);
    auto g = gen.map_to_full(x, 2, gen.below(2)).with_target(f.target());
    CHECK(same_language(*equalizer_set(f, g), *equalizer_set(g, f)));
    CHECK(same_language(*equalizer_set(f, f), *x));
  }
}

TEST_CASE("images of composites") {
  Gen gen(16);
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.endo_full(2, 1);
    auto g = gen.endo_full(2, gen.below(2)).with_source(f.target()).with_target(f.target());
    CHECK(is_subshift(*image(compose(g, f)), *image(g)));
  }
}

TEST_CASE("preinjectivity matches the diagonal-constituent test on transitive SFTs") {
  Gen gen(17);
  auto sources = std::vector<ShiftPtr>{full(2), shift("golden.shift"), shift("no000111.shift")};
  for (int t = 0; t < 3 * kTrials; ++t) {
    auto x = sources[t % sources.size()];
    auto f = gen.map_to_full(x, 2, 1);
    auto ker = kernel_set(f);
    auto delta = diagonal(x);
    bool delta_constituent = false;
    for (const auto& c : constituents(*ker.relation)) delta_constituent |= same_language(*c, *delta.relation);
    CHECK(is_preinjective(f).is_yes() == delta_constituent);
  }
}

TEST_CASE("injectivity chain on transitive SFTs") {
  Gen gen(18);
  auto sources = std::vector<ShiftPtr>{full(2), shift("golden.shift")};
  for (int t = 0; t < 4 * kTrials; ++t) {
    auto x = sources[t % 2];
    auto f = gen.map_to_full(x, 2 + gen.below(2), 1);
    auto fam = injectivity_family(f);
    if (fam.injective) CHECK(fam.injective_on_periodic);
    if (fam.injective_on_periodic) CHECK(fam.injective_on_uniform);
    CHECK(fam.injective == fam.injective_on_periodic);
  }
}

TEST_CASE("periods of products") {
  Gen gen(19);
  for (int t = 0; t < kTrials; ++t) {
    auto x = gen.sofic(2);
    auto y = gen.sft(2);
    auto p = periods(*product_shift(*x, *y));
    auto px = periods(*x), py = periods(*y);
    for (int n = 1; n <= 12; ++n) CHECK(p.contains(n) == (px.contains(n) && py.contains(n)));
  }
}

TEST_CASE("implication lattice and certificate soundness") {
  Gen gen(20);
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.endo_full(2, gen.below(2));
    for (const char* c : {"K2", "M2", "K3"}) {
      ClassifyCaps caps;
      caps.radius_cap = 1;
      auto row = classify(f, cat(c), caps);
      CHECK(implies(row, "split_epic", "regular_epic"));
      CHECK(implies(row, "regular_epic", "epic"));
      CHECK(implies(row, "split_epic", "epic"));
      CHECK(implies(row, "split_monic", "monic"));
      CHECK(implies(row, "regular_monic", "monic"));
    }
    auto se = is_split_epic(f, cat("K2"));
    if (se.is_yes()) {
      REQUIRE(se.certificate_map);
      CHECK(maps_equal(compose(f, *se.certificate_map), BlockMap::identity(f.target())));
      auto img = image(f);
      CHECK(is_mixing(*img));
      CHECK(is_sft(*img).is_yes());
    }
    if (se.is_no()) CHECK_FALSE(oracle::brute_section(f, 1));
    auto sm = is_split_monic(f, cat("K2"));
    if (sm.is_yes() && sm.certificate_map)
      CHECK(maps_equal(compose(*sm.certificate_map, f), BlockMap::identity(f.source())));
  }
}

TEST_CASE("strong condition witnesses are confirmed by exhaustion") {
  Gen gen(21);
  for (int t = 0; t < 2 * kTrials; ++t) {
    auto f = gen.endo_full(2, 1);
    if (!is_surjective(f)) continue;
    auto r = strong_condition(f, 1);
    if (r.answer != Answer::No) continue;
    const auto& a = f.source()->alphabet();
    for (const auto& c : r.witness["candidates"]) {
      CHECK(oracle::tuple_has_no_preimage(f, a.parse_word(c["u"].get<std::string>()),
                                          a.parse_word(c["a"].get<std::string>()),
                                          a.parse_word(c["v"].get<std::string>()),
                                          a.parse_word(c["b"].get<std::string>()),
                                          a.parse_word(c["w"].get<std::string>())));
    }
  }
}

TEST_CASE("eventual periodicity and chain transitivity") {
  Gen gen(22);
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.endo_full(2, gen.below(2));
    auto ep = eventual_periodicity(f, 12);
    if (ep.found) {
      CHECK(maps_equal(power(f, ep.preperiod), power(f, ep.preperiod + ep.period)));
      for (int q = 1; q < ep.period; ++q)
        if (ep.period % q == 0) CHECK_FALSE(maps_equal(power(f, ep.preperiod), power(f, ep.preperiod + q)));
    }
    bool prev = true;
    for (int n = 1; n <= 3; ++n) {
      bool cur = chain_transitive_level(f, n);
      if (!prev) CHECK_FALSE(cur);
      prev = cur;
    }
  }
}

TEST_CASE("pullback squares commute and connecting maps are unique") {
  Gen gen(23);
  for (int t = 0; t < kTrials / 2; ++t) {
    auto f = gen.endo_full(2, 1);
    auto g = gen.endo_full(2, gen.below(2)).with_source(f.source()).with_target(f.target());
    auto pb = pullback(f, g, cat("K2"));
    REQUIRE(pb.exists());
    CHECK(maps_equal(compose(f, pb.legs[0]), compose(g, pb.legs[1])));

    auto h = gen.endo_full(2, 0).with_source(f.target()).with_target(f.target());
    auto hf = compose(h, f);
    auto u = connecting_map(f, hf);
    REQUIRE(u);
    CHECK(maps_equal(compose(*u, f.with_target(u->source())), hf));
    for (const auto& v : oracle::enumerate_block_maps(u->source(), u->target(), 1))
      if (oracle::brute_composite_equals(v, f.with_target(u->source()), hf)) CHECK(maps_equal(v, *u));
  }
}

TEST_CASE("local closures are equivalences containing the generator") {
  Gen gen(24);
  auto x = full(2);
  for (int t = 0; t < kTrials / 2; ++t) {
    auto f = gen.endo_full(2, gen.below(2));
    auto gen_rel = fiber_product(f, BlockMap::identity(x));
    auto prev = local_closure(gen_rel, x, 1);
    CHECK(is_subshift(*gen_rel.relation, *prev.relation.relation));
    CHECK(is_subshift(*diagonal(x).relation, *prev.relation.relation));
    CHECK(same_language(*prev.relation.transposed().relation, *prev.relation.relation));
    for (int n = 2; n <= 3; ++n) {
      auto cur = local_closure(gen_rel, x, n);
      CHECK(is_subshift(*gen_rel.relation, *cur.relation.relation));
      CHECK(is_subshift(*cur.relation.relation, *prev.relation.relation));
      prev = cur;
    }
  }
}

TEST_CASE("coequalizer legs absorb the map") {
  Gen gen(25);
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.endo_full(2, gen.below(2));
    auto r = coequalizer_id(f, cat("K3"));
    if (r.exists()) CHECK(maps_equal(compose(r.legs[0], f), r.legs[0]));
  }
}

TEST_CASE("random files round trip") {
  Gen gen(26);
  auto dir = std::filesystem::temp_directory_path() / "sdcat_prop";
  std::filesystem::create_directories(dir);
  for (int t = 0; t < kTrials; ++t) {
    auto x = t % 2 ? gen.sofic(3) : gen.sft(3);
    auto y = parse_shift(format_shift(*x), "roundtrip");
    CHECK(same_language(*x, *y));
    auto f = gen.map_to_full(x, 2, 1);
    auto path = dir / ("m" + std::to_string(t) + ".bmap");
    save_bmap(f, path);
    auto g = load_bmap(path);
    CHECK(f.rule() == g.rule());
    CHECK(same_language(*g.source(), *x));
  }
}
