#include "sdcat/colimits.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sdcat/errors.hpp"
#include "sdcat/io.hpp"

namespace sdcat {

using nlohmann::json;

int LocalEquivalence::classes() const { return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1; }

bool LocalEquivalence::related(const Word& u, const Word& v) const {
  int i = words.find(u), j = words.find(v);
  return i >= 0 && j >= 0 && cls[i] == cls[j];
}

std::vector<std::pair<Word, Word>> LocalEquivalence::pairs() const {
  std::vector<std::pair<Word, Word>> out;
  for (int i = 0; i < words.size(); ++i)
    for (int j = 0; j < words.size(); ++j)
      if (i != j && cls[i] == cls[j]) out.push_back({words.word(i), words.word(j)});
  return out;
}

SubshiftRelation induced_relation(ShiftPtr x, int n, const WordIndex& words, const std::vector<int>& cls) {
  WindowGraph wg = window_graph(*x, n);
  const int k = x->k();
  const auto& g = wg.graph;
  std::vector<std::vector<int>> out(g.n);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) out[g.edges[i].from].push_back(i);
  std::vector<int> wcls(wg.windows.size());
  for (int i = 0; i < wg.windows.size(); ++i) wcls[i] = cls[words.find(wg.windows.code(i))];
  LabeledGraph pg;
  pg.n = g.n * g.n;
  pg.k = k * k;
  for (int p = 0; p < g.n; ++p)
    for (int q = 0; q < g.n; ++q)
      for (int e1 : out[p])
        for (int e2 : out[q]) {
          const Edge& a = g.edges[e1];
          const Edge& b = g.edges[e2];
          if (wcls[a.label] != wcls[b.label]) continue;
          int s1 = static_cast<int>(wg.windows.code(a.label) % static_cast<std::uint64_t>(k));
          int s2 = static_cast<int>(wg.windows.code(b.label) % static_cast<std::uint64_t>(k));
          pg.edges.push_back({p * g.n + q, a.to * g.n + b.to, s1 * k + s2});
        }
  pg = essential_trim(pg);
  pg.k = k * k;
  auto rel = Shift::from_graph(product_alphabet(x->alphabet(), x->alphabet()), std::move(pg));
  return {rel, x, x};
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

// Equivalence closure of the n-word pairs occurring in rel; the reflexive
// pairs of B_n(X) are always included.
LocalEquivalence closure(const SubshiftRelation& rel, const ShiftPtr& x, int n) {
  LocalEquivalence le;
  le.n = n;
  le.words = block_index(*x, n);
  UnionFind uf(le.words.size());
  for (const auto& w : rel.relation->words(n)) {
    Word u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = rel.first(w[i]);
      v[i] = rel.second(w[i]);
    }
    int a = le.words.find(u), b = le.words.find(v);
    if (a < 0 || b < 0) throw ValidationError("relation word outside B_n(X)");
    uf.unite(a, b);
  }
  le.cls.assign(le.words.size(), -1);
  std::vector<int> id(le.words.size(), -1);
  int next = 0;
  for (int i = 0; i < le.words.size(); ++i) {
    int r = uf.find(i);
    if (id[r] < 0) id[r] = next++;
    le.cls[i] = id[r];
  }
  le.relation = induced_relation(x, n, le.words, le.cls);
  return le;
}

std::set<std::pair<Word, Word>> occurring_pairs(const SubshiftRelation& rel, int n) {
  std::set<std::pair<Word, Word>> out;
  for (const auto& w : rel.relation->words(n)) {
    Word u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = rel.first(w[i]);
      v[i] = rel.second(w[i]);
    }
    out.insert({u, v});
  }
  return out;
}

LimitResult exists(ShiftPtr obj, BlockMap leg, std::string why) {
  LimitResult r;
  r.status = LimitStatus::Exists;
  r.object = std::move(obj);
  r.legs.push_back(std::move(leg));
  r.reason = std::move(why);
  return r;
}

LimitResult trivial_quotient(const ShiftPtr& x, CategoryTag cat, std::string why) {
  auto t = terminal(cat).object;
  return exists(t, BlockMap::constant(x, t, 0), std::move(why));
}

// The map x -> class of x[i, i + n), onto its image.
BlockMap class_map(const LocalEquivalence& le, const ShiftPtr& x) {
  const int n = le.n;
  std::vector<std::string> toks(le.classes());
  for (int i = le.words.size() - 1; i >= 0; --i) toks[le.cls[i]] = "[" + compact(x->alphabet(), le.words.word(i)) + "]";
  auto full = Shift::full(Alphabet(toks));
  BlockMap q = BlockMap::from_function(x, full, n - 1, [&](const Word& w) { return le.cls[le.words.find(w.data() + (n - 1))]; });
  auto img = image(q);
  return q.with_target(img);
}

}  // namespace

Verdict is_local_equivalence(const SubshiftRelation& r, int max_window) {
  const ShiftPtr& x = r.left;
  if (!(r.left->alphabet() == r.right->alphabet()) || !same_language(*r.left, *r.right))
    throw ValidationError("relation is not on X²");
  if (!is_subshift(*diagonal(x).relation, *r.relation)) throw ValidationError("relation is not reflexive");
  if (!same_language(*r.transposed().relation, *r.relation)) throw ValidationError("relation is not symmetric");
  for (int n = 1; n <= max_window; ++n) {
    auto le = closure(r, x, n);
    if (!same_language(*le.relation.relation, *r.relation)) continue;
    auto occ = occurring_pairs(r, n);
    json extra = json::array();
    for (const auto& [u, v] : le.pairs())
      if (!occ.count({u, v})) extra.push_back(json::array({x->alphabet().render(u), x->alphabet().render(v)}));
    return Verdict::yes("local at window " + std::to_string(n))
        .with_certificate(json{{"n", n}, {"classes", le.classes()}, {"extra_pairs", extra}});
  }
  auto s = is_sft(*r.relation);
  if (s.is_no()) return Verdict::no("relation is not of finite type").with_witness(s.witness);
  return Verdict::no("no defining equivalence up to window " + std::to_string(max_window))
      .with_bound(json{{"max_window", max_window}});
}

Verdict transitive_on_periodic(const SubshiftRelation& r, int max_period) {
  const Shift& x = *r.left;
  for (int n = 1; n <= max_period; ++n) {
    std::vector<Word> pts;
    for (const auto& w : x.words(n))
      if (x.contains_periodic(w)) pts.push_back(w);
    const int m = static_cast<int>(pts.size());
    std::vector<std::vector<char>> rel(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Word pw(n);
        for (int t = 0; t < n; ++t) pw[t] = r.pair(pts[i][t], pts[j][t]);
        rel[i][j] = r.relation->contains_periodic(pw);
      }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (!rel[i][j]) continue;
        for (int l = 0; l < m; ++l)
          if (rel[j][l] && !rel[i][l])
            return Verdict::no("not transitive on period " + std::to_string(n))
                .with_witness(json{{"x", x.alphabet().render(pts[i])}, {"y", x.alphabet().render(pts[j])},
                                   {"z", x.alphabet().render(pts[l])}});
      }
  }
  return Verdict::yes("transitive on periodic points").with_bound(json{{"max_period", max_period}});
}

LocalEquivalence local_closure(const SubshiftRelation& generator, ShiftPtr x, int n) {
  if (!(generator.left->alphabet() == x->alphabet())) throw ValidationError("generator is not on X²");
  return closure(generator, x, n);
}

LimitResult coequalizer_id(const BlockMap& f, CategoryTag cat, const CoequalizerCaps& caps) {
  if (!same_language(*f.source(), *f.target())) throw ValidationError("coequalizer: expected an endomorphism");
  require_morphism(f, cat);
  const ShiftPtr& x = f.source();
  auto id = BlockMap::identity(x);
  if (maps_equal(f, id)) return exists(x, id, "f is the identity");
  if (cat.level == 1) return LimitResult::undecided("coequalizers of non-identity maps are not constructed in level-1 categories");
  const bool mixing = is_mixing(*x);
  const bool sft = is_sft(*x).is_yes();

  // (b) spreading state or nilpotency.
  auto sn = spreading_nilpotent(f);
  if (mixing && (sn.spreading || sn.nilpotent))
    return trivial_quotient(x, cat, sn.spreading ? "spreading state " + x->alphabet().token(*sn.spreading) : "nilpotent");

  // (c) eventual periodicity.
  auto ep = eventual_periodicity(f, caps.power_cap);
  if (ep.found) {
    if (!(mixing && sft))
      return LimitResult::undecided("eventually periodic map on a source that is not a mixing SFT");
    auto vep = is_visibly_eventually_periodic(f, ep);
    if (vep.is_no()) {
      auto r = LimitResult::not_exists("points have different eventual periods");
      r.bound = json{{"witness", vep.witness}};
      return r;
    }
    auto oq = orbit_subshift(f, ep.preperiod, ep.period, caps.window_cap);
    if (!oq) return LimitResult::undecided("no orbit quotient window found", json{{"window_cap", caps.window_cap}});
    auto obj = oq->object;
    BlockMap g = oq->g;
    if (cat.pointed()) {
      obj = obj->with_point(g.local(Word(g.window(), *x->point())));
      g = g.with_target(obj);
    }
    if (!is_object(*obj, cat))
      return LimitResult::undecided("orbit quotient is not an object of " + cat.name() + ": " + object_violation(*obj, cat));
    return exists(obj, g, "orbit quotient with k = " + std::to_string(ep.preperiod) + ", p = " + std::to_string(ep.period));
  }

  // (d) reversible maps.
  auto rev = is_reversible(f);
  json bound{{"power_cap", caps.power_cap}, {"window_cap", caps.window_cap}};
  bool leaning_yes = false;
  if (rev.is_yes()) {
    if (mixing) {
      auto sigma = BlockMap::from_function(x, x, 1, [](const Word& w) { return w[2]; });
      auto sigma_inv = BlockMap::from_function(x, x, 1, [](const Word& w) { return w[0]; });
      for (int j = 1; j <= caps.shift_power_cap; ++j) {
        if (maps_equal(f, power(sigma, j)) || maps_equal(f, power(sigma_inv, j)))
          return trivial_quotient(x, cat, "f is a power of the shift");
      }
    }
    int level = 1;
    for (; level <= caps.level_cap; ++level)
      if (!chain_transitive_level(f, level)) break;
    leaning_yes = level > caps.level_cap;
    bound["level_cap"] = caps.level_cap;
    bound["chain_transitive_up_to"] = level - 1;
  }

  // (e) stabilized local closure of {(f(x), x)}.
  auto gen = fiber_product(id, f);
  std::vector<LocalEquivalence> les;
  try {
    for (int n = 1; n <= caps.window_cap; ++n) {
      while (static_cast<int>(les.size()) < n + 2) les.push_back(local_closure(gen, x, static_cast<int>(les.size()) + 1));
      const auto& a = les[n - 1];
      if (!same_language(*a.relation.relation, *les[n].relation.relation) ||
          !same_language(*a.relation.relation, *les[n + 1].relation.relation))
        continue;
      BlockMap q = class_map(a, x);
      if (rev.is_yes() && q.target()->k() == 1) continue;
      if (!same_language(*kernel_set(q).relation, *a.relation.relation)) continue;
      if (!maps_equal(compose(q, f), q)) continue;
      auto obj = q.target();
      if (cat.pointed()) {
        obj = obj->with_point(q.local(Word(q.window(), *x->point())));
        q = q.with_target(obj);
      }
      if (!is_object(*obj, cat)) continue;
      return exists(obj, q, "local closure stable from window " + std::to_string(n));
    }
  } catch (const BudgetExceeded& e) {
    bound["budget"] = e.what();
    return LimitResult::undecided("local closure exceeded its budget", bound);
  }
  if (leaning_yes)
    return LimitResult::undecided("reversible and chain transitive up to the level cap; the trivial map is the likely coequalizer", bound);
  return LimitResult::undecided("no branch applies within the caps", bound);
}

LimitResult kernel_P(const BlockMap& f, CategoryTag cat) {
  if (!cat.pointed()) throw ValidationError("kernels are defined in P categories");
  require_morphism(f, cat);
  auto zero = BlockMap::constant(f.source(), f.target(), *f.target()->point());
  return equalizer(f, zero, cat);
}

LimitResult cokernel_P(const BlockMap& f, CategoryTag cat) {
  if (!cat.pointed()) throw ValidationError("cokernels are defined in P categories");
  require_morphism(f, cat);
  const ShiftPtr& y = f.target();
  auto zero = BlockMap::constant(f.source(), y, *y->point());
  if (maps_equal(f, zero)) return exists(y, BlockMap::identity(y), "f is the zero map");
  if (is_surjective(f)) return trivial_quotient(y, cat, "f is surjective");
  auto r = LimitResult::not_exists("f is neither surjective nor the zero map");
  auto w = surjectivity_witness(f);
  r.bound = json{{"missing_word", y->alphabet().render(*w)}};
  return r;
}

}  // namespace sdcat
