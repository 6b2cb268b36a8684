#include "sdcat/limits.hpp"

#include <algorithm>
#include <map>

#include "sdcat/errors.hpp"

namespace sdcat {

using nlohmann::json;

std::string to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::Exists:
      return "exists";
    case LimitStatus::NotExists:
      return "not-exists";
    default:
      return "undecided";
  }
}

LimitResult LimitResult::not_exists(std::string why) {
  LimitResult r;
  r.status = LimitStatus::NotExists;
  r.reason = std::move(why);
  return r;
}

LimitResult LimitResult::undecided(std::string why, json bound) {
  LimitResult r;
  r.status = LimitStatus::Undecided;
  r.reason = std::move(why);
  r.bound = std::move(bound);
  return r;
}

json to_json(const LimitResult& r) {
  json j{{"status", to_string(r.status)}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.bound.is_null()) j["bound"] = r.bound;
  if (r.object) {
    j["object_symbols"] = r.object->alphabet().tokens();
    j["object_empty"] = r.object->is_empty();
  }
  j["legs"] = r.legs.size();
  return j;
}

namespace {

LimitResult exists(ShiftPtr obj, std::vector<BlockMap> legs, std::string why = {}) {
  LimitResult r;
  r.status = LimitStatus::Exists;
  r.object = std::move(obj);
  r.legs = std::move(legs);
  r.reason = std::move(why);
  return r;
}

struct Restricted {
  LimitStatus status = LimitStatus::Exists;
  ShiftPtr sub;
  std::string reason;
};

bool cofinite(const PeriodSet& p) { return static_cast<int>(p.residues().size()) == p.period(); }

// The largest subobject of e that is an object of cat, as used by equalizers
// and pullbacks. point is the designated symbol of e in P.
Restricted restrict_to_category(const ShiftPtr& e, CategoryTag cat, std::optional<int> point) {
  Restricted out;
  auto finish = [&](ShiftPtr s) {
    if (cat.pointed()) {
      if (!point || !s->contains_periodic(Word{*point})) {
        out.status = LimitStatus::Undecided;
        out.reason = "the designated point lies outside the mixing constituent";
        return out;
      }
      s = s->with_point(point);
    }
    if (cat.level == 2 && !is_sft(*s).is_yes()) {
      out.status = LimitStatus::Undecided;
      out.reason = "restricted object is not of finite type";
      return out;
    }
    out.sub = s;
    return out;
  };
  switch (cat.restriction) {
    case Restriction::K:
      return finish(e);
    case Restriction::T: {
      if (e->is_empty()) {
        out.status = LimitStatus::NotExists;
        out.reason = "empty subshift is not an object of " + cat.name();
        return out;
      }
      if (cat.level == 2) {
        if (!is_transitive(*e)) {
          out.status = LimitStatus::NotExists;
          out.reason = "not transitive";
          return out;
        }
        return finish(e);
      }
      auto cs = constituents(*e);
      if (cs.size() != 1) {
        out.status = LimitStatus::NotExists;
        out.reason = std::to_string(cs.size()) + " constituents";
        return out;
      }
      return finish(cs[0]);
    }
    default: {
      auto cs = constituents(*e);
      std::vector<ShiftPtr> mixing;
      bool open = false;
      for (const auto& c : cs) {
        if (is_mixing(*c))
          mixing.push_back(c);
        else if (cat.level == 3 && cofinite(periods(*c)))
          open = true;
      }
      if (mixing.size() >= 2) {
        out.status = LimitStatus::NotExists;
        out.reason = std::to_string(mixing.size()) + " mixing constituents";
        return out;
      }
      if (open) {
        out.status = LimitStatus::Undecided;
        out.reason = "a non-mixing constituent with cofinite periods may hold another mixing subshift";
        return out;
      }
      if (mixing.empty()) {
        if (cat.pointed()) {
          out.status = LimitStatus::Undecided;
          out.reason = "no mixing constituent contains the designated point";
          return out;
        }
        out.sub = Shift::empty(e->alphabet());
        return out;
      }
      return finish(mixing[0]);
    }
  }
}

BlockMap coordinate_leg(const ShiftPtr& sub, const SubshiftRelation& rel, bool first) {
  const ShiftPtr& to = first ? rel.left : rel.right;
  return BlockMap::from_function(sub, to, 0, [&](const Word& w) { return first ? rel.first(w[0]) : rel.second(w[0]); });
}

void require_level_object(const Shift& x, CategoryTag cat) {
  if (cat.level == 1) return;
  require_object(x, cat);
}

}  // namespace

LimitResult terminal(CategoryTag cat) {
  if (cat.level == 1) return LimitResult::not_exists("level-1 categories have no terminal object");
  auto t = Shift::trivial();
  if (cat.pointed()) t = t->with_point(0);
  return exists(t, {});
}

LimitResult initial(CategoryTag cat) {
  if (cat.level == 1) return LimitResult::not_exists("level-1 categories have no initial object");
  if (cat.pointed()) return exists(Shift::trivial()->with_point(0), {}, "zero object");
  if (cat.restriction == Restriction::T)
    return LimitResult::not_exists("empty subshift is not an object of " + cat.name());
  return exists(Shift::empty(Alphabet({"0"})), {});
}

LimitResult product(ShiftPtr x, ShiftPtr y, CategoryTag cat) {
  require_level_object(*x, cat);
  require_level_object(*y, cat);
  if (cat.level == 1) return LimitResult::undecided("products are not constructed in level-1 categories");
  auto p = product_shift(*x, *y);
  SubshiftRelation rel{p, x, y};
  if (!is_object(*p, cat)) return LimitResult::undecided("product is not an object of " + cat.name() + ": " + object_violation(*p, cat));
  return exists(p, {rel.p1(), rel.p2()});
}

LimitResult coproduct(ShiftPtr x, ShiftPtr y, CategoryTag cat) {
  require_level_object(*x, cat);
  require_level_object(*y, cat);
  if (cat.level == 1) return LimitResult::undecided("coproducts are not constructed in level-1 categories");
  if (x->is_empty()) return exists(y, {BlockMap::from_function(x, y, 0, [](const Word& w) { return w[0]; }), BlockMap::identity(y)});
  if (y->is_empty()) return exists(x, {BlockMap::identity(x), BlockMap::from_function(y, x, 0, [](const Word& w) { return w[0]; })});
  if (cat.restriction != Restriction::K)
    return LimitResult::not_exists("disjoint union of nonempty shifts is not transitive");
  std::vector<std::string> toks = x->alphabet().tokens();
  for (const auto& t : y->alphabet().tokens()) {
    std::string s = t;
    while (std::find(toks.begin(), toks.end(), s) != toks.end()) s += "'";
    toks.push_back(s);
  }
  LabeledGraph g = x->cover().as_graph();
  LabeledGraph h = y->cover().as_graph();
  const int kx = x->k();
  for (const auto& e : h.edges) g.edges.push_back({e.from + g.n, e.to + g.n, e.label + kx});
  g.n += h.n;
  g.k = static_cast<int>(toks.size());
  auto u = Shift::from_graph(Alphabet(toks), std::move(g));
  auto i1 = BlockMap::from_function(x, u, 0, [](const Word& w) { return w[0]; });
  auto i2 = BlockMap::from_function(y, u, 0, [kx](const Word& w) { return w[0] + kx; });
  return exists(u, {i1, i2});
}

LimitResult equalizer(const BlockMap& f, const BlockMap& g, CategoryTag cat) {
  if (!same_language(*f.source(), *g.source()) || !same_language(*f.target(), *g.target()))
    throw ValidationError("equalizer: maps are not parallel");
  if (cat.level == 1) {
    require_morphism(f, cat);
    require_morphism(g, cat);
    if (maps_equal(f, g)) return exists(f.source(), {BlockMap::identity(f.source())});
    return LimitResult::undecided("equalizers of distinct maps are not constructed in level-1 categories");
  }
  require_morphism(f, cat);
  require_morphism(g, cat);
  auto e = equalizer_set(f, g);
  auto r = restrict_to_category(e, cat, f.source()->point());
  if (r.status == LimitStatus::NotExists) return LimitResult::not_exists(r.reason);
  if (r.status == LimitStatus::Undecided) return LimitResult::undecided(r.reason);
  auto sub = r.sub;
  auto leg = BlockMap::inclusion(sub, f.source());
  return exists(sub, {leg});
}

LimitResult pullback(const BlockMap& f, const BlockMap& g, CategoryTag cat) {
  if (!same_language(*f.target(), *g.target())) throw ValidationError("pullback: maps have different targets");
  require_morphism(f, cat);
  require_morphism(g, cat);
  if (cat.level == 1) return LimitResult::undecided("pullbacks are not constructed in level-1 categories");
  auto rel = fiber_product(f, g);
  std::optional<int> pt;
  if (cat.pointed()) pt = rel.pair(*f.source()->point(), *g.source()->point());
  auto r = restrict_to_category(rel.relation, cat, pt);
  if (r.status == LimitStatus::NotExists) return LimitResult::not_exists(r.reason);
  if (r.status == LimitStatus::Undecided) return LimitResult::undecided(r.reason);
  return exists(r.sub, {coordinate_leg(r.sub, rel, true), coordinate_leg(r.sub, rel, false)});
}

LimitResult kernel_pair(const BlockMap& f, CategoryTag cat) { return pullback(f, f, cat); }

std::optional<BlockMap> connecting_map(const BlockMap& f, const BlockMap& g, int radius_cap) {
  if (!same_language(*f.source(), *g.source())) throw ValidationError("connecting map: sources differ");
  auto kf = kernel_set(f).relation;
  auto kg = kernel_set(g).relation;
  if (!is_subshift(*kf, *kg)) return std::nullopt;
  auto img = image(f);
  const ShiftPtr& x = f.source();
  const int rf = f.radius(), rg = g.radius();
  BlockMap fe = f.with_target(img);
  for (int s = std::max(0, rg - rf); s <= std::max(radius_cap, rg - rf); ++s) {
    const int len = 2 * (s + rf) + 1;
    std::map<Word, int> table;
    bool ok = true;
    for (const auto& w : x->words(len)) {
      Word v = f.apply(w);
      int c = g.local(w.data() + (s + rf - rg));
      auto [it, fresh] = table.emplace(v, c);
      if (!fresh && it->second != c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto dom = block_index(*img, 2 * s + 1);
    if (static_cast<int>(table.size()) != dom.size()) continue;
    BlockMap u = BlockMap::from_function(img, g.target(), s, [&](const Word& v) { return table.at(v); });
    if (maps_equal(compose(u, fe), g)) return u.reduced();
  }
  return std::nullopt;
}

namespace {

// Y ∩ approx_m(Z) for an SFT Y of window wy.
ShiftPtr sft_meet(const Shift& y, int wy, const Shift& z, int m) {
  const int M = std::max(wy, m);
  auto a = sft_approximation(z, m);
  std::vector<Word> allowed;
  for (const auto& w : y.words(M))
    if (a->contains_word(w)) allowed.push_back(w);
  return Shift::from_allowed(y.alphabet(), M, allowed);
}

}  // namespace

LimitResult image_factorization(const BlockMap& f, CategoryTag cat, int window_cap) {
  if (cat.level == 1) return LimitResult::undecided("image factorizations are not constructed in level-1 categories");
  require_morphism(f, cat);
  auto img = image(f);
  if (cat.pointed()) img = img->with_point(f.target()->point());
  auto make = [&](std::string why) {
    return exists(img, {f.with_target(img), BlockMap::inclusion(img, f.target())}, std::move(why));
  };
  if (cat.level == 3) return make({});
  auto sv = is_sft(*img);
  if (sv.is_yes()) return make("image is of finite type");
  auto yv = is_sft(*f.target());
  const int wy = yv.certificate.value("window", 1);
  json chain = json::array();
  ShiftPtr prev;
  int prev_m = 0;
  for (int m = 1; m <= window_cap && chain.size() < 3; ++m) {
    auto ym = sft_meet(*f.target(), wy, *img, m);
    if (prev && !same_language(*prev, *ym)) {
      auto w = dfa_difference_witness(prev->language(), ym->language());
      chain.push_back(json{{"window", prev_m}, {"dropped_at", m}, {"word", f.target()->alphabet().render(*w)}});
    }
    prev = ym;
    prev_m = m;
  }
  auto r = LimitResult::not_exists("image is not of finite type");
  r.bound = json{{"chain", chain}, {"window_cap", window_cap}};
  if (!sv.witness.is_null()) r.bound["witness"] = sv.witness;
  return r;
}

BlockMap subobject_union(const BlockMap& i1, const BlockMap& i2) {
  if (!same_language(*i1.target(), *i2.target())) throw ValidationError("union: maps have different targets");
  if (!injectivity_family(i1).injective || !injectivity_family(i2).injective)
    throw ValidationError("union: inputs must be injective");
  auto u = union_shift(*image(i1), *image(i2));
  return BlockMap::inclusion(u, i1.target());
}

BlockMap pairing(const BlockMap& h1, const BlockMap& h2, const ShiftPtr& rel) {
  if (!same_language(*h1.source(), *h2.source())) throw ValidationError("pairing: sources differ");
  const int R = std::max(h1.radius(), h2.radius());
  const int kb = h2.target()->k();
  BlockMap m = BlockMap::from_function(h1.source(), rel, R, [&](const Word& w) {
    return h1.local(w.data() + (R - h1.radius())) * kb + h2.local(w.data() + (R - h2.radius()));
  });
  validate(m);
  return m;
}

BlockMap corestrict(const BlockMap& h, const ShiftPtr& sub) {
  BlockMap m = h.with_target(sub);
  validate(m);
  return m;
}

}  // namespace sdcat
