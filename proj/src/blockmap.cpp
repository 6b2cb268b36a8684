#include "sdcat/blockmap.hpp"

#include <algorithm>
#include <numeric>

#include "sdcat/errors.hpp"

namespace sdcat {

WordIndex::WordIndex(std::vector<std::uint64_t> sorted_codes, int k, int len)
    : codes_(std::move(sorted_codes)), k_(k), len_(len) {
  std::uint64_t space = 0;
  try {
    space = ipow_checked(std::max(k, 1), len);
  } catch (const BudgetExceeded&) {
    space = UINT64_MAX;
  }
  if (space <= (1u << 22)) {
    is_dense_ = true;
    dense_.assign(space, -1);
    for (std::size_t i = 0; i < codes_.size(); ++i) dense_[codes_[i]] = static_cast<int>(i);
  } else {
    for (std::size_t i = 0; i < codes_.size(); ++i) sparse_.emplace(codes_[i], static_cast<int>(i));
  }
}

int WordIndex::find(std::uint64_t code) const {
  if (is_dense_) return code < dense_.size() ? dense_[code] : -1;
  auto it = sparse_.find(code);
  return it == sparse_.end() ? -1 : it->second;
}

WordIndex block_index(const Shift& x, int len) {
  ipow_checked(std::max(x.k(), 1), len);
  std::vector<std::uint64_t> codes;
  for (const auto& w : x.words(len)) codes.push_back(encode(w, x.k()));
  return WordIndex(std::move(codes), x.k(), len);
}

WindowGraph window_graph(const Shift& x, int m) {
  WindowGraph wg;
  wg.m = m;
  wg.windows = block_index(x, m);
  const auto& c = x.cover();
  const int k = x.k();
  std::map<std::pair<int, std::uint64_t>, int> ids;
  std::vector<std::pair<int, Word>> nodes;
  Word u;
  auto rec = [&](auto&& self, int q) -> void {
    if (static_cast<int>(u.size()) == m - 1) {
      auto key = std::make_pair(q, encode(u, k));
      if (ids.emplace(key, static_cast<int>(nodes.size())).second) nodes.push_back({q, u});
      return;
    }
    for (int a = 0; a < k; ++a) {
      int t = c.next(q, a);
      if (t < 0) continue;
      u.push_back(a);
      self(self, t);
      u.pop_back();
    }
  };
  for (int p = 0; p < c.n; ++p) rec(rec, p);
  LabeledGraph& g = wg.graph;
  g.n = static_cast<int>(nodes.size());
  g.k = wg.windows.size();
  for (int i = 0; i < g.n; ++i) {
    auto [q, w] = nodes[i];
    for (int a = 0; a < k; ++a) {
      int t = c.next(q, a);
      if (t < 0) continue;
      Word win = w;
      win.push_back(a);
      int lab = wg.windows.find(win);
      if (lab < 0) throw ValidationError("internal: cover path label outside the language");
      Word tail(win.begin() + 1, win.end());
      auto it = ids.find({t, encode(tail, k)});
      if (it == ids.end()) throw ValidationError("internal: window graph node missing");
      g.edges.push_back({i, it->second, lab});
    }
  }
  wg.graph = essential_trim(g);
  wg.graph.k = wg.windows.size();
  return wg;
}

BlockMap::BlockMap(ShiftPtr source, ShiftPtr target, int radius, std::vector<int> rule)
    : src_(std::move(source)), dst_(std::move(target)), r_(radius), rule_(std::move(rule)) {
  if (r_ < 0) throw ValidationError("negative radius");
  dom_ = block_index(*src_, 2 * r_ + 1);
  if (static_cast<int>(rule_.size()) != dom_.size()) throw ValidationError("rule size does not match B_{2r+1}");
  for (int v : rule_)
    if (v < 0 || v >= dst_->k()) throw ValidationError("rule value outside the target alphabet");
}

BlockMap BlockMap::from_function(ShiftPtr source, ShiftPtr target, int radius,
                                 const std::function<int(const Word&)>& rule) {
  auto dom = block_index(*source, 2 * radius + 1);
  std::vector<int> r(dom.size());
  for (int i = 0; i < dom.size(); ++i) r[i] = rule(dom.word(i));
  return BlockMap(std::move(source), std::move(target), radius, std::move(r));
}

BlockMap BlockMap::from_rules(ShiftPtr source, ShiftPtr target, int radius, const std::map<Word, int>& rules,
                              std::optional<int> default_symbol) {
  const int m = 2 * radius + 1;
  for (const auto& [w, v] : rules) {
    if (static_cast<int>(w.size()) != m)
      throw ValidationError("rule word '" + source->alphabet().render(w) + "' has length " +
                            std::to_string(w.size()) + ", expected " + std::to_string(m));
    if (!source->contains_word(w))
      throw ValidationError("rule word '" + source->alphabet().render(w) + "' is not in the source language");
  }
  const Alphabet& sa = source->alphabet();
  BlockMap f = from_function(source, target, radius, [&](const Word& w) {
    auto it = rules.find(w);
    if (it != rules.end()) return it->second;
    if (!default_symbol) throw ValidationError("rule undefined on '" + sa.render(w) + "' and no default given");
    return *default_symbol;
  });
  validate(f);
  return f;
}

BlockMap BlockMap::identity(ShiftPtr x) {
  auto t = x;
  return from_function(std::move(x), std::move(t), 0, [](const Word& w) { return w[0]; });
}

BlockMap BlockMap::constant(ShiftPtr source, ShiftPtr target, int symbol) {
  return from_function(std::move(source), std::move(target), 0, [symbol](const Word&) { return symbol; });
}

BlockMap BlockMap::inclusion(ShiftPtr sub, ShiftPtr ambient) {
  if (!(sub->alphabet() == ambient->alphabet())) throw ValidationError("inclusion needs a shared alphabet");
  BlockMap f = from_function(std::move(sub), std::move(ambient), 0, [](const Word& w) { return w[0]; });
  validate(f);
  return f;
}

int BlockMap::local(const Word& w) const {
  int i = dom_.find(w);
  return i < 0 ? -1 : rule_[i];
}

int BlockMap::local(const int* w) const {
  int i = dom_.find(w);
  return i < 0 ? -1 : rule_[i];
}

Word BlockMap::apply(const Word& w) const {
  const int m = window();
  Word out;
  if (static_cast<int>(w.size()) < m) return out;
  out.reserve(w.size() - m + 1);
  for (std::size_t i = 0; i + m <= w.size(); ++i) {
    int v = local(w.data() + i);
    if (v < 0) throw ValidationError("window '" + src_->alphabet().render(subword(w, static_cast<int>(i), m)) +
                                     "' is not in the source language");
    out.push_back(v);
  }
  return out;
}

PeriodicPoint BlockMap::apply(const PeriodicPoint& x) const {
  if (!src_->contains(x)) throw ValidationError("periodic point is not in the source");
  const int n = static_cast<int>(x.word.size());
  Word y(n);
  Word win(window());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < window(); ++j) win[j] = x.at(static_cast<long>(i) - r_ + j);
    y[i] = local(win);
  }
  return {y, 0};
}

BlockMap BlockMap::with_target(ShiftPtr target) const {
  BlockMap f(src_, std::move(target), r_, rule_);
  return f;
}

BlockMap BlockMap::with_source(ShiftPtr source) const {
  if (!same_language(*source, *src_)) throw ValidationError("with_source: languages differ");
  BlockMap f(std::move(source), dst_, r_, rule_);
  return f;
}

BlockMap BlockMap::padded(int radius) const {
  if (radius < r_) throw ValidationError("cannot pad to a smaller radius");
  if (radius == r_) return *this;
  const int d = radius - r_;
  return from_function(src_, dst_, radius, [&](const Word& w) { return local(w.data() + d); });
}

BlockMap BlockMap::reduced() const {
  for (int r2 = 0; r2 < r_; ++r2) {
    const int d = r_ - r2, m2 = 2 * r2 + 1;
    auto small = block_index(*src_, m2);
    std::vector<int> val(small.size(), -1);
    bool ok = true;
    for (int i = 0; i < dom_.size() && ok; ++i) {
      Word w = dom_.word(i);
      int j = small.find(w.data() + d);
      if (val[j] < 0)
        val[j] = rule_[i];
      else if (val[j] != rule_[i])
        ok = false;
    }
    if (ok) return BlockMap(src_, dst_, r2, std::move(val));
  }
  return *this;
}

Word ep_window(const EventuallyPeriodicPoint& p, long from, long to) {
  const long lu = static_cast<long>(p.left.size()), lw = static_cast<long>(p.center.size()),
             lv = static_cast<long>(p.right.size());
  Word out;
  out.reserve(static_cast<std::size_t>(std::max(0L, to - from)));
  for (long i = from; i < to; ++i) {
    if (i < 0)
      out.push_back(p.left[static_cast<std::size_t>(((i % lu) + lu) % lu)]);
    else if (i < lw)
      out.push_back(p.center[static_cast<std::size_t>(i)]);
    else
      out.push_back(p.right[static_cast<std::size_t>((i - lw) % lv)]);
  }
  return out;
}

Word apply_window(const BlockMap& f, const EventuallyPeriodicPoint& x, long from, long to) {
  return f.apply(ep_window(x, from - f.radius(), to + f.radius()));
}

bool images_equal(const BlockMap& f, const EventuallyPeriodicPoint& x, const BlockMap& g,
                  const EventuallyPeriodicPoint& y) {
  const long R = std::max(f.radius(), g.radius());
  const long L = std::lcm(static_cast<long>(x.left.size()), static_cast<long>(y.left.size()));
  const long Rt = std::lcm(static_cast<long>(x.right.size()), static_cast<long>(y.right.size()));
  const long from = -R - L;
  const long to = static_cast<long>(std::max(x.center.size(), y.center.size())) + R + Rt;
  return apply_window(f, x, from, to) == apply_window(g, y, from, to);
}

bool points_equal(const EventuallyPeriodicPoint& x, const EventuallyPeriodicPoint& y) {
  const long L = std::lcm(static_cast<long>(x.left.size()), static_cast<long>(y.left.size()));
  const long Rt = std::lcm(static_cast<long>(x.right.size()), static_cast<long>(y.right.size()));
  const long to = static_cast<long>(std::max(x.center.size(), y.center.size())) + Rt;
  return ep_window(x, -L, to) == ep_window(y, -L, to);
}

ShiftPtr image_shift(const BlockMap& f) {
  WindowGraph wg = window_graph(*f.source(), f.window());
  LabeledGraph g = wg.graph;
  g.k = f.target()->k();
  for (auto& e : g.edges) e.label = f.rule()[e.label];
  std::optional<int> pt;
  if (f.target()->point() && f.source()->point() && preserves_point(f)) pt = f.target()->point();
  return Shift::from_graph(f.target()->alphabet(), std::move(g), {}, pt);
}

BlockMap compose(const BlockMap& g, const BlockMap& f) {
  if (!same_language(*f.target(), *g.source())) throw ValidationError("compose: target of f is not the source of g");
  const int R = f.radius() + g.radius();
  return BlockMap::from_function(f.source(), g.target(), R, [&](const Word& w) {
    Word mid = f.apply(w);
    int v = g.local(mid);
    if (v < 0) throw ValidationError("compose: intermediate word outside the source of g");
    return v;
  });
}

bool maps_equal(const BlockMap& f, const BlockMap& g) {
  if (!same_language(*f.source(), *g.source())) throw ValidationError("maps_equal: sources differ");
  if (!(f.target()->alphabet() == g.target()->alphabet())) throw ValidationError("maps_equal: targets differ");
  const int R = std::max(f.radius(), g.radius());
  auto dom = block_index(*f.source(), 2 * R + 1);
  for (int i = 0; i < dom.size(); ++i) {
    Word w = dom.word(i);
    if (f.local(w.data() + (R - f.radius())) != g.local(w.data() + (R - g.radius()))) return false;
  }
  return true;
}

BlockMap mirror(const BlockMap& f) {
  auto s = mirror(*f.source());
  auto t = f.source() == f.target() ? s : mirror(*f.target());
  return BlockMap::from_function(s, t, f.radius(), [&](const Word& w) { return f.local(reversed(w)); });
}

bool preserves_point(const BlockMap& f) {
  if (!f.source()->point() || !f.target()->point()) return false;
  return f.local(Word(f.window(), *f.source()->point())) == *f.target()->point();
}

void validate(const BlockMap& f, bool pointed) {
  auto img = image_shift(f);
  if (auto w = dfa_difference_witness(img->language(), f.target()->language()))
    throw ValidationError("image word '" + f.target()->alphabet().render(*w) + "' is not in the target");
  if (pointed) {
    if (!f.source()->point() || !f.target()->point()) throw ValidationError("pointed map needs designated points");
    if (!preserves_point(f)) throw ValidationError("map does not preserve the designated points");
  }
}

ShiftPtr higher_block(const Shift& x, int m) {
  WindowGraph wg = window_graph(x, m);
  std::vector<std::string> toks;
  for (int i = 0; i < wg.windows.size(); ++i) {
    std::string s = x.alphabet().render(wg.windows.word(i));
    std::replace(s.begin(), s.end(), ' ', '|');
    toks.push_back("[" + s + "]");
  }
  std::optional<int> pt;
  if (x.point()) pt = wg.windows.find(Word(m, *x.point()));
  return Shift::from_graph(Alphabet(std::move(toks)), wg.graph, {}, pt);
}

Recoding recode_to_symbol_map(const BlockMap& f) {
  if (f.radius() == 0) return {f, BlockMap::identity(f.source()), BlockMap::identity(f.source())};
  const int r = f.radius(), m = f.window();
  ShiftPtr xm = higher_block(*f.source(), m);
  BlockMap sym(xm, f.target(), 0, f.rule());
  BlockMap conj = BlockMap::from_function(f.source(), xm, r, [&](const Word& w) { return f.domain().find(w); });
  BlockMap inv = BlockMap::from_function(xm, f.source(), 0, [&](const Word& w) { return f.domain().word(w[0])[r]; });
  return {sym, conj, inv};
}

}  // namespace sdcat
