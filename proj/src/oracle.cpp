#include "sdcat/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "sdcat/classify.hpp"
#include "sdcat/errors.hpp"

namespace sdcat::oracle {

namespace {

using Subset = std::vector<char>;

Subset step(const Nfa& a, const Subset& s, int c) {
  Subset t(a.size(), 0);
  for (int q = 0; q < a.size(); ++q)
    if (s[q])
      for (auto [l, to] : a.out[q])
        if (l == c) t[to] = 1;
  return t;
}

bool any(const Subset& s) { return std::find(s.begin(), s.end(), 1) != s.end(); }

// Keeps vertices with an in-edge and an out-edge until stable.
std::vector<char> prune(int n, const std::vector<std::array<int, 3>>& edges) {
  std::vector<char> keep(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> in(n, 0), out(n, 0);
    for (const auto& e : edges)
      if (keep[e[0]] && keep[e[1]]) {
        out[e[0]] = 1;
        in[e[1]] = 1;
      }
    for (int v = 0; v < n; ++v)
      if (keep[v] && !(in[v] && out[v])) {
        keep[v] = 0;
        changed = true;
      }
  }
  return keep;
}

Word cyclic_image(const BlockMap& f, const Word& a) {
  const int n = static_cast<int>(a.size());
  const int r = f.radius();
  Word win(2 * r + 1), out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = -r; j <= r; ++j) win[j + r] = a[((i + j) % n + n) % n];
    out[i] = f.local(win);
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(b, 1)) return ~std::uint64_t{0};
    r *= b;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- BruteShift

BruteShift::BruteShift(const Shift& x) {
  const auto& raw = x.raw_graph();
  std::vector<std::array<int, 3>> edges;
  for (const auto& e : raw.edges) edges.push_back({e.from, e.to, e.label});
  auto keep = prune(raw.n, edges);
  std::vector<int> id(raw.n, -1);
  int n = 0;
  for (int v = 0; v < raw.n; ++v)
    if (keep[v]) id[v] = n++;
  nfa_.k = x.k();
  nfa_.out.assign(n, {});
  for (const auto& e : edges)
    if (keep[e[0]] && keep[e[1]]) nfa_.out[id[e[0]]].push_back({e[2], id[e[1]]});
}

bool BruteShift::contains_word(const Word& w) const {
  Subset s(vertices(), 1);
  for (int c : w) {
    s = step(nfa_, s, c);
    if (!any(s)) return false;
  }
  return vertices() > 0;
}

bool BruteShift::contains_periodic(const Word& w) const {
  const int n = vertices();
  if (n == 0 || w.empty()) return false;
  // reach[i] = states reachable from i by w; look for i reaching itself by some w^m.
  std::vector<Subset> m(n);
  for (int i = 0; i < n; ++i) {
    Subset s(n, 0);
    s[i] = 1;
    for (int c : w) s = step(nfa_, s, c);
    m[i] = s;
  }
  for (int i = 0; i < n; ++i) {
    Subset cur = m[i];
    for (int rep = 0; rep < n; ++rep) {
      if (cur[i]) return true;
      Subset nx(n, 0);
      for (int j = 0; j < n; ++j)
        if (cur[j])
          for (int t = 0; t < n; ++t)
            if (m[j][t]) nx[t] = 1;
      cur = std::move(nx);
    }
  }
  return false;
}

std::vector<Word> BruteShift::words(int n) const {
  std::vector<Word> out;
  if (vertices() == 0) return out;
  Word w;
  std::vector<Subset> stack{Subset(vertices(), 1)};
  std::function<void()> rec = [&]() {
    if (static_cast<int>(w.size()) == n) {
      out.push_back(w);
      return;
    }
    for (int c = 0; c < k(); ++c) {
      Subset s = step(nfa_, stack.back(), c);
      if (!any(s)) continue;
      w.push_back(c);
      stack.push_back(std::move(s));
      rec();
      stack.pop_back();
      w.pop_back();
    }
  };
  rec();
  return out;
}

// ---------------------------------------------------------------- NFA difference

std::optional<Word> nfa_difference(const Nfa& a, const Nfa& b, std::uint64_t budget) {
  if (a.size() == 0) return std::nullopt;
  if (b.size() == 0) {
    for (int q = 0; q < a.size(); ++q)
      if (!a.out[q].empty()) return Word{a.out[q][0].first};
    return std::nullopt;
  }
  using Key = std::pair<Subset, Subset>;
  std::map<Key, std::pair<int, int>> parent;  // key -> (parent id, letter)
  std::vector<Key> order;
  Key start{Subset(a.size(), 1), Subset(b.size(), 1)};
  parent.emplace(start, std::make_pair(-1, -1));
  order.push_back(start);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order.size() > budget) throw BudgetExceeded("oracle: subset search exceeded its budget");
    for (int c = 0; c < a.k; ++c) {
      Subset sa = step(a, order[i].first, c);
      if (!any(sa)) continue;
      Subset sb = step(b, order[i].second, c);
      Key key{std::move(sa), std::move(sb)};
      if (parent.count(key)) continue;
      parent.emplace(key, std::make_pair(static_cast<int>(i), c));
      order.push_back(key);
      if (!any(order.back().second)) {
        Word w;
        for (int j = static_cast<int>(order.size()) - 1; j > 0;) {
          auto [p, l] = parent.at(order[j]);
          w.push_back(l);
          j = p;
        }
        std::reverse(w.begin(), w.end());
        return w;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- image presentation

ImageNfa image_nfa(const BlockMap& f) {
  BruteShift x(*f.source());
  const int r = f.radius();
  ImageNfa img;
  img.nfa.k = f.target()->k();
  std::map<std::pair<int, Word>, int> id;
  std::vector<std::pair<int, Word>> states;
  // Endpoints of paths of length 2r with the symbols read.
  for (int v0 = 0; v0 < x.vertices(); ++v0) {
    std::vector<std::pair<int, Word>> layer{{v0, {}}};
    for (int d = 0; d < 2 * r; ++d) {
      std::vector<std::pair<int, Word>> next;
      for (auto& [v, w] : layer)
        for (auto [l, to] : x.nfa().out[v]) {
          Word w2 = w;
          w2.push_back(l);
          next.push_back({to, w2});
        }
      layer = std::move(next);
    }
    for (auto& s : layer)
      if (!id.count(s)) {
        id.emplace(s, static_cast<int>(states.size()));
        states.push_back(s);
      }
  }
  img.nfa.out.assign(states.size(), {});
  img.input_of.assign(states.size(), {});
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& [v, ctx] = states[i];
    for (auto [l, to] : x.nfa().out[v]) {
      Word win = ctx;
      win.push_back(l);
      int o = f.local(win);
      if (o < 0) continue;
      Word nctx(win.begin() + 1, win.end());
      if (r == 0) nctx.clear();
      int j = id.at({to, nctx});
      img.nfa.out[i].push_back({o, j});
      img.input_of[i].push_back(l);
    }
  }
  return img;
}

bool image_within(const BlockMap& f, const Shift& y) {
  return !nfa_difference(image_nfa(f).nfa, BruteShift(y).nfa()).has_value();
}

// ---------------------------------------------------------------- enumeration

std::vector<BlockMap> enumerate_block_maps(ShiftPtr source, ShiftPtr target, int r, std::uint64_t budget) {
  BruteShift xs(*source);
  auto dom = xs.words(2 * r + 1);
  const int ky = target->k();
  if (ipow(ky, dom.size()) > budget) throw BudgetExceeded("oracle: too many local rules to enumerate");
  auto index = block_index(*source, 2 * r + 1);
  if (index.size() != static_cast<int>(dom.size())) throw ValidationError("oracle: block counts disagree with the engine");
  std::vector<BlockMap> out;
  std::vector<int> digits(dom.size(), 0);
  while (true) {
    std::vector<int> rule(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) rule[index.find(dom[i])] = digits[i];
    BlockMap f(source, target, r, rule);
    if (image_within(f, *target)) out.push_back(std::move(f));
    // Last window varies fastest.
    int i = static_cast<int>(dom.size()) - 1;
    while (i >= 0 && ++digits[i] == ky) digits[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------- equality

bool brute_composite_equals(const BlockMap& g, const BlockMap& f, const BlockMap& h) {
  BruteShift x(*f.source());
  const int R = std::max(f.radius() + g.radius(), h.radius());
  for (const auto& w : x.words(2 * R + 1)) {
    const int cut = R - f.radius() - g.radius();
    Word inner(w.begin() + cut, w.end() - cut);
    Word gf = g.apply(f.apply(inner));
    const int hc = R - h.radius();
    Word hw(w.begin() + hc, w.end() - hc);
    if (gf.size() != 1 || gf[0] != h.local(hw)) return false;
  }
  return true;
}

bool brute_maps_equal(const BlockMap& f, const BlockMap& g) {
  BruteShift x(*f.source());
  const int R = std::max(f.radius(), g.radius());
  for (const auto& w : x.words(2 * R + 1)) {
    Word a(w.begin() + (R - f.radius()), w.end() - (R - f.radius()));
    Word b(w.begin() + (R - g.radius()), w.end() - (R - g.radius()));
    if (f.local(a) != g.local(b)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- decisions

namespace {

struct PairGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, bool>>> out;  // (to, differs)
};

PairGraph pair_graph(const ImageNfa& img) {
  const int s = img.nfa.size();
  PairGraph g;
  g.n = s * s;
  g.out.assign(g.n, {});
  for (int p = 0; p < s; ++p)
    for (int q = 0; q < s; ++q)
      for (std::size_t i = 0; i < img.nfa.out[p].size(); ++i)
        for (std::size_t j = 0; j < img.nfa.out[q].size(); ++j) {
          auto [lp, tp] = img.nfa.out[p][i];
          auto [lq, tq] = img.nfa.out[q][j];
          if (lp != lq) continue;
          g.out[p * s + q].push_back({tp * s + tq, img.input_of[p][i] != img.input_of[q][j]});
        }
  return g;
}

std::vector<char> closure(const PairGraph& g, std::vector<char> seed, bool forward, bool equal_only) {
  std::vector<std::vector<int>> adj(g.n);
  for (int v = 0; v < g.n; ++v)
    for (auto [t, d] : g.out[v]) {
      if (equal_only && d) continue;
      if (forward)
        adj[v].push_back(t);
      else
        adj[t].push_back(v);
    }
  std::deque<int> q;
  for (int v = 0; v < g.n; ++v)
    if (seed[v]) q.push_back(v);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int t : adj[v])
      if (!seed[t]) {
        seed[t] = 1;
        q.push_back(t);
      }
  }
  return seed;
}

bool brute_injective(const BlockMap& f) {
  auto g = pair_graph(image_nfa(f));
  std::vector<std::array<int, 3>> edges;
  for (int v = 0; v < g.n; ++v)
    for (auto [t, d] : g.out[v]) edges.push_back({v, t, d});
  auto keep = prune(g.n, edges);
  for (const auto& e : edges)
    if (e[2] && keep[e[0]] && keep[e[1]]) return false;
  return true;
}

bool brute_preinjective(const BlockMap& f) {
  auto g = pair_graph(image_nfa(f));
  // States on a cycle of equal-symbol edges.
  std::vector<char> cyc(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    std::vector<char> seed(g.n, 0);
    for (auto [t, d] : g.out[v])
      if (!d) seed[t] = 1;
    cyc[v] = closure(g, seed, true, true)[v];
  }
  auto left = closure(g, closure(g, cyc, true, true), true, false);
  auto right = closure(g, closure(g, cyc, false, true), false, false);
  for (int v = 0; v < g.n; ++v)
    if (left[v])
      for (auto [t, d] : g.out[v])
        if (d && right[t]) return false;
  return true;
}

bool brute_injective_on_periodic(const BlockMap& f, int max_period) {
  BruteShift x(*f.source());
  for (int n = 1; n <= max_period; ++n) {
    std::set<Word> seen;
    for (const auto& a : x.words(n)) {
      if (!x.contains_periodic(a)) continue;
      if (!seen.insert(cyclic_image(f, a)).second) return false;
    }
  }
  return true;
}

// The finite shift of one periodic orbit of length n, on n symbols.
ShiftPtr orbit_object(int n) {
  std::vector<std::string> t;
  for (int i = 0; i < n; ++i) t.push_back("z" + std::to_string(i));
  std::vector<Word> allowed;
  for (int i = 0; i < n; ++i) allowed.push_back({i, (i + 1) % n});
  return Shift::from_allowed(Alphabet(t), 2, allowed);
}

bool brute_monic_k2(const BlockMap& f, const Bounds& b) {
  for (int n = 1; n <= b.period; ++n) {
    auto z = orbit_object(n);
    auto maps = enumerate_block_maps(z, f.source(), 0, b.budget);
    std::map<Word, int> by_image;
    BruteShift zs(*z);
    auto zwords = zs.words(2 * f.radius() + 1);
    for (int i = 0; i < static_cast<int>(maps.size()); ++i) {
      Word key;
      for (const auto& w : zwords) {
        Word fg = f.apply(maps[i].apply(w));
        key.push_back(fg.empty() ? -1 : fg[0]);
      }
      auto [it, fresh] = by_image.emplace(key, i);
      if (!fresh && !brute_maps_equal(maps[it->second], maps[i])) return false;
    }
  }
  return true;
}

// Image of f is cut out by its own words of length m for some m <= max_window.
bool brute_image_sft(const BlockMap& f, int max_window) {
  const int r = f.radius();
  const int k = f.target()->k();
  auto img = image_nfa(f).nfa;
  BruteShift x(*f.source());
  for (int m = 1; m <= max_window; ++m) {
    std::set<Word> blocks;
    for (const auto& w : x.words(m + 2 * r)) {
      Word b;
      for (int i = 0; i < m; ++i) b.push_back(f.local(Word(w.begin() + i, w.begin() + i + 2 * r + 1)));
      blocks.insert(b);
    }
    // States are words of length m - 1; an edge reads the last symbol of an allowed block.
    std::map<Word, int> id;
    std::vector<std::array<int, 3>> edges;
    auto node = [&](const Word& w) { return id.emplace(w, static_cast<int>(id.size())).first->second; };
    for (const auto& b : blocks) {
      Word from(b.begin(), b.end() - 1), to(b.begin() + 1, b.end());
      edges.push_back({node(from), node(to), b.back()});
    }
    const int n = static_cast<int>(id.size());
    auto keep = prune(n, edges);
    Nfa sft;
    sft.k = k;
    sft.out.assign(n, {});
    for (const auto& e : edges)
      if (keep[e[0]] && keep[e[1]]) sft.out[e[0]].push_back({e[2], e[1]});
    if (!nfa_difference(sft, img).has_value()) return true;
  }
  return false;
}

}  // namespace

bool brute_decide(Property p, const BlockMap& f, const Bounds& b) {
  switch (p) {
    case Property::Surjective:
      return !nfa_difference(BruteShift(*f.target()).nfa(), image_nfa(f).nfa, b.budget).has_value();
    case Property::Injective:
      return brute_injective(f);
    case Property::InjectiveOnPeriodic:
      return brute_injective_on_periodic(f, b.period);
    case Property::Preinjective:
      return brute_preinjective(f);
    case Property::SplitEpic:
      for (int s = 0; s <= b.section_radius; ++s)
        if (brute_section(f, s, b.budget)) return true;
      return false;
    case Property::MonicK2:
      return brute_monic_k2(f, b);
    case Property::RegularMonicK2:
      return brute_injective(f) && brute_image_sft(f, b.window);
  }
  return false;
}

std::string to_string(Property p) {
  switch (p) {
    case Property::Surjective: return "epic";
    case Property::Injective: return "injective";
    case Property::InjectiveOnPeriodic: return "per-injective";
    case Property::Preinjective: return "preinjective";
    case Property::SplitEpic: return "split-epic";
    case Property::MonicK2: return "monic";
    case Property::RegularMonicK2: return "regular-monic";
  }
  return "?";
}

Property parse_property(std::string_view s) {
  if (s == "epic" || s == "surjective") return Property::Surjective;
  if (s == "injective") return Property::Injective;
  if (s == "per-injective") return Property::InjectiveOnPeriodic;
  if (s == "preinjective") return Property::Preinjective;
  if (s == "split-epic") return Property::SplitEpic;
  if (s == "monic") return Property::MonicK2;
  if (s == "regular-monic") return Property::RegularMonicK2;
  throw ParseError("unknown oracle property '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- periodic preimages and tuples

bool same_period_preimages(const BlockMap& f, int max_period) {
  BruteShift x(*f.source()), y(*f.target());
  for (int n = 1; n <= max_period; ++n) {
    std::set<Word> hit;
    for (const auto& a : x.words(n))
      if (x.contains_periodic(a)) hit.insert(cyclic_image(f, a));
    for (const auto& u : y.words(n))
      if (y.contains_periodic(u) && !hit.count(u)) return false;
  }
  return true;
}

bool tuple_has_no_preimage(const BlockMap& f, const Word& u, const Word& a, const Word& v, const Word& b,
                           const Word& w, int extra) {
  BruteShift x(*f.source());
  const int r = f.radius();
  const int p = static_cast<int>(u.size()), q = static_cast<int>(v.size());
  const int lw = static_cast<int>(w.size());
  const int K = p * q * (x.vertices() + 1) + 2 * x.vertices() + 2 * r;
  auto target_at = [&](long i) -> int {
    if (i < 0) return u[((i % p) + p) % p];
    if (i < lw) return w[i];
    return v[(i - lw) % q];
  };
  for (int m = 0; 2 * m <= extra; ++m) {
    // x occupies [lo, hi); the free middle is [-m, lw + m).
    const long lo = -m - K, mid_hi = lw + m, hi = lw + m + K;
    Word xs;
    for (long i = lo; i < -m; ++i) xs.push_back(a[((i % p) + p) % p]);
    if (!x.contains_word(xs)) continue;
    Word tail;
    for (long i = mid_hi; i < hi; ++i) tail.push_back(b[(i - lw) % q]);
    bool found = false;
    std::function<void()> rec = [&]() {
      if (found) return;
      const long pos = lo + static_cast<long>(xs.size());
      if (pos == mid_hi) {
        Word full = xs;
        full.insert(full.end(), tail.begin(), tail.end());
        if (!x.contains_word(full)) return;
        for (long i = lo + r; i < hi - r; ++i) {
          Word win(full.begin() + (i - lo - r), full.begin() + (i - lo + r + 1));
          if (f.local(win) != target_at(i)) return;
        }
        found = true;
        return;
      }
      for (int c = 0; c < x.k(); ++c) {
        xs.push_back(c);
        bool ok = x.contains_word(xs);
        // Image at pos - r is now fixed.
        if (ok && pos - r >= lo + r) {
          Word win(xs.end() - (2 * r + 1), xs.end());
          ok = f.local(win) == target_at(pos - r);
        }
        if (ok) rec();
        xs.pop_back();
        if (found) return;
      }
    };
    rec();
    if (found) return false;
  }
  return true;
}

// ---------------------------------------------------------------- sections

std::optional<BlockMap> brute_section(const BlockMap& f, int s, std::uint64_t budget) {
  const ShiftPtr& xp = f.source();
  const ShiftPtr& yp = f.target();
  BruteShift y(*yp);
  const int r = f.radius();
  const int kx = xp->k();
  auto dom = y.words(2 * s + 1);
  std::map<Word, int> var;
  for (std::size_t i = 0; i < dom.size(); ++i) var.emplace(dom[i], static_cast<int>(i));
  struct Check {
    std::vector<int> vars;
    int center;
  };
  std::vector<std::vector<Check>> at(dom.size());
  for (const auto& z : y.words(2 * s + 2 * r + 1)) {
    Check c;
    for (int j = 0; j <= 2 * r; ++j) c.vars.push_back(var.at(Word(z.begin() + j, z.begin() + j + 2 * s + 1)));
    c.center = z[s + r];
    int last = *std::max_element(c.vars.begin(), c.vars.end());
    at[last].push_back(c);
  }
  auto index = block_index(*yp, 2 * s + 1);
  std::vector<int> val(dom.size(), -1);
  std::uint64_t nodes = 0;
  std::optional<BlockMap> found;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (found) return;
    if (++nodes > budget) throw BudgetExceeded("oracle: section search exceeded its budget");
    if (i == dom.size()) {
      std::vector<int> rule(dom.size());
      for (std::size_t j = 0; j < dom.size(); ++j) rule[index.find(dom[j])] = val[j];
      BlockMap g(yp, xp, s, rule);
      if (!image_within(g, *xp)) return;
      if (!brute_composite_equals(f, g, BlockMap::identity(yp))) return;
      found = g;
      return;
    }
    for (int c = 0; c < kx && !found; ++c) {
      val[i] = c;
      bool ok = true;
      for (const auto& ch : at[i]) {
        Word win;
        for (int v : ch.vars) win.push_back(val[v]);
        if (f.local(win) != ch.center) {
          ok = false;
          break;
        }
      }
      if (ok) rec(i + 1);
    }
    val[i] = -1;
  };
  rec(0);
  return found;
}

// ---------------------------------------------------------------- mediators

std::vector<BlockMap> mediators(ShiftPtr z, ShiftPtr obj, const std::vector<BlockMap>& legs,
                                const std::vector<BlockMap>& cone, int r, std::uint64_t budget) {
  if (legs.size() != cone.size()) throw ValidationError("oracle: legs and cone differ in size");
  for (const auto& l : legs)
    if (l.radius() != 0) throw ValidationError("oracle: mediators need radius-0 legs");
  std::vector<BlockMap> padded;
  for (const auto& c : cone) {
    if (c.radius() > r) throw ValidationError("oracle: cone radius exceeds the search radius");
    padded.push_back(c.padded(r));
  }
  BruteShift zs(*z);
  auto dom = zs.words(2 * r + 1);
  std::vector<std::vector<int>> cand(dom.size());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (int c = 0; c < obj->k(); ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < legs.size() && ok; ++j) ok = legs[j].local(Word{c}) == padded[j].local(dom[i]);
      if (ok) cand[i].push_back(c);
    }
    total *= std::max<std::size_t>(cand[i].size(), 1);
    if (cand[i].empty()) return {};
    if (total > budget) throw BudgetExceeded("oracle: mediator enumeration exceeded its budget");
  }
  auto index = block_index(*z, 2 * r + 1);
  std::vector<BlockMap> out;
  std::vector<std::size_t> pick(dom.size(), 0);
  while (true) {
    std::vector<int> rule(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) rule[index.find(dom[i])] = cand[i][pick[i]];
    BlockMap m(z, obj, r, rule);
    if (image_within(m, *obj)) out.push_back(std::move(m));
    int i = static_cast<int>(dom.size()) - 1;
    while (i >= 0 && ++pick[i] == cand[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------- census

std::string census_csv(int radius, int k, const std::vector<Property>& checks, int* disagreements) {
  std::vector<std::string> t;
  for (int i = 0; i < k; ++i) t.push_back(std::to_string(i));
  auto full = Shift::full(Alphabet(t));
  auto maps = enumerate_block_maps(full, full, radius);
  std::ostringstream csv;
  csv << "rule";
  for (auto p : checks) csv << "," << to_string(p) << "_engine," << to_string(p) << "_brute";
  csv << ",agree\n";
  int bad = 0;
  Bounds bounds;
  bounds.period = 10;
  ClassifyCaps caps;
  caps.radius_cap = bounds.section_radius;
  const auto K2 = CategoryTag::parse("K2");
  for (const auto& f : maps) {
    std::string rule;
    for (int o : f.rule()) rule += std::to_string(o);
    csv << rule;
    bool agree = true;
    for (auto p : checks) {
      std::string engine;
      switch (p) {
        case Property::Surjective: engine = is_surjective(f) ? "yes" : "no"; break;
        case Property::Injective: engine = injectivity_family(f).injective ? "yes" : "no"; break;
        case Property::InjectiveOnPeriodic:
          engine = injectivity_family(f).injective_on_periodic ? "yes" : "no";
          break;
        case Property::Preinjective: engine = is_preinjective(f).is_yes() ? "yes" : "no"; break;
        case Property::SplitEpic: engine = to_string(is_split_epic(f, K2, caps).answer); break;
        case Property::MonicK2: engine = to_string(is_monic(f, K2).answer); break;
        case Property::RegularMonicK2: engine = to_string(is_regular_monic(f, K2, caps).answer); break;
      }
      std::transform(engine.begin(), engine.end(), engine.begin(), [](unsigned char c) { return std::tolower(c); });
      const bool brute = brute_decide(p, f, bounds);
      csv << "," << engine << "," << (brute ? "yes" : "no");
      if (engine != "undecided" && (engine == "yes") != brute) agree = false;
      if (engine == "undecided" && p == Property::SplitEpic && brute) agree = false;
    }
    csv << "," << (agree ? "1" : "0") << "\n";
    if (!agree) ++bad;
  }
  if (disagreements) *disagreements = bad;
  return csv.str();
}

}  // namespace sdcat::oracle
