#include "sdcat/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sdcat/errors.hpp"
#include "sdcat/io.hpp"
#include "sdcat/limits.hpp"

namespace sdcat {

using nlohmann::json;

namespace {

void require_endomorphism(const BlockMap& f) {
  if (!same_language(*f.source(), *f.target())) throw ValidationError("expected an endomorphism");
}

std::uint64_t count_words(const Shift& x, int len) { return dfa_count_words(x.language(), len).back(); }

}  // namespace

BlockMap power(const BlockMap& f, int n) {
  require_endomorphism(f);
  BlockMap p = BlockMap::identity(f.source());
  for (int i = 0; i < n; ++i) p = compose(f, p).reduced();
  return p;
}

Verdict is_reversible(const BlockMap& f, int radius_cap) {
  require_endomorphism(f);
  auto fam = injectivity_family(f);
  if (!fam.injective) return Verdict::no("not injective").with_witness(fam.witness);
  if (auto w = surjectivity_witness(f))
    return Verdict::no("not surjective").with_witness(json{{"word", f.target()->alphabet().render(*w)}});
  Verdict v = Verdict::yes("injective and surjective");
  if (auto u = connecting_map(f, BlockMap::identity(f.source()), radius_cap)) {
    BlockMap inv = u->with_source(f.source());
    v.with_certificate(json{{"inverse_radius", inv.radius()}});
    v.certificate_map = inv;
  } else {
    v.with_bound(json{{"inverse_radius_cap", radius_cap}});
  }
  return v;
}

EventualPeriodicity eventual_periodicity(const BlockMap& f, int cap, std::uint64_t max_words) {
  require_endomorphism(f);
  EventualPeriodicity ep;
  ep.cap = cap;
  std::vector<BlockMap> pw{BlockMap::identity(f.source()).reduced()};
  for (int n = 1; n <= cap; ++n) {
    const int r = pw.back().radius() + f.radius();
    if (count_words(*f.source(), 2 * r + 1) > max_words) {
      ep.budget_stop = true;
      return ep;
    }
    BlockMap next = compose(f, pw.back()).reduced();
    // Reduced maps of one source are equal exactly when radius and table agree.
    for (int i = 0; i < n; ++i) {
      if (pw[i].radius() == next.radius() && pw[i].rule() == next.rule()) {
        ep.found = true;
        ep.preperiod = i;
        ep.period = n - i;
        return ep;
      }
    }
    pw.push_back(std::move(next));
  }
  return ep;
}

Verdict is_visibly_eventually_periodic(const BlockMap& f, const EventualPeriodicity& ep) {
  if (!ep.found) return Verdict::undecided("no eventual period below the cap").with_bound(json{{"cap", ep.cap}});
  BlockMap fk = power(f, ep.preperiod);
  for (int q = 1; q < ep.period; ++q) {
    if (ep.period % q) continue;
    auto e = equalizer_set(fk, power(f, ep.preperiod + q));
    if (e->is_empty()) continue;
    auto w = shortest_periodic_word(*e);
    return Verdict::no("some point has eventual period " + std::to_string(q))
        .with_witness(json{{"q", q}, {"point", f.source()->alphabet().render(w.value_or(Word{}))}});
  }
  return Verdict::yes("every point has eventual period " + std::to_string(ep.period))
      .with_certificate(json{{"k", ep.preperiod}, {"p", ep.period}});
}

std::optional<OrbitQuotient> orbit_subshift(const BlockMap& f, int k, int p, int window_cap) {
  require_endomorphism(f);
  if (k < 0 || p < 1) throw ValidationError("orbit quotient needs k >= 0 and p >= 1");
  if (!maps_equal(power(f, k), power(f, k + p))) throw ValidationError("f^k differs from f^(k+p)");
  const ShiftPtr& x = f.source();
  if (p == 1) {
    BlockMap fk = power(f, k);
    auto img = image(fk);
    return OrbitQuotient{img, fk.with_target(img), 0};
  }
  std::vector<BlockMap> hs;
  int r0 = 0;
  for (int j = 0; j < p; ++j) {
    hs.push_back(power(f, k + j));
    r0 = std::max(r0, hs.back().radius());
  }
  for (auto& h : hs) h = h.padded(r0);
  auto rel = fiber_product(hs[0], hs[0]).relation;
  for (int j = 1; j < p; ++j) rel = union_shift(*rel, *fiber_product(hs[j], hs[0]).relation);
  const Alphabet& a = x->alphabet();
  for (int t = 0; t <= window_cap; ++t) {
    const int R = r0 + t;
    auto token = [&](const Word& w) {
      std::set<std::string> parts;
      for (const auto& h : hs) parts.insert(compact(a, h.apply(w)));
      std::string s = "{";
      for (const auto& part : parts) s += (s.size() > 1 ? "," : "") + part;
      return s + "}";
    };
    std::set<std::string> seen;
    for (const auto& w : x->words(2 * R + 1)) seen.insert(token(w));
    Alphabet tokens(std::vector<std::string>(seen.begin(), seen.end()));
    auto full = Shift::full(tokens);
    BlockMap g = BlockMap::from_function(x, full, R, [&](const Word& w) { return tokens.index(token(w)); });
    auto img = image(g);
    g = g.with_target(img);
    if (!same_language(*kernel_set(g).relation, *rel)) continue;
    if (!maps_equal(compose(g, f), g)) continue;
    return OrbitQuotient{img, g, t};
  }
  return std::nullopt;
}

bool chain_transitive_level(const BlockMap& f, int n) {
  require_endomorphism(f);
  const auto& x = *f.source();
  auto nodes = block_index(x, n);
  if (nodes.size() == 0) return true;
  std::vector<std::vector<int>> adj(nodes.size());
  const int r = f.radius();
  for (const auto& w : x.words(n + 2 * r)) {
    int u = nodes.find(w.data() + r);
    int v = nodes.find(f.apply(w));
    adj[u].push_back(v);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return strongly_connected(adj).count == 1;
}

SpreadingNilpotent spreading_nilpotent(const BlockMap& f, int cap) {
  require_endomorphism(f);
  SpreadingNilpotent out;
  out.cap = cap;
  const ShiftPtr& x = f.source();
  BlockMap g = f.reduced();
  g = g.padded(std::max(g.radius(), 1));
  const int r = g.radius();
  for (int s = 0; s < x->k() && !out.spreading; ++s) {
    if (!x->contains_periodic(Word{s})) continue;
    bool right = true, left = true;
    for (int i = 0; i < g.domain().size(); ++i) {
      Word w = g.domain().word(i);
      if ((w[r] == s || w[r + 1] == s) && g.rule()[i] != s) right = false;
      if ((w[r - 1] == s || w[r] == s) && g.rule()[i] != s) left = false;
    }
    if (right || left) out.spreading = s;
  }
  // Iterated images of non-nilpotent maps tend to grow; past this size the
  // search stops without detecting nilpotency.
  constexpr int kMaxImageStates = 256;
  ShiftPtr z = x;
  for (int n = 1; n <= cap && !z->is_empty() && z->language().n <= kMaxImageStates; ++n) {
    auto fz = BlockMap::from_function(z, x, f.radius(), [&](const Word& w) { return f.local(w); });
    ShiftPtr next;
    try {
      next = image(fz);
    } catch (const BudgetExceeded&) {
      // Iterated images too large to present: nilpotency is not detected.
      break;
    }
    auto b1 = next->words(1);
    if (b1.size() == 1) {
      out.nilpotent = true;
      out.nilpotent_steps = n;
      out.nil_symbol = b1[0][0];
      break;
    }
    if (same_language(*next, *z)) break;
    z = next;
  }
  return out;
}

Verdict visibly_blocking(const BlockMap& f, const std::vector<Word>& W, int depth) {
  require_endomorphism(f);
  if (W.empty()) throw ValidationError("visibly blocking: empty word set");
  const Shift& x = *f.source();
  const Alphabet& a = x.alphabet();
  const int l = static_cast<int>(W[0].size());
  std::set<Word> ws;
  for (const auto& w : W) {
    if (static_cast<int>(w.size()) != l) throw ValidationError("visibly blocking: words of different lengths");
    if (!x.contains_word(w)) throw ValidationError("visibly blocking: word '" + a.render(w) + "' is not in the shift");
    ws.insert(w);
  }
  const int r = f.radius();
  for (const auto& w : x.words(l + 2 * r)) {
    if (!ws.count(subword(w, r, l))) continue;
    Word img = f.apply(w);
    if (!ws.count(img))
      return Verdict::no("condition 1 fails").with_witness(json{{"word", a.render(w)}, {"image", a.render(img)}});
  }
  BlockMap fn = f;
  for (int n = 1; n <= depth; ++n) {
    if (n > 1) fn = compose(f, fn);
    const int R = fn.radius();
    if (R == 0) break;
    // Right side: x and y agree on [0, ∞); z = x[-R, l + 2R).
    std::map<Word, std::pair<Word, Word>> right, left;
    for (const auto& z : x.words(l + 3 * R)) {
      if (ws.count(subword(z, R, l))) {
        Word key(z.begin() + R, z.end());
        Word out = fn.apply(z);
        Word rel(out.begin() + l, out.end());
        auto [it, fresh] = right.emplace(key, std::make_pair(rel, z));
        if (!fresh && it->second.first != rel)
          return Verdict::no("condition 2 fails on the right")
              .with_witness(json{{"n", n}, {"x", a.render(it->second.second)}, {"y", a.render(z)}, {"offset", -R}});
      }
      // Left side: x and y agree on (-∞, l); z = x[-2R, l + R).
      if (ws.count(subword(z, 2 * R, l))) {
        Word key(z.begin(), z.begin() + 2 * R + l);
        Word out = fn.apply(z);
        Word rel(out.begin(), out.begin() + R);
        auto [it, fresh] = left.emplace(key, std::make_pair(rel, z));
        if (!fresh && it->second.first != rel)
          return Verdict::no("condition 2 fails on the left")
              .with_witness(json{{"n", n}, {"x", a.render(it->second.second)}, {"y", a.render(z)}, {"offset", -2 * R}});
      }
    }
  }
  return Verdict::yes("blocking up to depth " + std::to_string(depth)).with_bound(json{{"depth", depth}});
}

}  // namespace sdcat
