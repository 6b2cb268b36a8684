#include "sdcat/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "sdcat/errors.hpp"

namespace sdcat {

using nlohmann::json;

// ---------------------------------------------------------------- CSP

namespace {

struct CspRun {
  const Csp& csp;
  std::vector<std::vector<int>> by_var;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  const std::function<bool(const std::vector<int>&)>& accept;
  std::vector<int> assign;
  bool budget_hit = false;

  CspRun(const Csp& c, std::uint64_t b, const std::function<bool(const std::vector<int>&)>& a)
      : csp(c), by_var(c.domains.size()), budget(b), accept(a), assign(c.domains.size(), -1) {
    for (int i = 0; i < static_cast<int>(c.constraints.size()); ++i) {
      std::vector<int> vs = c.constraints[i].vars;
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      for (int v : vs) by_var[v].push_back(i);
    }
  }

  // Restricts domains after assigning var; false on a wipe-out.
  bool propagate(int var, std::vector<std::vector<int>>& dom) {
    for (int ci : by_var[var]) {
      const auto& c = csp.constraints[ci];
      std::vector<int> open;
      for (int v : c.vars)
        if (assign[v] < 0 && std::find(open.begin(), open.end(), v) == open.end()) open.push_back(v);
      if (open.empty()) {
        if (!c.ok(assign)) return false;
      } else if (open.size() == 1) {
        int u = open[0];
        std::vector<int> keep;
        for (int val : dom[u]) {
          assign[u] = val;
          if (c.ok(assign)) keep.push_back(val);
        }
        assign[u] = -1;
        if (keep.empty()) return false;
        dom[u] = std::move(keep);
      }
    }
    return true;
  }

  bool run(std::vector<std::vector<int>> dom) {
    if (++nodes > budget) {
      budget_hit = true;
      return true;
    }
    int best = -1;
    for (int v = 0; v < static_cast<int>(dom.size()); ++v) {
      if (assign[v] >= 0) continue;
      if (best < 0 || dom[v].size() < dom[best].size() ||
          (dom[v].size() == dom[best].size() && by_var[v].size() > by_var[best].size()))
        best = v;
    }
    if (best < 0) return accept(assign);
    for (int val : dom[best]) {
      assign[best] = val;
      auto next = dom;
      next[best] = {val};
      if (propagate(best, next) && run(std::move(next))) return true;
      assign[best] = -1;
    }
    assign[best] = -1;
    return false;
  }
};

}  // namespace

CspStatus solve_csp(const Csp& csp, std::uint64_t node_budget,
                    const std::function<bool(const std::vector<int>&)>& accept) {
  CspRun run(csp, node_budget, accept);
  auto dom = csp.domains;
  // Unary constraints first.
  for (const auto& c : csp.constraints) {
    std::vector<int> vs = c.vars;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.size() != 1) continue;
    std::vector<int> keep;
    for (int val : dom[vs[0]]) {
      run.assign[vs[0]] = val;
      if (c.ok(run.assign)) keep.push_back(val);
    }
    run.assign[vs[0]] = -1;
    dom[vs[0]] = std::move(keep);
  }
  for (const auto& d : dom)
    if (d.empty()) return CspStatus::Exhausted;
  bool done = run.run(std::move(dom));
  if (run.budget_hit) return CspStatus::Budget;
  return done ? CspStatus::Found : CspStatus::Exhausted;
}

// ---------------------------------------------------------------- helpers

ShiftPtr intersection_shift(const Shift& y, const Shift& z) {
  if (!(y.alphabet() == z.alphabet())) throw ValidationError("intersection: alphabets differ");
  const auto& a = y.cover();
  const auto& b = z.cover();
  LabeledGraph g;
  g.n = a.n * b.n;
  g.k = y.k();
  for (int p = 0; p < a.n; ++p)
    for (int q = 0; q < b.n; ++q)
      for (int c = 0; c < y.k(); ++c) {
        int tp = a.next(p, c), tq = b.next(q, c);
        if (tp >= 0 && tq >= 0) g.edges.push_back({p * b.n + q, tp * b.n + tq, c});
      }
  return Shift::from_graph(y.alphabet(), std::move(g));
}

namespace {

Verdict open_cell(std::string what) { return Verdict::undecided(what + ": no known characterization in this category"); }

Verdict bijectivity(const BlockMap& f) {
  auto fam = injectivity_family(f);
  if (!fam.injective) return Verdict::no("not injective").with_witness(fam.witness);
  if (auto w = surjectivity_witness(f))
    return Verdict::no("not surjective").with_witness(json{{"word", f.target()->alphabet().render(*w)}});
  return Verdict::yes("bijective");
}

std::optional<Word> off_diagonal_periodic(const Shift& c, const SubshiftRelation& ker) {
  for (int n = 1; n <= 2 * c.cover().n + 2; ++n)
    for (const auto& w : c.words(n)) {
      bool off = false;
      for (int s : w) off = off || ker.first(s) != ker.second(s);
      if (off && c.contains_periodic(w)) return w;
    }
  return std::nullopt;
}

bool cofinite(const PeriodSet& p) { return static_cast<int>(p.residues().size()) == p.period(); }

}  // namespace

// ---------------------------------------------------------------- epic / monic

Verdict is_epic(const BlockMap& f, CategoryTag cat) {
  require_morphism(f, cat);
  if (auto w = surjectivity_witness(f))
    return Verdict::no("not surjective").with_witness(json{{"word", f.target()->alphabet().render(*w)}});
  return Verdict::yes("surjective");
}

Verdict is_monic(const BlockMap& f, CategoryTag cat) {
  require_morphism(f, cat);
  auto fam = injectivity_family(f);
  const int lv = cat.level;
  const Restriction R = cat.restriction;
  if (R == Restriction::P && lv <= 2) {
    auto v = is_preinjective(f);
    v.note = v.is_yes() ? "preinjective" : "not preinjective";
    return v;
  }
  if (R == Restriction::P) {
    auto v = is_preinjective(f);
    if (v.is_yes()) return Verdict::yes("preinjective");
    if (fam.injective_on_periodic) return Verdict::yes("injective on periodic points");
    return Verdict::undecided("neither preinjective nor injective on periodic points").with_witness(v.witness);
  }
  if (lv == 1) {
    if (fam.injective) return Verdict::yes("injective");
    if (R == Restriction::M && !fam.injective_on_uniform)
      return Verdict::no("not injective on uniform points").with_witness(fam.witness);
    auto v = is_preinjective(f);
    if (v.is_no()) return Verdict::no("not preinjective").with_witness(v.witness);
    return open_cell("monic").with_witness(fam.witness);
  }
  if (R == Restriction::K || (R == Restriction::T && lv == 2)) {
    if (fam.injective) return Verdict::yes("injective");
    return Verdict::no("not injective").with_witness(fam.witness);
  }
  if (R == Restriction::T) {
    if (fam.injective_on_periodic) return Verdict::yes("injective on periodic points");
    return Verdict::no("not injective on periodic points").with_witness(fam.witness);
  }
  // M2, M3.
  if (fam.injective) return Verdict::yes("injective");
  if (!fam.injective_on_uniform) return Verdict::no("not injective on uniform points").with_witness(fam.witness);
  auto ker = kernel_set(f);
  auto delta = diagonal(f.source()).relation;
  bool open = false;
  for (const auto& c : constituents(*ker.relation)) {
    if (is_mixing(*c)) {
      if (!same_language(*c, *delta)) {
        json wit{{"constituent_symbols", c->words(1).size()}};
        if (auto w = off_diagonal_periodic(*c, ker)) {
          Word a(w->size()), b(w->size());
          for (std::size_t i = 0; i < w->size(); ++i) {
            a[i] = ker.first((*w)[i]);
            b[i] = ker.second((*w)[i]);
          }
          wit["x"] = f.source()->alphabet().render(a);
          wit["y"] = f.source()->alphabet().render(b);
        }
        return Verdict::no("kernel has a mixing constituent other than the diagonal").with_witness(wit);
      }
    } else if (lv == 3 && cofinite(periods(*c))) {
      open = true;
    }
  }
  if (open) return Verdict::undecided("a non-mixing kernel constituent with cofinite periods may hold a mixing subshift");
  return Verdict::yes("the diagonal is the only mixing part of the kernel");
}

// ---------------------------------------------------------------- strong condition

std::vector<Word> periodic_preimages(const BlockMap& f, const Word& u) {
  std::vector<Word> out;
  const Shift& x = *f.source();
  for (const auto& a : x.words(static_cast<int>(u.size()))) {
    if (!x.contains_periodic(a)) continue;
    if (f.apply(PeriodicPoint{a, 0}).word == u) out.push_back(a);
  }
  return out;
}

namespace {

struct SCGraph {
  WindowGraph wg;
  std::vector<int> phi;   // image symbol per edge
  std::vector<int> last;  // last source symbol per edge
  std::vector<std::vector<int>> out;
  int r = 0;
};

SCGraph sc_graph(const BlockMap& f) {
  SCGraph g;
  g.r = f.radius();
  g.wg = window_graph(*f.source(), f.window());
  const int kx = f.source()->k();
  g.out.assign(g.wg.graph.n, {});
  for (int i = 0; i < static_cast<int>(g.wg.graph.edges.size()); ++i) {
    const auto& e = g.wg.graph.edges[i];
    g.phi.push_back(f.rule()[e.label]);
    g.last.push_back(static_cast<int>(g.wg.windows.code(e.label) % static_cast<std::uint64_t>(kx)));
    g.out[e.from].push_back(i);
  }
  return g;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

// Window-graph nodes where a left-infinite preimage of ∞u ending at time r can
// stand, its tail being the a-periodic point with phase 0.
std::vector<char> left_set(const SCGraph& g, const Word& u, const Word& a) {
  const int p = static_cast<int>(u.size());
  const int n = g.wg.graph.n;
  const int N = n * p;
  std::vector<std::vector<int>> free_adj(N), a_adj(N);
  for (int q = 0; q < n; ++q)
    for (int c = 0; c < p; ++c)
      for (int e : g.out[q]) {
        if (g.phi[e] != u[mod(c - g.r, p)]) continue;
        int to = g.wg.graph.edges[e].to * p + (c + 1) % p;
        free_adj[q * p + c].push_back(to);
        if (g.last[e] == a[c]) a_adj[q * p + c].push_back(to);
      }
  auto scc = strongly_connected(a_adj);
  std::vector<int> src;
  for (int v = 0; v < N; ++v)
    if (scc.cyclic[scc.comp[v]]) src.push_back(v);
  auto reach = reachable(free_adj, src);
  std::vector<char> s(n, 0);
  for (int q = 0; q < n; ++q) s[q] = reach[q * p + mod(g.r, p)];
  return s;
}

// Nodes from which a right-infinite preimage of v∞ can start at time r + |w|,
// its tail being the b-periodic point aligned at |w|.
std::vector<char> right_set(const SCGraph& g, const Word& v, const Word& b) {
  const int p = static_cast<int>(v.size());
  const int n = g.wg.graph.n;
  const int N = n * p;
  std::vector<std::vector<int>> free_rev(N), b_adj(N), b_rev(N);
  for (int q = 0; q < n; ++q)
    for (int t = 0; t < p; ++t)
      for (int e : g.out[q]) {
        if (g.phi[e] != v[t]) continue;
        int to = g.wg.graph.edges[e].to * p + (t + 1) % p;
        free_rev[to].push_back(q * p + t);
        if (g.last[e] == b[mod(t + g.r, p)]) {
          b_adj[q * p + t].push_back(to);
          b_rev[to].push_back(q * p + t);
        }
      }
  auto scc = strongly_connected(b_adj);
  std::vector<int> src;
  for (int x = 0; x < N; ++x)
    if (scc.cyclic[scc.comp[x]]) src.push_back(x);
  auto t0 = reachable(b_rev, src);
  std::vector<int> t0v;
  for (int x = 0; x < N; ++x)
    if (t0[x]) t0v.push_back(x);
  auto t1 = reachable(free_rev, t0v);
  std::vector<char> t(n, 0);
  for (int q = 0; q < n; ++q) t[q] = t1[q * p];
  return t;
}

// Joint exploration of Y's cover from the left-periodic states of u and the
// preimage subsets reached from S(u, a).
struct Exploration {
  std::vector<int> ystate;
  std::vector<int> subset;  // id into subsets
  std::vector<int> parent;
  std::vector<int> letter;
  std::vector<std::vector<int>> subsets;  // sorted node lists
};

Exploration explore(const SCGraph& g, const Shift& y, const Word& u, const std::vector<char>& S, std::size_t budget) {
  Exploration ex;
  const auto& cover = y.cover();
  const int ky = y.k();
  std::map<std::vector<int>, int> sid;
  std::map<std::pair<int, int>, int> seen;
  auto subset_id = [&](std::vector<int> s) {
    auto it = sid.find(s);
    if (it != sid.end()) return it->second;
    int id = static_cast<int>(ex.subsets.size());
    sid.emplace(s, id);
    ex.subsets.push_back(std::move(s));
    return id;
  };
  std::vector<int> s0;
  for (int q = 0; q < static_cast<int>(S.size()); ++q)
    if (S[q]) s0.push_back(q);
  int id0 = subset_id(s0);
  auto lp = y.left_periodic_states(u);
  std::deque<int> queue;
  for (int q = 0; q < cover.n; ++q) {
    if (!lp[q]) continue;
    seen.emplace(std::make_pair(q, id0), static_cast<int>(ex.ystate.size()));
    ex.ystate.push_back(q);
    ex.subset.push_back(id0);
    ex.parent.push_back(-1);
    ex.letter.push_back(-1);
    queue.push_back(static_cast<int>(ex.ystate.size()) - 1);
  }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int c = 0; c < ky; ++c) {
      int yn = cover.next(ex.ystate[i], c);
      if (yn < 0) continue;
      std::vector<int> nx;
      for (int q : ex.subsets[ex.subset[i]])
        for (int e : g.out[q])
          if (g.phi[e] == c) nx.push_back(g.wg.graph.edges[e].to);
      std::sort(nx.begin(), nx.end());
      nx.erase(std::unique(nx.begin(), nx.end()), nx.end());
      int id = subset_id(std::move(nx));
      if (seen.count({yn, id})) continue;
      if (ex.ystate.size() >= budget) throw BudgetExceeded("strong condition exploration exceeded its state budget");
      seen.emplace(std::make_pair(yn, id), static_cast<int>(ex.ystate.size()));
      ex.ystate.push_back(yn);
      ex.subset.push_back(id);
      ex.parent.push_back(i);
      ex.letter.push_back(c);
      queue.push_back(static_cast<int>(ex.ystate.size()) - 1);
    }
  }
  return ex;
}

// Shortest w with ∞u.wv∞ in Y and no preimage of the required form, if any.
std::optional<Word> failing_word(const Exploration& ex, const std::vector<char>& rp, const std::vector<char>& T) {
  for (int i = 0; i < static_cast<int>(ex.ystate.size()); ++i) {
    if (!rp[ex.ystate[i]]) continue;
    bool hit = false;
    for (int q : ex.subsets[ex.subset[i]])
      if (T[q]) {
        hit = true;
        break;
      }
    if (hit) continue;
    Word w;
    for (int j = i; ex.parent[j] >= 0; j = ex.parent[j]) w.push_back(ex.letter[j]);
    std::reverse(w.begin(), w.end());
    return w;
  }
  return std::nullopt;
}

}  // namespace

StrongConditionReport strong_condition(const BlockMap& f, int p, const ClassifyCaps& caps) {
  StrongConditionReport rep;
  rep.p = p;
  const Shift& y = *f.target();
  const Alphabet& ax = f.source()->alphabet();
  const Alphabet& ay = y.alphabet();
  std::vector<Word> vars;
  for (int n = 1; n <= p; ++n)
    for (const auto& u : y.words(n))
      if (y.contains_periodic(u)) vars.push_back(u);
  if (vars.empty()) {
    rep.answer = Answer::Yes;
    rep.note = "no periodic points up to this period";
    return rep;
  }
  std::vector<std::vector<Word>> dom;
  for (const auto& u : vars) dom.push_back(periodic_preimages(f, u));
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (dom[i].empty()) {
      rep.answer = Answer::No;
      rep.note = "a periodic point has no preimage of the same period";
      rep.witness = json{{"p", p}, {"u", ay.render(vars[i])}, {"candidates", json::array()}};
      return rep;
    }
  }
  SCGraph g = sc_graph(f);
  // Candidate numbering.
  std::vector<std::pair<int, int>> cand;  // (var, value)
  std::vector<std::vector<int>> cid(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = 0; j < dom[i].size(); ++j) {
      cid[i].push_back(static_cast<int>(cand.size()));
      cand.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  const int C = static_cast<int>(cand.size());
  std::vector<std::vector<char>> rsets(C);
  std::vector<std::vector<char>> rps(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) rps[i] = y.right_periodic_states(vars[i]);
  for (int c = 0; c < C; ++c) rsets[c] = right_set(g, vars[cand[c].first], dom[cand[c].first][cand[c].second]);
  // fail[c1][c2]: shortest failing w for G(u) = a (c1), G(v) = b (c2).
  std::vector<std::vector<std::optional<Word>>> fail(C, std::vector<std::optional<Word>>(C));
  try {
    for (int c1 = 0; c1 < C; ++c1) {
      const Word& u = vars[cand[c1].first];
      const Word& a = dom[cand[c1].first][cand[c1].second];
      auto ex = explore(g, y, u, left_set(g, u, a), caps.state_budget);
      for (int c2 = 0; c2 < C; ++c2) fail[c1][c2] = failing_word(ex, rps[cand[c2].first], rsets[c2]);
    }
  } catch (const BudgetExceeded& e) {
    rep.answer = Answer::Undecided;
    rep.note = e.what();
    return rep;
  }
  auto ok = [&](int c1, int c2) { return !fail[c1][c2] && !fail[c2][c1]; };
  auto reason = [&](int c1, int c2) {
    bool fwd = fail[c1][c2].has_value();
    int l = fwd ? c1 : c2, r = fwd ? c2 : c1;
    return json{{"u", ay.render(vars[cand[l].first])},
                {"a", ax.render(dom[cand[l].first][cand[l].second])},
                {"v", ay.render(vars[cand[r].first])},
                {"b", ax.render(dom[cand[r].first][cand[r].second])},
                {"w", ay.render(*fail[l][r])}};
  };
  // Unary and arc consistency with recorded reasons.
  const int V = static_cast<int>(vars.size());
  std::vector<std::vector<int>> live(V);
  std::vector<json> why(C);
  for (int i = 0; i < V; ++i)
    for (int c : cid[i]) {
      if (fail[c][c])
        why[c] = reason(c, c);
      else
        live[i].push_back(c);
    }
  auto wiped = [&](int i) -> StrongConditionReport {
    rep.answer = Answer::No;
    rep.note = "no admissible preimage choice for u";
    json cands = json::array();
    for (int c : cid[i]) cands.push_back(why[c]);
    rep.witness = json{{"p", p}, {"u", ay.render(vars[i])}, {"candidates", cands}};
    return rep;
  };
  for (int i = 0; i < V; ++i)
    if (live[i].empty()) return wiped(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j) {
        if (i == j) continue;
        std::vector<int> keep;
        for (int c : live[i]) {
          bool sup = false;
          for (int d : live[j])
            if (ok(c, d)) {
              sup = true;
              break;
            }
          if (sup) {
            keep.push_back(c);
            continue;
          }
          json fails = json::array();
          for (int d : live[j]) fails.push_back(reason(c, d));
          why[c] = json{{"a", ax.render(dom[i][cand[c].second])}, {"against", ay.render(vars[j])}, {"failures", fails}};
          changed = true;
        }
        live[i] = std::move(keep);
        if (live[i].empty()) return wiped(i);
      }
  }
  Csp csp;
  for (int i = 0; i < V; ++i) csp.domains.push_back(live[i]);
  for (int i = 0; i < V; ++i)
    for (int j = i + 1; j < V; ++j)
      csp.constraints.push_back({{i, j}, [&, i, j](const std::vector<int>& as) { return ok(as[i], as[j]); }});
  std::vector<int> solution;
  auto st = solve_csp(csp, caps.node_budget, [&](const std::vector<int>& as) {
    solution = as;
    return true;
  });
  if (st == CspStatus::Budget) {
    rep.answer = Answer::Undecided;
    rep.note = "preimage choice search exceeded its budget";
    return rep;
  }
  if (st == CspStatus::Exhausted) {
    rep.answer = Answer::No;
    rep.note = "no consistent preimage choice";
    rep.witness = json{{"p", p}};
    return rep;
  }
  rep.answer = Answer::Yes;
  for (int i = 0; i < V; ++i) rep.G.push_back({vars[i], dom[i][cand[solution[i]].second]});
  return rep;
}

// ---------------------------------------------------------------- sections and retractions

namespace {

int sft_window(const Shift& x) {
  auto v = is_sft(x);
  return v.is_yes() ? v.certificate.value("window", 1) : 0;
}

// Adds constraints keeping images of Y-words of length 2s + w inside B(X).
void add_validity(Csp& csp, const Shift& y, const Shift& x, int s, int w, const WordIndex& vars) {
  if (w <= 1) return;
  for (const auto& z : y.words(2 * s + w)) {
    std::vector<int> vs;
    for (int j = 0; j < w; ++j) vs.push_back(vars.find(z.data() + j));
    csp.constraints.push_back({vs, [&x, vs](const std::vector<int>& as) {
                                 Word img;
                                 for (int v : vs) img.push_back(as[v]);
                                 return x.contains_word(img);
                               }});
  }
}

// Global checks run on complete assignments only; this caps how many.
constexpr int kLeafBudget = 4096;

// Local window for the validity constraints. Sofic sources get a few symbols
// more than the rule needs so that most invalid tables die inside the search.
int validity_window(const Shift& x, int r) {
  int w = sft_window(x);
  if (w > 0) return w;
  return std::max(2 * r + 1, 4);
}

}  // namespace

std::optional<BlockMap> find_section(const BlockMap& f, int s, bool pointed, std::uint64_t node_budget) {
  const ShiftPtr& x = f.source();
  const ShiftPtr& y = f.target();
  const int r = f.radius();
  auto vars = block_index(*y, 2 * s + 1);
  Csp csp;
  std::vector<int> all(x->k());
  std::iota(all.begin(), all.end(), 0);
  csp.domains.assign(vars.size(), all);
  if (pointed) {
    if (!x->point() || !y->point()) throw ValidationError("pointed section needs designated points");
    int v = vars.find(Word(2 * s + 1, *y->point()));
    csp.domains[v] = {*x->point()};
  }
  for (const auto& z : y->words(2 * s + 2 * r + 1)) {
    std::vector<int> vs;
    for (int j = 0; j <= 2 * r; ++j) vs.push_back(vars.find(z.data() + j));
    const int center = z[s + r];
    csp.constraints.push_back({vs, [&f, vs, center](const std::vector<int>& as) {
                                 Word img;
                                 for (int v : vs) img.push_back(as[v]);
                                 return f.local(img) == center;
                               }});
  }
  add_validity(csp, *y, *x, s, validity_window(*x, r), vars);
  std::optional<BlockMap> found;
  auto id = BlockMap::identity(y);
  int leaves = 0;
  solve_csp(csp, node_budget, [&](const std::vector<int>& as) {
    if (++leaves > kLeafBudget) return true;
    BlockMap g(y, x, s, as);
    try {
      validate(g, pointed);
    } catch (const ValidationError&) {
      return false;
    }
    if (!maps_equal(compose(f, g), id)) return false;
    found = g;
    return true;
  });
  return found;
}

std::optional<BlockMap> find_retraction(const BlockMap& f, int s, bool pointed, std::uint64_t node_budget) {
  const ShiftPtr& x = f.source();
  const ShiftPtr& y = f.target();
  const int r = f.radius();
  auto vars = block_index(*y, 2 * s + 1);
  Csp csp;
  std::vector<int> all(x->k());
  std::iota(all.begin(), all.end(), 0);
  csp.domains.assign(vars.size(), all);
  auto restrict = [&](int v, int val) {
    auto& d = csp.domains[v];
    if (std::find(d.begin(), d.end(), val) == d.end()) return false;
    d = {val};
    return true;
  };
  if (pointed) {
    if (!x->point() || !y->point()) throw ValidationError("pointed retraction needs designated points");
    restrict(vars.find(Word(2 * s + 1, *y->point())), *x->point());
  }
  for (const auto& z : x->words(2 * s + 2 * r + 1)) {
    int v = vars.find(f.apply(z));
    if (!restrict(v, z[s + r])) return std::nullopt;
  }
  add_validity(csp, *y, *x, s, validity_window(*x, 0), vars);
  std::optional<BlockMap> found;
  auto id = BlockMap::identity(x);
  int leaves = 0;
  solve_csp(csp, node_budget, [&](const std::vector<int>& as) {
    if (++leaves > kLeafBudget) return true;
    BlockMap h(y, x, s, as);
    try {
      validate(h, pointed);
    } catch (const ValidationError&) {
      return false;
    }
    if (!maps_equal(compose(h, f), id)) return false;
    found = h;
    return true;
  });
  return found;
}

// ---------------------------------------------------------------- split / regular

Verdict is_split_epic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps) {
  require_morphism(f, cat);
  if (cat.level == 1 && cat.restriction != Restriction::K) {
    auto v = bijectivity(f);
    if (v.is_yes()) {
      v.note = "bijective";
    }
    return v;
  }
  if (auto w = surjectivity_witness(f))
    return Verdict::no("not surjective").with_witness(json{{"word", f.target()->alphabet().render(*w)}});
  for (int p = 1; p <= caps.p_cap; ++p) {
    auto rep = strong_condition(f, p, caps);
    if (rep.answer == Answer::No) return Verdict::no("strong periodic point condition fails").with_witness(rep.witness);
  }
  for (int s = 0; s <= caps.radius_cap; ++s) {
    if (auto g = find_section(f, s, cat.pointed(), caps.node_budget)) {
      Verdict v = Verdict::yes("section found");
      v.with_certificate(json{{"section_radius", g->radius()}});
      v.certificate_map = *g;
      return v;
    }
  }
  return Verdict::undecided("strong condition holds up to p_cap and no section up to radius_cap")
      .with_bound(json{{"p_cap", caps.p_cap}, {"radius_cap", caps.radius_cap}});
}

Verdict is_split_monic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps) {
  require_morphism(f, cat);
  if (cat.level == 1 && cat.restriction != Restriction::K) return bijectivity(f);
  auto fam = injectivity_family(f);
  if (!fam.injective) return Verdict::no("not injective").with_witness(fam.witness);
  // A retraction maps Y to X, so every period of Y must be a period of X.
  auto per = periods_included(*f.target(), *f.source());
  if (per.is_no()) return Verdict::no("a period of the target is missing from the source").with_witness(per.witness);
  const bool exact = cat.level == 2 && cat.mixing();
  for (int s = 0; s <= caps.radius_cap; ++s) {
    if (auto h = find_retraction(f, s, cat.pointed(), caps.node_budget)) {
      Verdict v = Verdict::yes("retraction found");
      v.with_certificate(json{{"retraction_radius", h->radius()}});
      v.certificate_map = *h;
      return v;
    }
  }
  if (exact) return Verdict::yes("injective with matching periods").with_bound(json{{"retraction_radius_cap", caps.radius_cap}});
  return Verdict::undecided("no retraction up to radius_cap").with_bound(json{{"radius_cap", caps.radius_cap}});
}

namespace {

// f coequalizes ID and a symbol permutation h, with Ker f the h-orbit relation.
std::optional<json> permutation_coequalizer(const BlockMap& f) {
  const ShiftPtr& x = f.source();
  const int k = x->k();
  if (k > 6) return std::nullopt;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  auto kf = kernel_set(f).relation;
  auto id = BlockMap::identity(x);
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto h = BlockMap::from_function(x, x, 0, [&](const Word& w) { return perm[w[0]]; });
    if (!is_subshift(*image(h), *x)) continue;
    if (!maps_equal(compose(f, h), f)) continue;
    int p = 1;
    for (BlockMap q = h; !maps_equal(q, id); q = compose(h, q)) ++p;
    auto rel = fiber_product(id, id).relation;
    BlockMap hj = id;
    for (int j = 1; j < p; ++j) {
      hj = compose(h, hj);
      rel = union_shift(*rel, *fiber_product(hj, id).relation);
    }
    if (!same_language(*rel, *kf)) continue;
    json tokens = json::array();
    for (int a = 0; a < k; ++a) tokens.push_back(x->alphabet().token(perm[a]));
    return json{{"permutation", tokens}, {"order", p}};
  }
  return std::nullopt;
}

}  // namespace

Verdict is_regular_epic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps) {
  (void)caps;
  require_morphism(f, cat);
  if (cat.restriction == Restriction::P && cat.level == 1) return bijectivity(f);
  auto w = surjectivity_witness(f);
  if (w) return Verdict::no("not surjective").with_witness(json{{"word", f.target()->alphabet().render(*w)}});
  if (cat.restriction == Restriction::K && cat.level >= 2) return Verdict::yes("surjective");
  if (injectivity_family(f).injective) return Verdict::yes("bijective");
  if (auto c = permutation_coequalizer(f))
    return Verdict::yes("coequalizer of the identity and a symbol permutation").with_certificate(*c);
  return open_cell("regular epic");
}

Verdict is_regular_monic(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps) {
  require_morphism(f, cat);
  const int lv = cat.level;
  if (lv == 1 && cat.restriction != Restriction::K) return bijectivity(f);
  auto fam = injectivity_family(f);
  if (lv == 1) {
    if (fam.injective && is_surjective(f)) return Verdict::yes("bijective");
    auto pre = is_preinjective(f);
    if (pre.is_no()) return Verdict::no("not preinjective").with_witness(pre.witness);
    return open_cell("regular monic");
  }
  if (!fam.injective) return Verdict::no("not injective").with_witness(fam.witness);
  auto img = image(f);
  const Shift& y = *f.target();
  const bool y_sft = is_sft(y).is_yes();
  auto img_sft = is_sft(*img);
  if (lv == 2 || cat.restriction == Restriction::K) {
    if (img_sft.is_yes()) return Verdict::yes("injective with image of finite type");
    for (int m = 1; m <= caps.window_cap; ++m) {
      auto z = intersection_shift(y, *sft_approximation(*img, m));
      if (same_language(*z, *img))
        return Verdict::yes("injective with image a subSFT").with_certificate(json{{"window", m}});
    }
    if (y_sft) return Verdict::no("image is not a subSFT").with_witness(img_sft.witness);
    return Verdict::undecided("no subSFT window found").with_bound(json{{"window_cap", caps.window_cap}});
  }
  // (T/M/P)3.
  if (y_sft) {
    if (img_sft.is_yes()) return Verdict::yes("injective with image of finite type");
    return Verdict::no("image is a proper sofic subshift of an SFT").with_witness(img_sft.witness);
  }
  if (img_sft.is_yes()) return Verdict::yes("injective with image of finite type");
  for (int m = 1; m <= caps.window_cap; ++m) {
    auto z = intersection_shift(y, *sft_approximation(*img, m));
    auto cs = constituents(*z);
    bool good = true;
    if (cat.restriction == Restriction::T) {
      good = cs.size() == 1 && same_language(*cs[0], *img);
    } else {
      int hits = 0;
      for (const auto& c : cs) {
        if (is_mixing(*c)) {
          if (same_language(*c, *img))
            ++hits;
          else
            good = false;
        } else if (cofinite(periods(*c))) {
          good = false;
        }
      }
      good = good && hits == 1;
    }
    if (good) return Verdict::yes("image is the unique maximal part of a subSFT").with_certificate(json{{"window", m}});
  }
  return Verdict::undecided("no subSFT window found").with_bound(json{{"window_cap", caps.window_cap}});
}

json classify(const BlockMap& f, CategoryTag cat, const ClassifyCaps& caps) {
  require_morphism(f, cat);
  auto fam = injectivity_family(f);
  json row;
  row["category"] = cat.name();
  row["surjective"] = is_surjective(f);
  row["injective"] = fam.injective;
  row["injective_on_periodic"] = fam.injective_on_periodic;
  row["injective_on_uniform"] = fam.injective_on_uniform;
  row["preinjective"] = to_json(is_preinjective(f));
  row["peric"] = to_json(is_peric(f));
  row["epic"] = to_json(is_epic(f, cat));
  row["monic"] = to_json(is_monic(f, cat));
  row["split_epic"] = to_json(is_split_epic(f, cat, caps));
  row["split_monic"] = to_json(is_split_monic(f, cat, caps));
  row["regular_epic"] = to_json(is_regular_epic(f, cat, caps));
  row["regular_monic"] = to_json(is_regular_monic(f, cat, caps));
  return row;
}

Verdict exists_morphism(const Shift& z, const Shift& y) {
  if (z.is_empty()) return Verdict::yes("empty source");
  auto per = periods_included(z, y);
  if (per.is_no()) return Verdict::no("a period of the source is missing from the target").with_witness(per.witness);
  if (y.is_empty()) return Verdict::no("empty target");
  if (is_mixing(y) && is_sft(y).is_yes()) return Verdict::yes("target is a mixing SFT and periods match");
  return Verdict::undecided("periods match but the target is not a mixing SFT");
}

}  // namespace sdcat
