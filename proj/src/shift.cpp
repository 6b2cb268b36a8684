#include "sdcat/shift.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "sdcat/errors.hpp"

namespace sdcat {

int PeriodicPoint::at(long i) const {
  const long n = static_cast<long>(word.size());
  long j = ((i + phase) % n + n) % n;
  return word[static_cast<std::size_t>(j)];
}

Word PeriodicPoint::aligned() const {
  Word w(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) w[i] = at(static_cast<long>(i));
  return w;
}

PeriodicPoint PeriodicPoint::shifted(int by) const {
  const int n = static_cast<int>(word.size());
  return {word, ((phase + by) % n + n) % n};
}

bool PeriodicPoint::operator==(const PeriodicPoint& o) const {
  const long n = static_cast<long>(word.size()), m = static_cast<long>(o.word.size());
  const long l = std::lcm(n, m);
  for (long i = 0; i < l; ++i)
    if (at(i) != o.at(i)) return false;
  return true;
}

namespace {

LabeledGraph avoidance_automaton(int k, const std::vector<Word>& forbidden, std::vector<std::string>* names,
                                 const Alphabet& alpha) {
  // Aho-Corasick automaton over the forbidden words; states carrying a forbidden suffix are removed.
  std::vector<std::vector<int>> go(1, std::vector<int>(k, -1));
  std::vector<char> bad(1, 0);
  std::vector<Word> label(1);
  for (const auto& w : forbidden) {
    if (w.empty()) throw ValidationError("the empty word cannot be forbidden");
    int s = 0;
    for (int a : w) {
      if (a < 0 || a >= k) throw ValidationError("forbidden word uses a symbol outside the alphabet");
      if (go[s][a] < 0) {
        go[s][a] = static_cast<int>(go.size());
        go.emplace_back(k, -1);
        bad.push_back(0);
        label.push_back(concat(label[s], Word{a}));
      }
      s = go[s][a];
    }
    bad[s] = 1;
  }
  std::vector<int> fail(go.size(), 0);
  std::deque<int> q;
  for (int a = 0; a < k; ++a) {
    if (go[0][a] < 0) {
      go[0][a] = 0;
    } else {
      fail[go[0][a]] = 0;
      q.push_back(go[0][a]);
    }
  }
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    bad[s] = bad[s] || bad[fail[s]];
    for (int a = 0; a < k; ++a) {
      int t = go[s][a];
      if (t < 0) {
        go[s][a] = go[fail[s]][a];
      } else {
        fail[t] = go[fail[s]][a];
        q.push_back(t);
      }
    }
  }
  LabeledGraph g;
  g.k = k;
  std::vector<int> id(go.size(), -1);
  for (std::size_t s = 0; s < go.size(); ++s)
    if (!bad[s]) {
      id[s] = g.n++;
      if (names) names->push_back(label[s].empty() ? std::string("e") : "p" + alpha.render(label[s]));
    }
  for (std::size_t s = 0; s < go.size(); ++s)
    if (!bad[s])
      for (int a = 0; a < k; ++a)
        if (!bad[go[s][a]]) g.edges.push_back({id[s], id[go[s][a]], a});
  return g;
}

}  // namespace

void Shift::build() {
  for (const auto& e : raw_.edges) {
    if (e.label < 0 || e.label >= k()) throw ValidationError("graph edge label outside the alphabet");
    if (e.from < 0 || e.from >= raw_.n || e.to < 0 || e.to >= raw_.n)
      throw ValidationError("graph edge endpoint out of range");
  }
  raw_.k = k();
  LabeledGraph g = essential_trim(raw_);
  Nfa nfa;
  nfa.k = k();
  for (int v = 0; v < g.n; ++v) nfa.add_state(true);
  int s0 = nfa.add_state(true);
  for (int v = 0; v < g.n; ++v) nfa.add_edge(s0, -1, v);
  for (const auto& e : g.edges) nfa.add_edge(e.from, e.label, e.to);
  nfa.initial = {s0};
  lang_ = determinize_minimize(nfa);

  std::vector<std::vector<int>> adj(lang_.n);
  for (int q = 0; q < lang_.n; ++q)
    for (int a = 0; a < k(); ++a)
      if (lang_.next(q, a) >= 0) adj[q].push_back(lang_.next(q, a));
  auto ess = essential_vertices(adj);
  std::vector<int> map(lang_.n, -1);
  cover_ = DGraph{};
  cover_.k = k();
  cover_to_lang_.clear();
  for (int q = 0; q < lang_.n; ++q)
    if (ess[q]) {
      map[q] = cover_.n++;
      cover_to_lang_.push_back(q);
    }
  cover_.delta.assign(static_cast<std::size_t>(cover_.n) * k(), -1);
  for (int q = 0; q < lang_.n; ++q)
    if (ess[q])
      for (int a = 0; a < k(); ++a) {
        int t = lang_.next(q, a);
        cover_.delta[static_cast<std::size_t>(map[q]) * k() + a] = t >= 0 ? map[t] : -1;
      }
  if (point_) {
    if (*point_ < 0 || *point_ >= k()) throw ValidationError("designated point symbol outside the alphabet");
    if (!contains_periodic(Word{*point_}))
      throw ValidationError("designated uniform point " + alpha_.token(*point_) + " is not in the shift");
  }
}

ShiftPtr Shift::from_forbidden(Alphabet alpha, std::vector<Word> forbidden, std::optional<int> point) {
  std::shared_ptr<Shift> s(new Shift());
  s->alpha_ = std::move(alpha);
  s->kind_ = ShiftKind::Forbidden;
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  s->forbidden_ = std::move(forbidden);
  s->raw_ = avoidance_automaton(s->k(), s->forbidden_, &s->node_names_, s->alpha_);
  s->point_ = point;
  s->build();
  return s;
}

ShiftPtr Shift::from_graph(Alphabet alpha, LabeledGraph g, std::vector<std::string> node_names,
                           std::optional<int> point) {
  std::shared_ptr<Shift> s(new Shift());
  s->alpha_ = std::move(alpha);
  s->kind_ = ShiftKind::Graph;
  s->raw_ = std::move(g);
  if (node_names.empty())
    for (int v = 0; v < s->raw_.n; ++v) node_names.push_back("q" + std::to_string(v));
  if (static_cast<int>(node_names.size()) != s->raw_.n) throw ValidationError("node name count mismatch");
  s->node_names_ = std::move(node_names);
  s->point_ = point;
  s->build();
  return s;
}

ShiftPtr Shift::from_allowed(Alphabet alpha, int m, const std::vector<Word>& allowed, std::optional<int> point) {
  if (m < 1) throw ValidationError("allowed-block length must be positive");
  std::map<Word, int> ids;
  std::vector<std::string> names;
  LabeledGraph g;
  g.k = alpha.size();
  auto node = [&](const Word& w) {
    auto [it, ins] = ids.emplace(w, g.n);
    if (ins) {
      ++g.n;
      names.push_back(w.empty() ? std::string("e") : "b" + alpha.render(w));
    }
    return it->second;
  };
  for (const auto& w : allowed) {
    if (static_cast<int>(w.size()) != m) throw ValidationError("allowed block of wrong length");
    for (int a : w)
      if (a < 0 || a >= alpha.size()) throw ValidationError("allowed block uses a symbol outside the alphabet");
    int from = node(subword(w, 0, m - 1));
    int to = node(subword(w, 1, m - 1));
    g.edges.push_back({from, to, w.back()});
  }
  return from_graph(std::move(alpha), std::move(g), std::move(names), point);
}

ShiftPtr Shift::from_regex(Alphabet alpha, std::string_view re, std::optional<int> point) {
  Nfa a = regex_nfa(re, alpha);
  const int n = a.size();
  // Epsilon elimination: p -a-> q whenever p ->eps* p' -a-> q.
  LabeledGraph g;
  g.n = n;
  g.k = alpha.size();
  std::vector<std::vector<int>> eps(n);
  for (int p = 0; p < n; ++p)
    for (auto [lab, to] : a.out[p])
      if (lab < 0) eps[p].push_back(to);
  for (int p = 0; p < n; ++p) {
    auto cl = reachable(eps, {p});
    for (int p2 = 0; p2 < n; ++p2)
      if (cl[p2])
        for (auto [lab, to] : a.out[p2])
          if (lab >= 0) g.edges.push_back({p, to, lab});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.from, x.to, x.label) < std::tie(y.from, y.to, y.label);
  });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return from_graph(std::move(alpha), std::move(g), {}, point);
}

ShiftPtr Shift::from_cover(Alphabet alpha, const DGraph& g, std::optional<int> point) {
  return from_graph(std::move(alpha), g.as_graph(), {}, point);
}

ShiftPtr Shift::full(Alphabet alpha, std::optional<int> point) { return from_forbidden(std::move(alpha), {}, point); }

ShiftPtr Shift::trivial() { return from_forbidden(Alphabet({"0"}), {}, 0); }

ShiftPtr Shift::empty(Alphabet alpha) {
  LabeledGraph g;
  g.k = alpha.size();
  return from_graph(std::move(alpha), g);
}

ShiftPtr Shift::with_point(std::optional<int> point) const {
  if (kind_ == ShiftKind::Forbidden) return from_forbidden(alpha_, forbidden_, point);
  return from_graph(alpha_, raw_, node_names_, point);
}

bool Shift::contains_periodic(const Word& w) const {
  if (w.empty()) return false;
  auto r = right_periodic_states(w);
  return std::any_of(r.begin(), r.end(), [](char c) { return c != 0; });
}

bool Shift::contains(const EventuallyPeriodicPoint& p) const {
  if (p.left.empty() || p.right.empty()) throw ValidationError("eventually periodic point needs nonempty tails");
  auto L = left_periodic_states(p.left);
  auto R = right_periodic_states(p.right);
  for (int q = 0; q < cover_.n; ++q) {
    if (!L[q]) continue;
    int t = q;
    for (int a : p.center) t = cover_.next(t, a);
    if (t >= 0 && R[t]) return true;
  }
  return false;
}

std::vector<char> Shift::left_periodic_states(const Word& u) const {
  const int n = cover_.n;
  std::vector<char> cur(n, 1);
  if (u.empty()) return cur;
  std::vector<int> T(n);
  for (int q = 0; q < n; ++q) {
    int t = q;
    for (int a : u) t = cover_.next(t, a);
    T[q] = t;
  }
  while (true) {
    std::vector<char> nxt(n, 0);
    for (int q = 0; q < n; ++q)
      if (cur[q] && T[q] >= 0) nxt[T[q]] = 1;
    if (nxt == cur) return cur;
    cur.swap(nxt);
  }
}

std::vector<char> Shift::right_periodic_states(const Word& v) const {
  const int n = cover_.n;
  std::vector<char> alive(n, 1);
  if (v.empty()) return alive;
  std::vector<int> T(n);
  for (int q = 0; q < n; ++q) {
    int t = q;
    for (int a : v) t = cover_.next(t, a);
    T[q] = t;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q = 0; q < n; ++q)
      if (alive[q] && (T[q] < 0 || !alive[T[q]])) {
        alive[q] = 0;
        changed = true;
      }
  }
  return alive;
}

int Shift::declared_window() const {
  int m = 0;
  for (const auto& w : forbidden_) m = std::max(m, static_cast<int>(w.size()));
  return m;
}

const TransitionMonoid& Shift::monoid() const {
  std::call_once(monoid_once_, [this] { monoid_ = std::make_unique<TransitionMonoid>(lang_); });
  return *monoid_;
}

bool same_language(const Shift& a, const Shift& b) {
  return a.alphabet() == b.alphabet() && a.language() == b.language();
}

bool is_subshift(const Shift& a, const Shift& b) {
  if (!(a.alphabet() == b.alphabet())) throw ValidationError("alphabet mismatch in subshift test");
  return dfa_included(a.language(), b.language());
}

ShiftPtr mirror(const Shift& x) {
  LabeledGraph g = x.cover().as_graph();
  for (auto& e : g.edges) std::swap(e.from, e.to);
  return Shift::from_graph(x.alphabet(), std::move(g), {}, x.point());
}

ShiftPtr product_shift(const Shift& a, const Shift& b) {
  const auto& ca = a.cover();
  const auto& cb = b.cover();
  LabeledGraph g;
  g.n = ca.n * cb.n;
  g.k = a.k() * b.k();
  for (int p = 0; p < ca.n; ++p)
    for (int q = 0; q < cb.n; ++q)
      for (int x = 0; x < a.k(); ++x) {
        int tp = ca.next(p, x);
        if (tp < 0) continue;
        for (int y = 0; y < b.k(); ++y) {
          int tq = cb.next(q, y);
          if (tq >= 0) g.edges.push_back({p * cb.n + q, tp * cb.n + tq, x * b.k() + y});
        }
      }
  std::optional<int> pt;
  if (a.point() && b.point()) pt = *a.point() * b.k() + *b.point();
  return Shift::from_graph(product_alphabet(a.alphabet(), b.alphabet()), std::move(g), {}, pt);
}

ShiftPtr union_shift(const Shift& a, const Shift& b) {
  if (!(a.alphabet() == b.alphabet())) throw ValidationError("alphabet mismatch in union");
  LabeledGraph g = a.cover().as_graph();
  LabeledGraph h = b.cover().as_graph();
  for (auto e : h.edges) g.edges.push_back({e.from + g.n, e.to + g.n, e.label});
  g.n += h.n;
  std::optional<int> pt = a.point() ? a.point() : b.point();
  return Shift::from_graph(a.alphabet(), std::move(g), {}, pt);
}

ShiftPtr restrict_cover(const Shift& x, const std::vector<char>& states) {
  LabeledGraph g = induced_subgraph(x.cover().as_graph(), states);
  std::optional<int> pt;
  if (x.point()) {
    // Keep the point only if the restriction still contains it.
    auto s = Shift::from_graph(x.alphabet(), g);
    if (s->contains_periodic(Word{*x.point()})) pt = x.point();
    if (!pt) return s;
  }
  return Shift::from_graph(x.alphabet(), std::move(g), {}, pt);
}

}  // namespace sdcat
