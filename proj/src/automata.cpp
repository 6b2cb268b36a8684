#include "sdcat/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "sdcat/errors.hpp"

namespace sdcat {

int Nfa::add_state(bool accept) {
  out.emplace_back();
  accepting.push_back(accept ? 1 : 0);
  return size() - 1;
}

int Dfa::run(int q, const Word& w) const {
  for (int a : w) {
    if (q < 0) return -1;
    q = next(q, a);
  }
  return q;
}

bool Dfa::accepts(const Word& w) const {
  int q = run(init, w);
  return q >= 0 && accept[q];
}

namespace {

void eps_close(const Nfa& a, std::vector<int>& set) {
  std::vector<char> seen(a.size(), 0);
  for (int s : set) seen[s] = 1;
  std::vector<int> stack = set;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (auto [lab, to] : a.out[s])
      if (lab < 0 && !seen[to]) {
        seen[to] = 1;
        set.push_back(to);
        stack.push_back(to);
      }
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

}  // namespace

Dfa determinize(const Nfa& a, std::size_t max_states) {
  Dfa d;
  d.k = a.k;
  std::vector<int> start = a.initial;
  eps_close(a, start);
  if (start.empty()) return d;
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  ids[start] = 0;
  sets.push_back(start);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<std::vector<int>> succ(a.k);
    for (int s : sets[i])
      for (auto [lab, to] : a.out[s])
        if (lab >= 0) succ[lab].push_back(to);
    for (int c = 0; c < a.k; ++c) {
      auto& t = succ[c];
      int id = -1;
      if (!t.empty()) {
        eps_close(a, t);
        auto it = ids.find(t);
        if (it == ids.end()) {
          if (sets.size() >= max_states) throw BudgetExceeded("subset construction exceeded state budget");
          id = static_cast<int>(sets.size());
          ids.emplace(t, id);
          sets.push_back(t);
        } else {
          id = it->second;
        }
      }
      d.delta.push_back(id);
    }
  }
  d.n = static_cast<int>(sets.size());
  d.init = 0;
  d.accept.assign(d.n, 0);
  for (int i = 0; i < d.n; ++i)
    for (int s : sets[i])
      if (a.accepting[s]) d.accept[i] = 1;
  return d;
}

Dfa minimize(const Dfa& a) {
  Dfa out;
  out.k = a.k;
  if (a.init < 0) return out;
  const int n = a.n, k = a.k;
  // Reachable and co-reachable states.
  std::vector<char> reach(n, 0);
  std::vector<int> stack{a.init};
  reach[a.init] = 1;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int c = 0; c < k; ++c) {
      int t = a.next(q, c);
      if (t >= 0 && !reach[t]) {
        reach[t] = 1;
        stack.push_back(t);
      }
    }
  }
  std::vector<std::vector<int>> pred(n);
  for (int q = 0; q < n; ++q)
    for (int c = 0; c < k; ++c) {
      int t = a.next(q, c);
      if (t >= 0) pred[t].push_back(q);
    }
  std::vector<char> live(n, 0);
  for (int q = 0; q < n; ++q)
    if (a.accept[q]) {
      live[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : pred[q])
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
  }
  if (!reach[a.init] || !live[a.init]) return out;
  auto keep = [&](int q) { return q >= 0 && reach[q] && live[q]; };
  // Moore refinement; class -1 stands for the dead sink.
  std::vector<int> cls(n, -1);
  for (int q = 0; q < n; ++q)
    if (keep(q)) cls[q] = a.accept[q] ? 1 : 0;
  int num = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> ncls(n, -1);
    for (int q = 0; q < n; ++q) {
      if (!keep(q)) continue;
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[q]);
      for (int c = 0; c < k; ++c) {
        int t = a.next(q, c);
        sig.push_back(keep(t) ? cls[t] : -1);
      }
      auto [it, ins] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      ncls[q] = it->second;
    }
    int nnum = static_cast<int>(sig_ids.size());
    cls.swap(ncls);
    if (nnum == num) break;
    num = nnum;
  }
  // Canonical BFS numbering.
  std::vector<int> rep(num, -1);
  for (int q = 0; q < n; ++q)
    if (keep(q) && rep[cls[q]] < 0) rep[cls[q]] = q;
  std::vector<int> order_of(num, -1);
  std::deque<int> bfs{cls[a.init]};
  order_of[cls[a.init]] = 0;
  int cnt = 1;
  std::vector<int> order{cls[a.init]};
  while (!bfs.empty()) {
    int c0 = bfs.front();
    bfs.pop_front();
    for (int c = 0; c < k; ++c) {
      int t = a.next(rep[c0], c);
      if (!keep(t)) continue;
      int ct = cls[t];
      if (order_of[ct] < 0) {
        order_of[ct] = cnt++;
        order.push_back(ct);
        bfs.push_back(ct);
      }
    }
  }
  out.n = cnt;
  out.init = 0;
  out.delta.assign(static_cast<std::size_t>(cnt) * k, -1);
  out.accept.assign(cnt, 0);
  for (int i = 0; i < cnt; ++i) {
    int q = rep[order[i]];
    out.accept[i] = a.accept[q];
    for (int c = 0; c < k; ++c) {
      int t = a.next(q, c);
      out.delta[static_cast<std::size_t>(i) * k + c] = keep(t) ? order_of[cls[t]] : -1;
    }
  }
  return out;
}

Dfa determinize_minimize(const Nfa& a) { return minimize(determinize(a)); }

Nfa to_nfa(const Dfa& d) {
  Nfa a;
  a.k = d.k;
  for (int q = 0; q < d.n; ++q) a.add_state(d.accept[q]);
  for (int q = 0; q < d.n; ++q)
    for (int c = 0; c < d.k; ++c)
      if (d.next(q, c) >= 0) a.add_edge(q, c, d.next(q, c));
  if (d.init >= 0) a.initial = {d.init};
  return a;
}

Nfa reverse(const Dfa& d) {
  Nfa a;
  a.k = d.k;
  for (int q = 0; q < d.n; ++q) a.add_state(q == d.init);
  for (int q = 0; q < d.n; ++q) {
    if (d.accept[q]) a.initial.push_back(q);
    for (int c = 0; c < d.k; ++c)
      if (d.next(q, c) >= 0) a.add_edge(d.next(q, c), c, q);
  }
  return a;
}

namespace {

// Product over (p, q) where either side may be -1 (dead), for boolean ops.
Dfa product(const Dfa& a, const Dfa& b, bool want_union) {
  if (a.k != b.k) throw ValidationError("alphabet mismatch in acceptor product");
  Dfa d;
  d.k = a.k;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> st;
  auto start = std::make_pair(a.init, b.init);
  if (start.first < 0 && start.second < 0) return d;
  ids[start] = 0;
  st.push_back(start);
  for (std::size_t i = 0; i < st.size(); ++i) {
    auto [p, q] = st[i];
    for (int c = 0; c < d.k; ++c) {
      auto t = std::make_pair(a.next(p, c), b.next(q, c));
      int id = -1;
      if (t.first >= 0 || t.second >= 0) {
        auto it = ids.find(t);
        if (it == ids.end()) {
          id = static_cast<int>(st.size());
          ids.emplace(t, id);
          st.push_back(t);
        } else {
          id = it->second;
        }
      }
      d.delta.push_back(id);
    }
  }
  d.n = static_cast<int>(st.size());
  d.init = 0;
  for (auto [p, q] : st) {
    bool ia = p >= 0 && a.accept[p];
    bool ib = q >= 0 && b.accept[q];
    d.accept.push_back(want_union ? (ia || ib) : (ia && ib));
  }
  return minimize(d);
}

}  // namespace

Dfa dfa_intersection(const Dfa& a, const Dfa& b) { return product(a, b, false); }
Dfa dfa_union(const Dfa& a, const Dfa& b) { return product(a, b, true); }

Dfa dfa_complement(const Dfa& a) {
  Dfa d;
  d.k = a.k;
  d.n = a.n + 1;
  const int sink = a.n;
  d.init = a.init >= 0 ? a.init : sink;
  d.delta.resize(static_cast<std::size_t>(d.n) * d.k);
  d.accept.resize(d.n);
  for (int q = 0; q < d.n; ++q) {
    d.accept[q] = q == sink ? 1 : !a.accept[q];
    for (int c = 0; c < d.k; ++c) {
      int t = q == sink ? -1 : a.next(q, c);
      d.delta[static_cast<std::size_t>(q) * d.k + c] = t < 0 ? sink : t;
    }
  }
  return minimize(d);
}

std::optional<Word> dfa_difference_witness(const Dfa& a, const Dfa& b) {
  if (a.k != b.k) throw ValidationError("alphabet mismatch in acceptor comparison");
  if (a.init < 0) return std::nullopt;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> st;
  std::vector<std::pair<int, int>> parent;  // (state index, letter)
  auto start = std::make_pair(a.init, b.init);
  ids[start] = 0;
  st.push_back(start);
  parent.push_back({-1, -1});
  for (std::size_t i = 0; i < st.size(); ++i) {
    auto [p, q] = st[i];
    if (a.accept[p] && (q < 0 || !b.accept[q])) {
      Word w;
      for (int j = static_cast<int>(i); parent[j].first >= 0; j = parent[j].first) w.push_back(parent[j].second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int c = 0; c < a.k; ++c) {
      int tp = a.next(p, c);
      if (tp < 0) continue;
      auto t = std::make_pair(tp, b.next(q, c));
      if (ids.emplace(t, static_cast<int>(st.size())).second) {
        st.push_back(t);
        parent.push_back({static_cast<int>(i), c});
      }
    }
  }
  return std::nullopt;
}

bool dfa_included(const Dfa& a, const Dfa& b) { return !dfa_difference_witness(a, b).has_value(); }

bool dfa_equal(const Dfa& a, const Dfa& b) { return dfa_included(a, b) && dfa_included(b, a); }

std::vector<Word> dfa_words_of_length(const Dfa& d, int len) {
  std::vector<Word> out;
  if (d.init < 0) return out;
  // Prune with states that can still reach an accepting state in the remaining steps.
  std::vector<std::vector<char>> ok(len + 1, std::vector<char>(d.n, 0));
  for (int q = 0; q < d.n; ++q) ok[0][q] = d.accept[q];
  for (int r = 1; r <= len; ++r)
    for (int q = 0; q < d.n; ++q)
      for (int c = 0; c < d.k && !ok[r][q]; ++c) {
        int t = d.next(q, c);
        if (t >= 0 && ok[r - 1][t]) ok[r][q] = 1;
      }
  if (!ok[len][d.init]) return out;
  Word w;
  std::vector<int> states{d.init};
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == len) {
      out.push_back(w);
      return;
    }
    int q = states.back();
    for (int c = 0; c < d.k; ++c) {
      int t = d.next(q, c);
      if (t < 0 || !ok[len - depth - 1][t]) continue;
      w.push_back(c);
      states.push_back(t);
      self(self, depth + 1);
      w.pop_back();
      states.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::uint64_t> dfa_count_words(const Dfa& d, int max_len) {
  std::vector<std::uint64_t> res(max_len + 1, 0);
  if (d.init < 0) return res;
  std::vector<std::uint64_t> cur(d.n, 0);
  cur[d.init] = 1;
  for (int len = 0; len <= max_len; ++len) {
    std::uint64_t tot = 0;
    for (int q = 0; q < d.n; ++q)
      if (d.accept[q]) tot = std::min<std::uint64_t>(UINT64_MAX / 2, tot + cur[q]);
    res[len] = tot;
    std::vector<std::uint64_t> nxt(d.n, 0);
    for (int q = 0; q < d.n; ++q)
      if (cur[q])
        for (int c = 0; c < d.k; ++c) {
          int t = d.next(q, c);
          if (t >= 0) nxt[t] = std::min<std::uint64_t>(UINT64_MAX / 2, nxt[t] + cur[q]);
        }
    cur.swap(nxt);
  }
  return res;
}

namespace {

struct Frag {
  int start, end;
};

class RegexParser {
 public:
  RegexParser(std::string_view re, const Alphabet& alpha, Nfa& nfa) : re_(re), alpha_(alpha), nfa_(nfa) {}

  Frag parse() {
    Frag f = alt();
    skip();
    if (pos_ != re_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("regex: " + msg + " at offset " + std::to_string(pos_) + " in '" + std::string(re_) + "'");
  }
  void skip() {
    while (pos_ < re_.size() && (re_[pos_] == ' ' || re_[pos_] == '\t')) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < re_.size() && re_[pos_] == c;
  }
  Frag eps() {
    int s = nfa_.add_state(), e = nfa_.add_state();
    nfa_.add_edge(s, -1, e);
    return {s, e};
  }
  Frag alt() {
    Frag f = concat();
    if (!peek('|')) return f;
    int s = nfa_.add_state(), e = nfa_.add_state();
    nfa_.add_edge(s, -1, f.start);
    nfa_.add_edge(f.end, -1, e);
    while (peek('|')) {
      ++pos_;
      Frag g = concat();
      nfa_.add_edge(s, -1, g.start);
      nfa_.add_edge(g.end, -1, e);
    }
    return {s, e};
  }
  Frag concat() {
    std::optional<Frag> acc;
    while (true) {
      skip();
      if (pos_ >= re_.size() || re_[pos_] == '|' || re_[pos_] == ')') break;
      Frag f = postfix();
      if (acc) {
        nfa_.add_edge(acc->end, -1, f.start);
        acc->end = f.end;
      } else {
        acc = f;
      }
    }
    return acc ? *acc : eps();
  }
  Frag postfix() {
    Frag f = atom();
    while (true) {
      skip();
      if (pos_ >= re_.size()) break;
      char c = re_[pos_];
      if (c != '*' && c != '+' && c != '?') break;
      ++pos_;
      int s = nfa_.add_state(), e = nfa_.add_state();
      nfa_.add_edge(s, -1, f.start);
      nfa_.add_edge(f.end, -1, e);
      if (c != '+') nfa_.add_edge(s, -1, e);
      if (c != '?') nfa_.add_edge(f.end, -1, f.start);
      f = {s, e};
    }
    return f;
  }
  Frag atom() {
    skip();
    if (pos_ >= re_.size()) fail("unexpected end");
    char c = re_[pos_];
    if (c == '(') {
      ++pos_;
      Frag f = alt();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return f;
    }
    std::string tok;
    if (c == '<') {
      auto close = re_.find('>', pos_);
      if (close == std::string_view::npos) fail("missing '>'");
      tok = std::string(re_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
    } else {
      if (c == '*' || c == '+' || c == '?' || c == ')' || c == '|') fail("misplaced operator");
      tok = std::string(1, c);
      ++pos_;
    }
    int sym = alpha_.index(tok);
    if (sym < 0) fail("symbol '" + tok + "' not in alphabet");
    int s = nfa_.add_state(), e = nfa_.add_state();
    nfa_.add_edge(s, sym, e);
    return {s, e};
  }

  std::string_view re_;
  const Alphabet& alpha_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

}  // namespace

Nfa regex_nfa(std::string_view re, const Alphabet& alpha) {
  Nfa a;
  a.k = alpha.size();
  RegexParser p(re, alpha, a);
  Frag f = p.parse();
  a.initial = {f.start};
  a.accepting[f.end] = 1;
  return a;
}

TransitionMonoid::TransitionMonoid(const Dfa& d, std::size_t max_elements) : n_(d.n), k_(d.k) {
  std::vector<int> id(n_);
  for (int q = 0; q < n_; ++q) id[q] = q;
  elems_.push_back(id);
  index_.emplace(id, 0);
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (int c = 0; c < k_; ++c) {
      std::vector<int> f(n_);
      for (int q = 0; q < n_; ++q) f[q] = elems_[i][q] < 0 ? -1 : d.next(elems_[i][q], c);
      auto it = index_.find(f);
      int idx;
      if (it == index_.end()) {
        if (elems_.size() >= max_elements) throw BudgetExceeded("transition monoid exceeded element budget");
        idx = static_cast<int>(elems_.size());
        index_.emplace(f, idx);
        elems_.push_back(std::move(f));
      } else {
        idx = it->second;
      }
      right_.push_back(idx);
    }
  }
  letters_.resize(k_);
  for (int c = 0; c < k_; ++c) letters_[c] = right_[c];
  std::vector<int> z(n_, -1);
  auto it = index_.find(z);
  zero_ = it == index_.end() ? -1 : it->second;
}

int TransitionMonoid::mul(int a, int b) const {
  std::vector<int> f(n_);
  for (int q = 0; q < n_; ++q) f[q] = elems_[a][q] < 0 ? -1 : elems_[b][elems_[a][q]];
  return index_.at(f);
}

int TransitionMonoid::class_of(const Word& w) const {
  int e = 0;
  for (int a : w) e = times_letter(e, a);
  return e;
}

std::vector<std::vector<int>> TransitionMonoid::table() const {
  std::vector<std::vector<int>> t(size(), std::vector<int>(size()));
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) t[a][b] = mul(a, b);
  return t;
}

std::optional<std::pair<int, int>> find_idempotent_factor(const TransitionMonoid& m, const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size());
  for (int i1 = 0; i1 < n; ++i1) {
    int prod = m.identity();
    for (int i2 = i1 + 1; i2 <= n; ++i2) {
      prod = m.mul(prod, seq[i2 - 1]);
      if (m.is_idempotent(prod)) return std::make_pair(i1, i2);
    }
  }
  return std::nullopt;
}

bool is_pumpable(const TransitionMonoid& m, const Word& w, const TransitionMonoid* h) {
  int e = m.class_of(w);
  if (m.size() > 0 && m.function(e).size() > 0 && m.function(e)[0] < 0)
    throw ValidationError("is_pumpable: word is not in the language");
  if (!m.is_idempotent(e)) return false;
  return h == nullptr || h->is_idempotent(h->class_of(w));
}

}  // namespace sdcat
