#include "sdcat/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace sdcat {

std::vector<std::vector<int>> LabeledGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  return adj;
}

std::vector<std::vector<int>> LabeledGraph::reverse_adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) adj[e.to].push_back(e.from);
  return adj;
}

LabeledGraph DGraph::as_graph() const {
  LabeledGraph g;
  g.n = n;
  g.k = k;
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < k; ++a)
      if (next(q, a) >= 0) g.edges.push_back({q, next(q, a), a});
  return g;
}

Scc strongly_connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  Scc r;
  r.comp.assign(n, -1);
  std::vector<int> idx(n, -1), low(n, 0), stack;
  std::vector<char> on(n, 0);
  int counter = 0;
  // Iterative Tarjan.
  std::vector<std::pair<int, std::size_t>> call;
  for (int s = 0; s < n; ++s) {
    if (idx[s] >= 0) continue;
    call.push_back({s, 0});
    idx[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        int w = adj[v][i++];
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
      } else {
        int vv = v;
        if (low[vv] == idx[vv]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[w] = 0;
            r.comp[w] = r.count;
            if (w == vv) break;
          }
          ++r.count;
        }
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
      }
    }
  }
  r.cyclic.assign(r.count, 0);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v])
      if (r.comp[v] == r.comp[w]) r.cyclic[r.comp[v]] = 1;
  return r;
}

std::vector<char> essential_vertices(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<int>> radj(n);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) {
      ++outdeg[v];
      ++indeg[w];
      radj[w].push_back(v);
    }
  std::vector<char> alive(n, 1);
  std::deque<int> q;
  for (int v = 0; v < n; ++v)
    if (!indeg[v] || !outdeg[v]) {
      alive[v] = 0;
      q.push_back(v);
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (alive[w] && --indeg[w] == 0) {
        alive[w] = 0;
        q.push_back(w);
      }
    for (int u : radj[v])
      if (alive[u] && --outdeg[u] == 0) {
        alive[u] = 0;
        q.push_back(u);
      }
  }
  return alive;
}

LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<char>& keep, std::vector<int>* old_to_new) {
  std::vector<int> map(g.n, -1);
  LabeledGraph out;
  out.k = g.k;
  for (int v = 0; v < g.n; ++v)
    if (keep[v]) map[v] = out.n++;
  for (const auto& e : g.edges)
    if (map[e.from] >= 0 && map[e.to] >= 0) out.edges.push_back({map[e.from], map[e.to], e.label});
  if (old_to_new) *old_to_new = std::move(map);
  return out;
}

LabeledGraph essential_trim(const LabeledGraph& g, std::vector<int>* old_to_new) {
  return induced_subgraph(g, essential_vertices(g.adjacency()), old_to_new);
}

std::vector<char> reachable(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack;
  for (int s : sources)
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

int component_period(const std::vector<std::vector<int>>& adj, const Scc& scc, int c) {
  const int n = static_cast<int>(adj.size());
  int root = -1;
  for (int v = 0; v < n && root < 0; ++v)
    if (scc.comp[v] == c) root = v;
  if (root < 0 || !scc.cyclic[c]) return 0;
  std::vector<int> level(n, -1);
  level[root] = 0;
  std::deque<int> q{root};
  int g = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v]) {
      if (scc.comp[w] != c) continue;
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        q.push_back(w);
      } else {
        g = std::gcd(g, std::abs(level[v] + 1 - level[w]));
      }
    }
  }
  return g;
}

int longest_path_dag(const std::vector<std::vector<int>>& adj, const std::vector<char>& keep) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> indeg(n, 0);
  for (int v = 0; v < n; ++v)
    if (keep[v])
      for (int w : adj[v])
        if (keep[w]) ++indeg[w];
  std::deque<int> q;
  std::vector<int> dist(n, 0);
  int seen = 0, total = 0;
  for (int v = 0; v < n; ++v)
    if (keep[v]) {
      ++total;
      if (!indeg[v]) q.push_back(v);
    }
  int best = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    ++seen;
    best = std::max(best, dist[v]);
    for (int w : adj[v])
      if (keep[w]) {
        dist[w] = std::max(dist[w], dist[v] + 1);
        if (--indeg[w] == 0) q.push_back(w);
      }
  }
  return seen == total ? best : -1;
}

}  // namespace sdcat
