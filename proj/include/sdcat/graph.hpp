#pragma once

#include <vector>

namespace sdcat {

struct Edge {
  int from;
  int to;
  int label;
  bool operator==(const Edge&) const = default;
};

/// Finite directed multigraph with integer-labeled edges.
struct LabeledGraph {
  int n = 0;
  int k = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<int>> adjacency() const;
  std::vector<std::vector<int>> reverse_adjacency() const;
};

/// Deterministic labeled graph: at most one out-edge per (state, label).
struct DGraph {
  int n = 0;
  int k = 0;
  std::vector<int> delta;  // n * k, -1 = no edge

  int next(int q, int a) const { return q < 0 ? -1 : delta[static_cast<std::size_t>(q) * k + a]; }
  LabeledGraph as_graph() const;
};

struct Scc {
  int count = 0;
  std::vector<int> comp;  // component id per vertex, reverse topological order
  /// True for components containing at least one edge.
  std::vector<char> cyclic;
};

Scc strongly_connected(const std::vector<std::vector<int>>& adj);

/// Vertices lying on bi-infinite paths.
std::vector<char> essential_vertices(const std::vector<std::vector<int>>& adj);

/// Restriction to the given vertices; old_to_new receives the renumbering (-1 = dropped).
LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<char>& keep,
                              std::vector<int>* old_to_new = nullptr);
LabeledGraph essential_trim(const LabeledGraph& g, std::vector<int>* old_to_new = nullptr);

std::vector<char> reachable(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources);

/// gcd of cycle lengths of the strongly connected subgraph on vertices with
/// comp[v] == c; 0 if it has no edge.
int component_period(const std::vector<std::vector<int>>& adj, const Scc& scc, int c);

/// Length of the longest path in a DAG given by adjacency restricted to keep; -1 if a cycle exists.
int longest_path_dag(const std::vector<std::vector<int>>& adj, const std::vector<char>& keep);

}  // namespace sdcat
