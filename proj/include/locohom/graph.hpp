#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "locohom/errors.hpp"

namespace locohom {

using Vertex = int;
using VertexList = std::vector<Vertex>;

/// Undirected simple graph with optional self-loops.
///
/// Vertices are 0..n-1. A loop at v puts v into its own neighbourhood and
/// contributes one to its degree. Guests are loopless; hosts may carry loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, bool allows_loops = false)
      : n_(n), allows_loops_(allows_loops), adj_(static_cast<std::size_t>(n)),
        matrix_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
    if (n < 0) throw PreconditionError("negative vertex count");
  }

  int order() const { return n_; }
  std::size_t size() const { return edge_count_; }
  bool allows_loops() const { return allows_loops_; }

  /// Adds {u,v}; throws on duplicates and on loops in a loopless graph.
  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v && !allows_loops_) {
      throw PreconditionError("self-loop in a loopless graph at vertex " + std::to_string(u + 1));
    }
    if (adjacent(u, v)) {
      throw PreconditionError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    }
    set_matrix(u, v);
    insert_sorted(adj_[static_cast<std::size_t>(u)], v);
    if (u != v) insert_sorted(adj_[static_cast<std::size_t>(v)], u);
    ++edge_count_;
  }

  bool adjacent(Vertex u, Vertex v) const {
    return matrix_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
  }
  bool has_loop(Vertex v) const { return adjacent(v, v); }

  std::span<const Vertex> neighbours(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  int max_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }

  /// Edges as (u,v) with u <= v, sorted lexicographically.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : neighbours(u)) {
        if (u <= v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Induced subgraph; vertex i of the result is vertices[i].
  Graph induced(std::span<const Vertex> vertices) const {
    Graph g(static_cast<int>(vertices.size()), allows_loops_);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (std::size_t j = i; j < vertices.size(); ++j) {
        if (adjacent(vertices[i], vertices[j])) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
    return g;
  }

  /// Copy of this graph with a different loop policy. Throws if loops exist
  /// and the new policy forbids them.
  Graph with_loop_policy(bool allows_loops) const {
    Graph g(n_, allows_loops);
    for (auto [u, v] : edges()) g.add_edge(u, v);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.allows_loops_ == b.allows_loops_ && a.matrix_ == b.matrix_;
  }

 private:
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw PreconditionError("vertex id out of range: " + std::to_string(v + 1));
  }
  void set_matrix(Vertex u, Vertex v) {
    const auto n = static_cast<std::size_t>(n_);
    matrix_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 1;
    matrix_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1;
  }
  static void insert_sorted(VertexList& list, Vertex v) { list.insert(std::lower_bound(list.begin(), list.end(), v), v); }

  int n_ = 0;
  bool allows_loops_ = false;
  std::size_t edge_count_ = 0;
  std::vector<VertexList> adj_;
  std::vector<std::uint8_t> matrix_;
};

inline Graph make_graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges, bool allows_loops = false) {
  Graph g(n, allows_loops);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// ---------------------------------------------------------------------------
// Text format:
//   # comment
//   p ghom <n> <m> [loops]
//   e <u> <v>            (exactly m lines, 1-based ids)

inline Graph parse_graph(std::istream& in) {
  std::string line;
  std::optional<Graph> graph;
  std::size_t declared_edges = 0;
  std::size_t seen_edges = 0;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> InputError {
    return InputError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line.substr(first));
    std::string tag;
    fields >> tag;
    if (tag == "p") {
      if (graph) throw fail("duplicate header");
      std::string kind;
      long long n = -1;
      long long m = -1;
      if (!(fields >> kind >> n >> m) || kind != "ghom" || n < 0 || m < 0) throw fail("malformed header");
      std::string flag;
      bool loops = false;
      if (fields >> flag) {
        if (flag != "loops") throw fail("unknown header flag '" + flag + "'");
        loops = true;
      }
      std::string extra;
      if (fields >> extra) throw fail("trailing data in header");
      graph.emplace(static_cast<int>(n), loops);
      declared_edges = static_cast<std::size_t>(m);
    } else if (tag == "e") {
      if (!graph) throw fail("edge before header");
      long long u = 0;
      long long v = 0;
      if (!(fields >> u >> v)) throw fail("malformed edge line");
      std::string extra;
      if (fields >> extra) throw fail("trailing data in edge line");
      if (u < 1 || v < 1 || u > graph->order() || v > graph->order()) throw fail("vertex id out of range");
      if (u == v && !graph->allows_loops()) throw fail("loop in loopless file");
      if (graph->adjacent(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1))) throw fail("duplicate edge");
      if (seen_edges == declared_edges) throw fail("more edges than declared");
      graph->add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
      ++seen_edges;
    } else {
      throw fail("unexpected line tag '" + tag + "'");
    }
  }
  if (!graph) throw InputError("missing header");
  if (seen_edges != declared_edges) {
    throw InputError("declared " + std::to_string(declared_edges) + " edges, found " + std::to_string(seen_edges));
  }
  return std::move(*graph);
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "p ghom " << g.order() << ' ' << g.size();
  if (g.allows_loops()) out << " loops";
  out << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline std::string to_graph_string(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

// ---------------------------------------------------------------------------
// Connectivity

/// Components of the subgraph induced by `alive` (all vertices if empty),
/// each sorted, ordered by minimum vertex.
inline std::vector<VertexList> connected_components(const Graph& g, const std::vector<bool>& removed = {}) {
  const int n = g.order();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  if (!removed.empty()) {
    for (Vertex v = 0; v < n; ++v) seen[static_cast<std::size_t>(v)] = removed[static_cast<std::size_t>(v)];
  }
  std::vector<VertexList> out;
  VertexList stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    VertexList comp;
    stack.push_back(s);
    seen[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbours(v)) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<bool> membership(int n, std::span<const Vertex> set) {
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (Vertex v : set) in[static_cast<std::size_t>(v)] = true;
  return in;
}

/// Components of G - D.
inline std::vector<VertexList> components_without(const Graph& g, std::span<const Vertex> deleted) {
  return connected_components(g, membership(g.order(), deleted));
}

inline bool is_connected(const Graph& g) { return g.order() > 0 && connected_components(g).size() == 1; }

inline bool is_forest(const Graph& g, std::span<const Vertex> deleted = {}) {
  auto removed = membership(g.order(), deleted);
  std::size_t alive = 0;
  std::size_t edges = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (removed[static_cast<std::size_t>(v)]) continue;
    ++alive;
    for (Vertex w : g.neighbours(v)) {
      if (w == v) return false;
      if (w > v && !removed[static_cast<std::size_t>(w)]) ++edges;
    }
  }
  return edges + connected_components(g, removed).size() == alive;
}

}  // namespace locohom
