#ifndef DIMER_GRAPH_HPP
#define DIMER_GRAPH_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dimer {

// Undirected simple graph. Values are immutable after construction and
// safe to share across threads.
class Graph {
  public:
    Graph() = default;
    // Edges may arrive in any order and orientation; self-loops and
    // parallel edges are rejected.
    Graph(int num_vertices, std::vector<std::pair<int, int>> edges,
          std::optional<int> regularity = std::nullopt, std::string id = {});

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    std::optional<int> regularity() const { return regularity_; }
    const std::string& id() const { return id_; }

    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    bool has_edge(int u, int v) const;
    bool is_connected() const;

    // Copy with one edge removed; used by deletion/contraction identities.
    Graph without_edge(int u, int v) const;
    // Copy with the listed vertices (and incident edges) removed,
    // remaining vertices renumbered in increasing order.
    Graph without_vertices(const std::vector<int>& removed) const;
    // Copy with vertices renamed by `perm` (perm[old] = new).
    Graph relabeled(const std::vector<int>& perm) const;

  private:
    int num_vertices_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::optional<int> regularity_;
    std::string id_;
};

struct Bipartition {
    bool bipartite = false;
    // Two color classes when bipartite (class of vertex 0 first).
    std::array<std::vector<int>, 2> classes;
    // Odd-cycle witness (vertex sequence, closed) when not bipartite.
    std::vector<int> odd_cycle;
};

// Two-coloring by BFS. Requires a connected graph.
Bipartition bipartition(const Graph& g);

// Length of the shortest cycle, or nullopt for forests.
std::optional<int> girth(const Graph& g);

// Plain-text edge list: first line "V E", then E lines "u v" (0-based).
// Writer and reader round-trip exactly.
void write_edge_list(const Graph& g, const std::string& path);
std::string edge_list_text(const Graph& g);
Graph read_edge_list(const std::string& path);
Graph parse_edge_list(const std::string& text);

}  // namespace dimer

#endif
