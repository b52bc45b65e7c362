#include "dimer/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "dimer/errors.hpp"

namespace dimer {

Graph::Graph(int num_vertices, std::vector<std::pair<int, int>> edges,
             std::optional<int> regularity, std::string id)
    : num_vertices_(num_vertices), regularity_(regularity), id_(std::move(id)) {
    if (num_vertices < 0) throw InvalidParameterError("Graph: negative vertex count");
    adjacency_.assign(num_vertices_, {});
    std::set<std::pair<int, int>> seen;
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= num_vertices_ || v >= num_vertices_)
            throw InvalidParameterError("Graph: edge endpoint out of range");
        if (u == v) throw InvalidParameterError("Graph: self-loop rejected");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw InvalidParameterError("Graph: parallel edge rejected");
        edges_.emplace_back(key.first, key.second);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    if (regularity_) {
        for (int v = 0; v < num_vertices_; ++v)
            if (degree(v) != *regularity_)
                throw InvalidParameterError("Graph: declared regularity violated at vertex " +
                                            std::to_string(v));
    }
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::is_connected() const {
    if (num_vertices_ == 0) return true;
    std::vector<char> seen(num_vertices_, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int visited = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adjacency_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                queue.push_back(w);
            }
    }
    return visited == num_vertices_;
}

Graph Graph::without_edge(int u, int v) const {
    auto key = std::minmax(u, v);
    std::vector<std::pair<int, int>> kept;
    kept.reserve(edges_.size());
    bool found = false;
    for (auto e : edges_) {
        if (e == std::pair<int, int>(key.first, key.second)) {
            found = true;
            continue;
        }
        kept.push_back(e);
    }
    if (!found) throw InvalidParameterError("without_edge: edge not present");
    return Graph(num_vertices_, std::move(kept), std::nullopt, id_ + "-e");
}

Graph Graph::without_vertices(const std::vector<int>& removed) const {
    std::vector<char> drop(num_vertices_, 0);
    for (int v : removed) {
        if (v < 0 || v >= num_vertices_)
            throw InvalidParameterError("without_vertices: vertex out of range");
        drop[v] = 1;
    }
    std::vector<int> newid(num_vertices_, -1);
    int next = 0;
    for (int v = 0; v < num_vertices_; ++v)
        if (!drop[v]) newid[v] = next++;
    std::vector<std::pair<int, int>> kept;
    for (auto [u, v] : edges_)
        if (!drop[u] && !drop[v]) kept.emplace_back(newid[u], newid[v]);
    return Graph(next, std::move(kept), std::nullopt, id_ + "-v");
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != num_vertices_)
        throw InvalidParameterError("relabeled: permutation size mismatch");
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(edges_.size());
    for (auto [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
    return Graph(num_vertices_, std::move(mapped), regularity_, id_ + "-perm");
}

Bipartition bipartition(const Graph& g) {
    if (!g.is_connected()) throw InvalidInputError("bipartition: graph must be connected");
    Bipartition out;
    int n = g.num_vertices();
    std::vector<int> color(n, -1);
    std::vector<int> parent(n, -1);
    std::deque<int> queue;
    if (n > 0) {
        color[0] = 0;
        queue.push_back(0);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (color[w] == -1) {
                color[w] = color[v] ^ 1;
                parent[w] = v;
                queue.push_back(w);
            } else if (color[w] == color[v]) {
                // Reconstruct an odd cycle through the BFS tree paths of v
                // and w up to their lowest common ancestor.
                std::vector<int> pv{v}, pw{w};
                for (int a = v; a != -1; a = parent[a])
                    if (a != v) pv.push_back(a);
                for (int a = w; a != -1; a = parent[a])
                    if (a != w) pw.push_back(a);
                std::vector<char> onv(n, 0);
                for (int a : pv) onv[a] = 1;
                int lca = -1;
                for (int a : pw)
                    if (onv[a]) {
                        lca = a;
                        break;
                    }
                std::vector<int> cycle;
                for (int a : pv) {
                    cycle.push_back(a);
                    if (a == lca) break;
                }
                std::vector<int> half;
                for (int a : pw) {
                    if (a == lca) break;
                    half.push_back(a);
                }
                std::reverse(half.begin(), half.end());
                for (int a : half) cycle.push_back(a);
                out.bipartite = false;
                out.odd_cycle = std::move(cycle);
                return out;
            }
        }
    }
    out.bipartite = true;
    for (int v = 0; v < n; ++v) out.classes[color[v]].push_back(v);
    return out;
}

std::optional<int> girth(const Graph& g) {
    // BFS from every vertex; the shortest cycle through the root is seen
    // when an edge closes between levels.
    int n = g.num_vertices();
    int best = -1;
    for (int root = 0; root < n; ++root) {
        std::vector<int> dist(n, -1), parent(n, -1);
        std::deque<int> queue{root};
        dist[root] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(v)) {
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if (w != parent[v]) {
                    int len = dist[v] + dist[w] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

std::string edge_list_text(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_edge_list: cannot open " + path);
    out << edge_list_text(g);
    if (!out) throw IoError("write_edge_list: write failed for " + path);
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    long v = 0, e = 0;
    if (!(in >> v >> e)) throw IoError("parse_edge_list: missing header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(e));
    for (long i = 0; i < e; ++i) {
        int a = 0, b = 0;
        if (!(in >> a >> b)) throw IoError("parse_edge_list: truncated edge list");
        edges.emplace_back(a, b);
    }
    return Graph(static_cast<int>(v), std::move(edges));
}

Graph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_edge_list: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

}  // namespace dimer
