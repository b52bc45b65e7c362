#include "dimer/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "dimer/errors.hpp"

namespace dimer {

std::string pattern_name(PatternId id) {
    switch (id) {
        case PatternId::G1_four_loop: return "G1_four_loop";
        case PatternId::G2_six_loop: return "G2_six_loop";
        case PatternId::G3_theta: return "G3_theta";
        case PatternId::G4_ladder: return "G4_ladder";
    }
    throw InvalidParameterError("pattern_name: unknown id");
}

namespace {

Graph make_cycle_pattern(int k, const std::string& id) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
    return Graph(k, std::move(edges), 2, id);
}

Graph make_theta_pattern() {
    // Hubs 0, 1; middles 2, 3, 4: three internally disjoint length-2 paths.
    std::vector<std::pair<int, int>> edges{{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}};
    return Graph(5, std::move(edges), std::nullopt, "theta");
}

Graph make_ladder_pattern() {
    // 2x3 grid: rails 0-1-2 and 3-4-5 with three rungs.
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
    return Graph(6, std::move(edges), std::nullopt, "ladder2x3");
}

std::vector<PatternGraph> build_patterns() {
    std::vector<PatternGraph> out;
    const int expected[4] = {8, 12, 12, 4};
    Graph graphs[4] = {make_cycle_pattern(4, "C4"), make_cycle_pattern(6, "C6"),
                       make_theta_pattern(), make_ladder_pattern()};
    PatternId ids[4] = {PatternId::G1_four_loop, PatternId::G2_six_loop, PatternId::G3_theta,
                        PatternId::G4_ladder};
    for (int i = 0; i < 4; ++i) {
        PatternGraph p;
        p.id = ids[i];
        p.graph = graphs[i];
        p.automorphism_count = automorphism_count(p.graph);
        if (p.automorphism_count != expected[i])
            throw std::logic_error("pattern automorphism count mismatch for " +
                                   pattern_name(p.id));
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

const std::vector<PatternGraph>& pattern_graphs() {
    static const std::vector<PatternGraph> patterns = build_patterns();
    return patterns;
}

int automorphism_count(const Graph& pattern) {
    const int n = pattern.num_vertices();
    if (n > 8) throw SizeLimitError("automorphism_count: pattern larger than 8 vertices");
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    int count = 0;
    do {
        bool ok = true;
        for (auto [u, v] : pattern.edges())
            if (!pattern.has_edge(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)])) {
                ok = false;
                break;
            }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

namespace {

// Pattern-vertex visit order in which every vertex after the first is
// adjacent to an earlier one (patterns are connected).
std::vector<int> connected_order(const Graph& pattern) {
    const int n = pattern.num_vertices();
    std::vector<int> order{0};
    std::vector<char> placed(static_cast<size_t>(n), 0);
    placed[0] = 1;
    while (static_cast<int>(order.size()) < n) {
        int best = -1, best_links = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int links = 0;
            for (int u : pattern.neighbors(v))
                if (placed[u]) ++links;
            if (links > best_links || (links == best_links && v < best)) {
                best = v;
                best_links = links;
            }
        }
        if (best_links == 0) throw InvalidParameterError("pattern must be connected");
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

long long count_from_root(const Graph& g, const Graph& pattern, const std::vector<int>& order,
                          int root_image) {
    const int pn = pattern.num_vertices();
    std::vector<int> image(static_cast<size_t>(pn), -1);
    std::vector<char> used(static_cast<size_t>(g.num_vertices()), 0);
    if (g.degree(root_image) < pattern.degree(order[0])) return 0;
    image[static_cast<size_t>(order[0])] = root_image;
    used[static_cast<size_t>(root_image)] = 1;
    long long found = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == pn) {
            ++found;
            return;
        }
        int pv = order[static_cast<size_t>(depth)];
        // Generate candidates from one mapped pattern-neighbor, then check
        // the rest; degree pruning keeps the branching low.
        int anchor = -1;
        for (int pu : pattern.neighbors(pv))
            if (image[static_cast<size_t>(pu)] >= 0) {
                anchor = image[static_cast<size_t>(pu)];
                break;
            }
        for (int w : g.neighbors(anchor)) {
            if (used[static_cast<size_t>(w)]) continue;
            if (g.degree(w) < pattern.degree(pv)) continue;
            bool ok = true;
            for (int pu : pattern.neighbors(pv)) {
                int im = image[static_cast<size_t>(pu)];
                if (im >= 0 && !g.has_edge(im, w)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[static_cast<size_t>(pv)] = w;
            used[static_cast<size_t>(w)] = 1;
            self(self, depth + 1);
            image[static_cast<size_t>(pv)] = -1;
            used[static_cast<size_t>(w)] = 0;
        }
    };
    rec(rec, 1);
    return found;
}

}  // namespace

BigInt count_embeddings_labeled(const Graph& g, const Graph& pattern, int threads) {
    if (pattern.num_vertices() == 0) return BigInt(0);
    auto order = connected_order(pattern);
    const int nv = g.num_vertices();
    std::vector<long long> per_root(static_cast<size_t>(nv), 0);
    auto work = [&](int lo, int hi) {
        for (int v = lo; v < hi; ++v)
            per_root[static_cast<size_t>(v)] = count_from_root(g, pattern, order, v);
    };
    if (threads <= 1 || nv < 2) {
        work(0, nv);
    } else {
        int nthreads = std::min(threads, nv);
        std::vector<std::thread> pool;
        int per = (nv + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            int lo = t * per, hi = std::min(nv, lo + per);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    BigInt total = 0;
    for (int v = 0; v < nv; ++v) total += static_cast<long>(per_root[static_cast<size_t>(v)]);
    return total;
}

BigInt count_embeddings(const Graph& g, const PatternGraph& p, int threads) {
    BigInt labeled = count_embeddings_labeled(g, p.graph, threads);
    BigInt q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), labeled.get_mpz_t(),
                BigInt(p.automorphism_count).get_mpz_t());
    if (rem != 0)
        throw std::logic_error("count_embeddings: labeled count not divisible by |Aut|");
    return q;
}

BigRat geom_density(const Graph& g, const PatternGraph& p, int threads) {
    BigInt count = count_embeddings(g, p, threads);
    BigRat density(count * 2, BigInt(g.num_vertices()));
    density.canonicalize();
    return density;
}

const PatternDensity& GeomDensities::at(PatternId id) const {
    for (const auto& p : patterns)
        if (p.id == id) return p;
    throw InvalidParameterError("GeomDensities::at: pattern missing");
}

GeomDensities compute_geom_densities(const Graph& g, bool finite_size_warning, int threads) {
    GeomDensities out;
    out.lattice_id = g.id();
    out.num_vertices = g.num_vertices();
    out.finite_size_warning = finite_size_warning;
    for (const auto& p : pattern_graphs()) {
        PatternDensity d;
        d.id = p.id;
        d.count = count_embeddings(g, p, threads);
        BigRat density(d.count * 2, BigInt(g.num_vertices()));
        density.canonicalize();
        d.density = density;
        out.patterns.push_back(std::move(d));
    }
    return out;
}

}  // namespace dimer
