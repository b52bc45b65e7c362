#include "dimer/lattice.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dimer/errors.hpp"

namespace dimer {

std::string family_name(LatticeFamily f) {
    switch (f) {
        case LatticeFamily::cycle: return "cycle";
        case LatticeFamily::hypercubic_torus: return "hypercubic";
        case LatticeFamily::honeycomb_torus: return "honeycomb";
        case LatticeFamily::prism_torus: return "prism";
        case LatticeFamily::random_regular_bipartite: return "random_bipartite";
    }
    throw InvalidParameterError("family_name: unknown family");
}

LatticeFamily family_from_name(const std::string& name) {
    if (name == "cycle") return LatticeFamily::cycle;
    if (name == "hypercubic") return LatticeFamily::hypercubic_torus;
    if (name == "honeycomb") return LatticeFamily::honeycomb_torus;
    if (name == "prism") return LatticeFamily::prism_torus;
    if (name == "random_bipartite") return LatticeFamily::random_regular_bipartite;
    throw InvalidParameterError("unknown lattice family: " + name);
}

std::string LatticeSpec::name() const {
    std::ostringstream out;
    out << family_name(family) << '(';
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (i) out << 'x';
        out << sizes[i];
    }
    if (seed) out << ";seed=" << *seed;
    out << ')';
    return out.str();
}

Graph build_cycle(int m) {
    if (m < 4 || m % 2 != 0)
        throw InvalidParameterError("build_cycle: m must be even and >= 4, got " +
                                    std::to_string(m));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) edges.emplace_back(i, (i + 1) % m);
    return Graph(m, std::move(edges), 2, "cycle(" + std::to_string(m) + ")");
}

Graph build_hypercubic_torus(const std::vector<int>& dims) {
    if (dims.empty()) throw InvalidParameterError("build_hypercubic_torus: empty dims");
    for (int d : dims)
        if (d < 3)
            throw InvalidParameterError("build_hypercubic_torus: side must be >= 3, got " +
                                        std::to_string(d));
    long long total = 1;
    for (int d : dims) {
        total *= d;
        if (total > (1 << 26)) throw InvalidParameterError("build_hypercubic_torus: too large");
    }
    int n = static_cast<int>(total);
    // Row-major index over coordinate tuples: last axis varies fastest.
    std::vector<long long> stride(dims.size());
    long long s = 1;
    for (size_t ax = dims.size(); ax-- > 0;) {
        stride[ax] = s;
        s *= dims[ax];
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> coord(dims.size(), 0);
    for (int v = 0; v < n; ++v) {
        for (size_t ax = 0; ax < dims.size(); ++ax) {
            int up = coord[ax] + 1 == dims[ax] ? v - static_cast<int>((dims[ax] - 1) * stride[ax])
                                               : v + static_cast<int>(stride[ax]);
            edges.emplace_back(v, up);
        }
        for (size_t ax = dims.size(); ax-- > 0;) {
            if (++coord[ax] < dims[ax]) break;
            coord[ax] = 0;
        }
    }
    std::ostringstream id;
    id << "hypercubic(";
    for (size_t i = 0; i < dims.size(); ++i) id << (i ? "x" : "") << dims[i];
    id << ")";
    return Graph(n, std::move(edges), static_cast<int>(2 * dims.size()), id.str());
}

Graph build_honeycomb_torus(int a, int b) {
    if (a < 2 || b < 2)
        throw InvalidParameterError("build_honeycomb_torus: a, b must be >= 2");
    // Two-site basis on an a x b periodic cell grid. A(i,j) = 2(ib + j),
    // B(i,j) = A(i,j) + 1; B(i,j) neighbors A(i,j), A(i+1,j), A(i,j+1).
    auto A = [&](int i, int j) { return 2 * (((i % a + a) % a) * b + ((j % b + b) % b)); };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(3 * a * b));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            int bij = A(i, j) + 1;
            edges.emplace_back(bij, A(i, j));
            edges.emplace_back(bij, A(i + 1, j));
            edges.emplace_back(bij, A(i, j + 1));
        }
    return Graph(2 * a * b, std::move(edges), 3,
                 "honeycomb(" + std::to_string(a) + "x" + std::to_string(b) + ")");
}

Graph build_prism_torus(int c, int L) {
    if (c < 4 || L < 4 || c % 2 != 0 || L % 2 != 0)
        throw InvalidParameterError("build_prism_torus: c, L must be even and >= 4");
    // Row-major over (j, i): each C_c ring is a contiguous block, so the
    // natural vertex order keeps the matching DP frontier at 2c.
    auto idx = [&](int i, int j) { return j * c + i; };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(2 * c * L));
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < L; ++j) {
            edges.emplace_back(idx(i, j), idx((i + 1) % c, j));
            edges.emplace_back(idx(i, j), idx(i, (j + 1) % L));
        }
    return Graph(c * L, std::move(edges), 4,
                 "prism(" + std::to_string(c) + "x" + std::to_string(L) + ")");
}

namespace {

// Uniform integer in [0, n) by rejection; avoids the
// implementation-defined std::uniform_int_distribution so seeded builds
// are identical across standard libraries.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace

Graph build_random_regular_bipartite(int n_per_side, int r, std::uint64_t seed) {
    if (n_per_side < 1 || r < 1 || r > n_per_side)
        throw InvalidParameterError("build_random_regular_bipartite: need 1 <= r <= N");
    std::mt19937_64 rng(seed);
    const int stubs = n_per_side * r;
    std::vector<int> right(stubs);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (int i = 0; i < stubs; ++i) right[i] = i;
        for (int i = stubs - 1; i > 0; --i) {
            int j = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(i) + 1));
            std::swap(right[i], right[j]);
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(stubs);
        bool simple = true;
        std::vector<std::pair<int, int>> seen;
        seen.reserve(stubs);
        for (int i = 0; i < stubs && simple; ++i) {
            int u = i / r;
            int v = n_per_side + right[i] / r;
            seen.emplace_back(u, v);
        }
        std::sort(seen.begin(), seen.end());
        for (size_t i = 1; i < seen.size(); ++i)
            if (seen[i] == seen[i - 1]) {
                simple = false;
                break;
            }
        if (!simple) continue;
        for (auto e : seen) edges.push_back(e);
        std::ostringstream id;
        id << "random_bipartite(" << n_per_side << ";r=" << r << ";seed=" << seed << ")";
        return Graph(2 * n_per_side, std::move(edges), r, id.str());
    }
    throw ResourceLimitError("build_random_regular_bipartite: no simple graph after 10000 tries");
}

BuiltLattice build_lattice(const LatticeSpec& spec) {
    BuiltLattice out;
    switch (spec.family) {
        case LatticeFamily::cycle:
            if (spec.sizes.size() != 1)
                throw InvalidParameterError("cycle spec needs exactly one size");
            out.graph = build_cycle(spec.sizes[0]);
            break;
        case LatticeFamily::hypercubic_torus:
            out.graph = build_hypercubic_torus(spec.sizes);
            for (int d : spec.sizes)
                if (d == 4) {
                    out.warnings.push_back(
                        "hypercubic side 4: wrap-around 4-cycles inflate pattern counts; "
                        "matching counts remain valid");
                    break;
                }
            break;
        case LatticeFamily::honeycomb_torus:
            if (spec.sizes.size() != 2)
                throw InvalidParameterError("honeycomb spec needs sizes {a, b}");
            out.graph = build_honeycomb_torus(spec.sizes[0], spec.sizes[1]);
            if (spec.sizes[0] < 4 || spec.sizes[1] < 4)
                out.warnings.push_back(
                    "honeycomb side < 4: wrap-around 6-cycles inflate pattern counts; "
                    "matching counts remain valid");
            break;
        case LatticeFamily::prism_torus:
            if (spec.sizes.size() != 2)
                throw InvalidParameterError("prism spec needs sizes {c, L}");
            out.graph = build_prism_torus(spec.sizes[0], spec.sizes[1]);
            if (spec.sizes[1] < 6)
                out.warnings.push_back(
                    "prism length < 6: wrap-around 4-cycles inflate pattern counts; "
                    "matching counts remain valid");
            break;
        case LatticeFamily::random_regular_bipartite: {
            if (spec.sizes.size() != 2)
                throw InvalidParameterError("random_bipartite spec needs sizes {N, r}");
            std::uint64_t seed = spec.seed.value_or(0);
            out.graph = build_random_regular_bipartite(spec.sizes[0], spec.sizes[1], seed);
            break;
        }
    }
    return out;
}

}  // namespace dimer
