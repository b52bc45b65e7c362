#include "dimer/matchings.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <thread>

#include "dimer/errors.hpp"

namespace dimer {

int MatchTable::n() const {
    if (num_vertices % 2 != 0)
        throw InvalidInputError("MatchTable::n: odd vertex count has no integer n");
    return num_vertices / 2;
}

MatchTable count_matchings_brute(const Graph& g) {
    const int v_count = g.num_vertices();
    if (v_count > 20)
        throw SizeLimitError("count_matchings_brute: " + std::to_string(v_count) +
                             " vertices exceeds the 20-vertex limit; use the DP");
    MatchTable table;
    table.graph_id = g.id();
    table.num_vertices = v_count;
    table.counts.assign(static_cast<size_t>(v_count / 2) + 1, BigInt(0));

    // Recurse on the lowest-indexed undecided vertex: leave it uncovered,
    // or match it to one free neighbor. Each matching is reached once.
    std::vector<char> used(static_cast<size_t>(v_count), 0);
    auto rec = [&](auto&& self, int from, int j) -> void {
        int v = from;
        while (v < v_count && used[v]) ++v;
        if (v == v_count) {
            ++table.counts[j];
            return;
        }
        used[v] = 1;
        self(self, v + 1, j);  // v stays uncovered
        for (int u : g.neighbors(v)) {
            if (u > v && !used[u]) {
                used[u] = 1;
                self(self, v + 1, j + 1);
                used[u] = 0;
            }
        }
        used[v] = 0;
    };
    rec(rec, 0, 0);

    while (table.counts.size() > 1 && table.counts.back() == 0) table.counts.pop_back();
    return table;
}

std::vector<int> identity_order(const Graph& g) {
    std::vector<int> order(static_cast<size_t>(g.num_vertices()));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

std::vector<int> cuthill_mckee_order(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int start = 0; start < n; ++start) {
        // Pick the unvisited vertex of minimum degree as the next root.
        int root = -1;
        for (int v = 0; v < n; ++v)
            if (!seen[v] && (root == -1 || g.degree(v) < g.degree(root))) root = v;
        if (root == -1) break;
        std::deque<int> queue{root};
        seen[root] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            std::vector<int> next;
            for (int w : g.neighbors(v))
                if (!seen[w]) next.push_back(w);
            std::sort(next.begin(), next.end(), [&](int a, int b) {
                int da = g.degree(a), db = g.degree(b);
                return da != db ? da < db : a < b;
            });
            for (int w : next) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
        if (static_cast<int>(order.size()) == n) break;
    }
    return order;
}

namespace {

struct FrontierPlan {
    std::vector<int> slot_of;        // slot assigned when the vertex is processed, -1 if none
    std::vector<std::vector<int>> release_after;  // slots to merge away after each step
    int width = 0;
};

// Assign frontier slots along the order: a vertex occupies a slot while
// it has unprocessed neighbors; the slot is merged away at the step that
// processes its last neighbor.
FrontierPlan plan_frontier(const Graph& g, const std::vector<int>& order) {
    const int n = g.num_vertices();
    if (static_cast<int>(order.size()) != n)
        throw InvalidParameterError("count_matchings_dp: order size mismatch");
    std::vector<int> pos(static_cast<size_t>(n), -1);
    for (int t = 0; t < n; ++t) {
        int v = order[t];
        if (v < 0 || v >= n || pos[v] != -1)
            throw InvalidParameterError("count_matchings_dp: order is not a permutation");
        pos[v] = t;
    }
    FrontierPlan plan;
    plan.slot_of.assign(static_cast<size_t>(n), -1);
    plan.release_after.assign(static_cast<size_t>(n), {});
    std::vector<int> pending(static_cast<size_t>(n), 0);  // unprocessed neighbors
    for (int v = 0; v < n; ++v) pending[v] = g.degree(v);
    std::vector<int> free_slots;
    int high_water = 0;
    for (int t = 0; t < n; ++t) {
        int v = order[t];
        for (int u : g.neighbors(v)) --pending[u];
        int own_pending = pending[v];
        if (own_pending > 0) {
            int slot;
            if (!free_slots.empty()) {
                slot = free_slots.back();
                free_slots.pop_back();
            } else {
                slot = high_water++;
            }
            plan.slot_of[v] = slot;
        }
        for (int u : g.neighbors(v)) {
            if (pos[u] < t && pending[u] == 0 && plan.slot_of[u] >= 0) {
                plan.release_after[t].push_back(plan.slot_of[u]);
                free_slots.push_back(plan.slot_of[u]);
            }
        }
        std::sort(plan.release_after[t].begin(), plan.release_after[t].end());
    }
    plan.width = high_water;
    return plan;
}

using Layer = std::vector<std::vector<BigInt>>;

void zero_layer(Layer& layer, int jmax) {
    for (auto& row : layer)
        for (int j = 0; j <= jmax; ++j) row[static_cast<size_t>(j)] = 0;
}

// One DP step restricted to target-j in [j_lo, j_hi); used for the
// deterministic j-slice parallelization (exact integer sums commute, and
// each (state, j) cell is written by exactly one slice). A vertex
// entering the frontier starts uncovered (fresh slot bit 0 in every
// source state); when it matches an earlier neighbor, both its own bit
// and the neighbor's bit are set.
void dp_step_slice(const Layer& cur, Layer& nxt, const std::vector<int>& match_slots,
                   int own_slot, int cur_jmax, int j_cap, int j_lo, int j_hi) {
    const size_t nstates = cur.size();
    const size_t own_bit = own_slot >= 0 ? size_t(1) << own_slot : 0;
    for (size_t s = 0; s < nstates; ++s) {
        const auto& src = cur[s];
        int top = std::min(cur_jmax, j_hi - 1);
        for (int j = std::max(0, j_lo); j <= top; ++j) {
            const BigInt& c = src[static_cast<size_t>(j)];
            if (sgn(c) == 0) continue;
            nxt[s][static_cast<size_t>(j)] += c;
        }
        if (j_cap >= 1) {
            int jt_top = std::min({cur_jmax + 1, j_hi - 1, j_cap});
            for (int jt = std::max(1, j_lo); jt <= jt_top; ++jt) {
                const BigInt& c = src[static_cast<size_t>(jt - 1)];
                if (sgn(c) == 0) continue;
                for (int slot : match_slots) {
                    if ((s >> slot) & 1u) continue;  // neighbor already covered
                    size_t target = s | (size_t(1) << slot) | own_bit;
                    nxt[target][static_cast<size_t>(jt)] += c;
                }
            }
        }
    }
}

void merge_slot_slice(Layer& layer, int slot, int jmax, int j_lo, int j_hi) {
    const size_t nstates = layer.size();
    const size_t bit = size_t(1) << slot;
    int top = std::min(jmax, j_hi - 1);
    for (size_t s = 0; s < nstates; ++s) {
        if (!(s & bit)) continue;
        size_t low = s & ~bit;
        for (int j = std::max(0, j_lo); j <= top; ++j) {
            BigInt& c = layer[s][static_cast<size_t>(j)];
            if (sgn(c) == 0) continue;
            layer[low][static_cast<size_t>(j)] += c;
            c = 0;
        }
    }
}

void run_sliced(int threads, int jmax, const std::function<void(int, int)>& body) {
    if (threads <= 1 || jmax < 1) {
        body(0, jmax + 1);
        return;
    }
    int nthreads = std::min(threads, jmax + 1);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    int per = (jmax + 1 + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        int lo = t * per;
        int hi = std::min(jmax + 1, lo + per);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

MatchTable count_matchings_dp(const Graph& g, const std::vector<int>& order,
                              const DpOptions& opts) {
    const int n = g.num_vertices();
    FrontierPlan plan = plan_frontier(g, order);
    if (plan.width > opts.width_budget)
        throw ResourceLimitError("count_matchings_dp: frontier width " +
                                 std::to_string(plan.width) + " exceeds budget " +
                                 std::to_string(opts.width_budget));
    const int j_cap = opts.j_cap >= 0 ? std::min(opts.j_cap, n / 2) : n / 2;

    std::vector<int> pos(static_cast<size_t>(n), -1);
    for (int t = 0; t < n; ++t) pos[order[t]] = t;

    const size_t nstates = size_t(1) << plan.width;
    Layer cur(nstates), nxt(nstates);
    for (size_t s = 0; s < nstates; ++s) {
        cur[s].assign(static_cast<size_t>(j_cap) + 1, BigInt(0));
        nxt[s].assign(static_cast<size_t>(j_cap) + 1, BigInt(0));
    }
    cur[0][0] = 1;
    int cur_jmax = 0;

    for (int t = 0; t < n; ++t) {
        int v = order[t];
        // Slots of already-processed, still-tracked neighbors.
        std::vector<int> match_slots;
        for (int u : g.neighbors(v))
            if (pos[u] < t && plan.slot_of[u] >= 0) match_slots.push_back(plan.slot_of[u]);
        std::sort(match_slots.begin(), match_slots.end());

        int step_jmax = std::min(j_cap, cur_jmax + 1);
        zero_layer(nxt, step_jmax);
        run_sliced(opts.threads, step_jmax, [&](int lo, int hi) {
            dp_step_slice(cur, nxt, match_slots, plan.slot_of[v], cur_jmax, j_cap, lo, hi);
        });
        cur.swap(nxt);
        cur_jmax = step_jmax;

        for (int slot : plan.release_after[t]) {
            run_sliced(opts.threads, cur_jmax, [&](int lo, int hi) {
                merge_slot_slice(cur, slot, cur_jmax, lo, hi);
            });
        }
    }

    MatchTable table;
    table.graph_id = g.id();
    table.num_vertices = n;
    table.counts.assign(static_cast<size_t>(j_cap) + 1, BigInt(0));
    // Every slot is merged away by the last step, so state 0 holds the totals.
    for (int j = 0; j <= j_cap; ++j) table.counts[static_cast<size_t>(j)] = cur[0][static_cast<size_t>(j)];
    while (table.counts.size() > 1 && table.counts.back() == 0) table.counts.pop_back();
    return table;
}

MatchTable count_matchings_auto(const Graph& g, const DpOptions& opts) {
    auto natural = identity_order(g);
    auto cm = cuthill_mckee_order(g);
    int w_nat = frontier_width(g, natural);
    int w_cm = frontier_width(g, cm);
    return count_matchings_dp(g, w_cm < w_nat ? cm : natural, opts);
}

int frontier_width(const Graph& g, const std::vector<int>& order) {
    return plan_frontier(g, order).width;
}

std::vector<LambdaSample> lambda_samples(const MatchTable& table) {
    std::vector<LambdaSample> out;
    const int v_count = table.num_vertices;
    if (v_count <= 0) throw InvalidInputError("lambda_samples: empty table");
    for (int j = 0; j <= table.max_j(); ++j) {
        const BigInt& m = table.counts[static_cast<size_t>(j)];
        if (sgn(m) <= 0) continue;
        LambdaSample s;
        s.p = make_rational(2L * j, v_count);
        s.lambda = j == 0 ? 0.0 : log_bigint(m) / v_count;
        s.j = j;
        s.n2 = v_count;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace dimer
