#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>
#include <p123/labelling.hpp>
#include <p123/partition.hpp>
#include <p123/step2.hpp>
#include <p123/step3.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace p123 {

struct PipelineStats {
    int partition_moves = 0;
    int partition_repairs = 0;
    int partition_swaps = 0;
    int step2_swaps = 0;
    int components_fixed = 0;
    std::map<std::string, int> claims;   // claim or case name -> components it fixed
};

struct PipelineReport {
    Labelling labelling;
    Partition partition;                            // part indices of each graph component, merged
    Labelling before_step3;                         // labelling as step 2 left it
    std::vector<std::vector<vertex_t>> fixed;       // vertex sets of the components step 3 relabelled
    PipelineStats stats;
    std::vector<edge_t> conflicts;                  // recomputed from scratch after the run
    std::vector<std::string> trace;

    bool verified() const noexcept { return conflicts.empty(); }
};

/// Runs partition, step 2 and step 3 on every connected component with an edge.
inline PipelineReport label_graph(const Graph& g, bool trace = false) {
    if (!is_nice(g)) throw not_nice_error();
    PipelineReport out;
    out.labelling = Labelling(static_cast<std::size_t>(g.edge_count()));
    out.before_step3 = out.labelling;
    std::vector<int> part_of(static_cast<std::size_t>(g.vertex_count()), 1);

    for (const auto& comp : connected_components(g)) {
        if (comp.size() < 2) continue;
        ComponentView view(g, comp);
        Graph local = view.local_graph();

        PartitionStats ps;
        Partition p = build_valid_partition(local, std::nullopt, &ps);
        out.stats.partition_moves += ps.moves;
        out.stats.partition_repairs += ps.s_repairs;
        out.stats.partition_swaps += ps.swaps;

        auto s2 = run_step2(local, p, trace);
        out.stats.step2_swaps += s2.swaps;
        auto s3 = run_step3(local, s2.partition, s2.labelling, trace);
        auto comps3 = conflict_components(local, s2.partition, s2.labelling);

        if (trace) {
            out.trace.push_back("component " + std::to_string(comp.front()) + " |V|=" + std::to_string(comp.size()) +
                                " |E|=" + std::to_string(local.edge_count()) +
                                " parts=" + std::to_string(s2.partition.part_count()));
            for (auto& t : s2.trace) out.trace.push_back("step2 " + t);
            for (auto& t : s3.trace) out.trace.push_back("step3 " + t);
        }
        for (auto kind : s3.fixes) ++out.stats.claims[to_string(kind)];
        out.stats.components_fixed += static_cast<int>(s3.fixes.size());
        for (const auto& c : comps3) {
            std::vector<vertex_t> global;
            for (auto v : c.view.vertices()) global.push_back(view.global_vertex(v));
            out.fixed.push_back(std::move(global));
        }
        for (edge_t e = 0; e < local.edge_count(); ++e) {
            out.before_step3.set(view.global_edge(e), s2.labelling[e]);
            out.labelling.set(view.global_edge(e), s3.labelling[e]);
        }
        for (vertex_t v = 0; v < local.vertex_count(); ++v)
            part_of[view.global_vertex(v)] = s2.partition.part_of(v);
    }
    out.partition = Partition(std::move(part_of));
    out.conflicts = find_conflicts(g, out.labelling);
    return out;
}

/// Vertices outside every fixed component whose (d2, d3) key step 3 changed.
inline std::vector<vertex_t> locality_violations(const Graph& g, const PipelineReport& r) {
    std::vector<char> inside(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& c : r.fixed)
        for (auto v : c) inside[v] = 1;
    std::vector<vertex_t> out;
    for (vertex_t v = 0; v < g.vertex_count(); ++v)
        if (!inside[v] && profile(g, r.before_step3, v).key() != profile(g, r.labelling, v).key()) out.push_back(v);
    return out;
}

namespace detail {

constexpr std::array<int, 6> oracle_primes{2, 3, 5, 7, 11, 13};
using PrimeKey = std::array<std::int8_t, oracle_primes.size()>;

inline PrimeKey factor_label(int label) {
    PrimeKey k{};
    for (std::size_t i = 0; i < oracle_primes.size(); ++i)
        while (label % oracle_primes[i] == 0) {
            label /= oracle_primes[i];
            ++k[i];
        }
    return k;
}

class ProperSearch {
public:
    ProperSearch(const Graph& g, int k) : g_(g), k_(k), keys_(static_cast<std::size_t>(g.vertex_count())) {
        for (int l = 1; l <= k; ++l) factors_.push_back(factor_label(l));
        last_edge_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
        for (edge_t e = 0; e < g.edge_count(); ++e) {
            last_edge_[g.edge(e).u] = e;
            last_edge_[g.edge(e).v] = e;
        }
        for (vertex_t v = 0; v < g.vertex_count(); ++v)
            if (last_edge_[v] >= 0) closing_[last_edge_[v]].push_back(v);
    }

    bool run() { return place(0); }

private:
    bool place(edge_t e) {
        if (e == g_.edge_count()) return true;
        const auto& ed = g_.edge(e);
        for (int l = 1; l <= k_; ++l) {
            apply(ed, l, +1);
            if (closed_ok(e) && place(e + 1)) return true;
            apply(ed, l, -1);
        }
        return false;
    }

    void apply(const Edge& ed, int l, int by) {
        const auto& f = factors_[l - 1];
        for (std::size_t i = 0; i < f.size(); ++i) {
            keys_[ed.u][i] = static_cast<std::int8_t>(keys_[ed.u][i] + by * f[i]);
            keys_[ed.v][i] = static_cast<std::int8_t>(keys_[ed.v][i] + by * f[i]);
        }
    }

    // A vertex's product is final once its highest-indexed edge is placed; check it against
    // every neighbour whose product is final too.
    bool closed_ok(edge_t e) const {
        auto it = closing_.find(e);
        if (it == closing_.end()) return true;
        for (auto v : it->second)
            for (auto [w, we] : g_.neighbours(v))
                if (last_edge_[w] <= e && keys_[v] == keys_[w]) return false;
        return true;
    }

    const Graph& g_;
    int k_;
    std::vector<PrimeKey> factors_;
    std::vector<PrimeKey> keys_;
    std::vector<edge_t> last_edge_;
    std::map<edge_t, std::vector<vertex_t>> closing_;
};

}  // namespace detail

inline constexpr int oracle_max_edges = 16;
inline constexpr int oracle_max_k = 16;

/// Smallest k <= k_max admitting a p-proper k-labelling, by exhaustive search; nullopt if none.
inline std::optional<int> brute_force_min_k(const Graph& g, int k_max) {
    if (g.edge_count() > oracle_max_edges)
        throw precondition_error("oracle supports at most " + std::to_string(oracle_max_edges) + " edges");
    if (k_max < 1 || k_max > oracle_max_k)
        throw precondition_error("k_max must lie in 1.." + std::to_string(oracle_max_k));
    if (g.edge_count() == 0) return 1;
    for (int k = 1; k <= k_max; ++k)
        if (detail::ProperSearch(g, k).run()) return k;
    return std::nullopt;
}

/// G(n, p) with each pair drawn in lexicographic order from one mt19937_64 stream, then every
/// K_2 component is joined to the lowest-id vertex outside it (or its edge dropped when n = 2).
inline Graph random_nice_graph(vertex_t n, double p, std::uint64_t seed) {
    if (n < 1) throw precondition_error("n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) throw precondition_error("p must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    const bool always = p >= 1.0;
    const auto threshold = always ? 0 : static_cast<std::uint64_t>(std::ldexp(p, 64));
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    for (vertex_t a = 0; a < n; ++a)
        for (vertex_t b = a + 1; b < n; ++b)
            if (auto draw = rng(); always || draw < threshold) edges.emplace_back(a, b);

    for (;;) {
        Graph g(n, edges);
        std::optional<std::vector<vertex_t>> k2;
        for (auto& c : connected_components(g))
            if (c.size() == 2 && g.adjacent(c[0], c[1])) {
                k2 = c;
                break;
            }
        if (!k2) return g;
        if (n == 2) {
            edges.clear();
            continue;
        }
        vertex_t other = 0;
        while (other == (*k2)[0] || other == (*k2)[1]) ++other;
        edges.emplace_back(std::min((*k2)[0], other), std::max((*k2)[0], other));
    }
}

}  // namespace p123
