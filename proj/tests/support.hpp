#pragma once

#include <p123/p123.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace p123::testing {

/// Swaps every subset of M_0 and checks independence and the upward-neighbour property each time.
inline bool exhaustive_swap_robust(const Graph& g, const Partition& p) {
    auto m0 = compute_m0(g, p);
    for (std::uint32_t mask = 0; mask < (1u << m0.size()); ++mask) {
        Partition q = p;
        for (std::size_t i = 0; i < m0.size(); ++i)
            if (mask & (1u << i)) q = swap_edge(g, q, m0[i]);
        if (!parts_independent(g, q) || !check_p1(g, q).empty()) return false;
    }
    return true;
}

/// The connected components of g with at least three vertices, each as a standalone graph.
inline std::vector<Graph> nontrivial_components(const Graph& g) {
    std::vector<Graph> out;
    for (auto& c : connected_components(g))
        if (c.size() >= 3) out.push_back(ComponentView(g, c).local_graph());
    return out;
}

/// Products as exact integers; usable while every degree stays below 40.
inline std::vector<edge_t> integer_conflicts(const Graph& g, const Labelling& l) {
    std::vector<std::uint64_t> prod(static_cast<std::size_t>(g.vertex_count()), 1);
    for (edge_t e = 0; e < g.edge_count(); ++e) {
        prod[g.edge(e).u] *= l[e];
        prod[g.edge(e).v] *= l[e];
    }
    std::vector<edge_t> out;
    for (edge_t e = 0; e < g.edge_count(); ++e)
        if (prod[g.edge(e).u] == prod[g.edge(e).v]) out.push_back(e);
    return out;
}

inline Labelling random_labelling(const Graph& g, std::mt19937_64& rng, int k = 3) {
    Labelling l(static_cast<std::size_t>(g.edge_count()));
    std::uniform_int_distribution<int> pick(1, k);
    for (edge_t e = 0; e < g.edge_count(); ++e) l.set(e, static_cast<label_t>(pick(rng)));
    return l;
}

struct BipartiteSample {
    Graph g;
    std::vector<int> side;   // 0 or 1
};

/// Connected bipartite graph: each vertex attaches to an earlier vertex of the other side, plus
/// extra cross edges with probability q.
inline BipartiteSample random_connected_bipartite(vertex_t n, double q, std::mt19937_64& rng) {
    std::vector<int> side(static_cast<std::size_t>(n));
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    std::bernoulli_distribution coin(0.5), extra(q);
    for (vertex_t v = 0; v < n; ++v) {
        side[v] = v == 0 ? 0 : static_cast<int>(coin(rng));
        if (v == 0) continue;
        std::vector<vertex_t> opposite;
        for (vertex_t w = 0; w < v; ++w)
            if (side[w] != side[v]) opposite.push_back(w);
        if (opposite.empty()) {
            side[v] = 1 - side[v];
            for (vertex_t w = 0; w < v; ++w) opposite.push_back(w);
        }
        std::uniform_int_distribution<std::size_t> pick(0, opposite.size() - 1);
        edges.emplace_back(opposite[pick(rng)], v);
    }
    for (vertex_t a = 0; a < n; ++a)
        for (vertex_t b = a + 1; b < n; ++b)
            if (side[a] != side[b] && extra(rng) &&
                std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end())
                edges.emplace_back(a, b);
    return {Graph(n, edges), side};
}

}  // namespace p123::testing
