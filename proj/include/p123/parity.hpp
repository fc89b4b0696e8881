#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>
#include <p123/labelling.hpp>

#include <deque>
#include <functional>
#include <vector>

namespace p123 {

namespace detail {

struct SpanningTree {
    std::vector<vertex_t> order;          // BFS order, root first
    std::vector<edge_t> parent_edge;      // indexed by local vertex; -1 at the root
};

inline SpanningTree bfs_tree(const ComponentView& h, vertex_t root) {
    SpanningTree t;
    t.parent_edge.assign(h.size(), -1);
    std::vector<char> seen(h.size(), 0);
    auto root_local = h.local_vertex(root);
    if (!root_local) throw precondition_error("exempt vertex is not in the subgraph");
    seen[*root_local] = 1;
    std::deque<vertex_t> queue{root};
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        t.order.push_back(v);
        for (auto [w, e] : h.parent().neighbours(v)) {
            auto lw = h.local_vertex(w);
            if (!lw || seen[*lw]) continue;
            seen[*lw] = 1;
            t.parent_edge[*lw] = e;
            queue.push_back(w);
        }
    }
    if (t.order.size() != h.size()) throw precondition_error("parity relabelling needs a connected subgraph");
    return t;
}

}  // namespace detail

/// Toggles edges of `h` between 1 and `s` so that every vertex other than `exempt` ends with a
/// global s-degree of the parity `want_odd` asks for. Leaf-to-root sweep over a BFS tree rooted
/// at `exempt`; only tree edges of `h` change.
inline void relabel_to_parity(LabelState& st, const ComponentView& h, label_t s, vertex_t exempt,
                              const std::function<bool(vertex_t)>& want_odd) {
    if (s != 2 && s != 3) throw precondition_error("parity label must be 2 or 3");
    for (auto e : h.edges())
        if (st.label(e) != 1 && st.label(e) != s)
            throw precondition_error("subgraph edge carries a label other than 1 or s");
    auto tree = detail::bfs_tree(h, exempt);
    for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
        auto v = *it;
        if (v == exempt) continue;
        bool odd = st.profile(v).count(s) % 2 == 1;
        if (odd == want_odd(v)) continue;
        auto e = tree.parent_edge[*h.local_vertex(v)];
        st.set(e, st.label(e) == 1 ? s : label_t{1});
    }
}

enum class OddSide { exempt_side, other_side };

/// Parity relabelling of a connected bipartite subgraph measured on degrees inside `h`:
/// the side named by `mode` gets odd s-degree (exempt vertex excepted), the other side even.
inline std::vector<LabelChange> parity_relabel(const Graph& g, Labelling& l, const ComponentView& h, label_t s,
                                               vertex_t exempt, OddSide mode) {
    auto tree = detail::bfs_tree(h, exempt);
    std::vector<int> side(h.size(), -1);
    side[*h.local_vertex(exempt)] = 0;
    for (auto v : tree.order) {
        if (v == exempt) continue;
        const auto& ed = g.edge(tree.parent_edge[*h.local_vertex(v)]);
        side[*h.local_vertex(v)] = 1 - side[*h.local_vertex(ed.other(v))];
    }
    for (auto e : h.edges())
        if (side[*h.local_vertex(g.edge(e).u)] == side[*h.local_vertex(g.edge(e).v)])
            throw precondition_error("parity relabelling needs a bipartite subgraph");

    LabelState st(g, l);
    std::vector<int> outside(h.size(), 0);
    for (auto v : h.vertices()) {
        int inside = 0;
        for (auto [w, e] : g.neighbours(v))
            if (h.contains(w) && l[e] == s) ++inside;
        outside[*h.local_vertex(v)] = st.profile(v).count(s) - inside;
    }
    const int odd_side = mode == OddSide::exempt_side ? 0 : 1;
    st.start_journal();
    relabel_to_parity(st, h, s, exempt, [&](vertex_t v) {
        auto lv = *h.local_vertex(v);
        bool inside_odd = side[lv] == odd_side;
        return ((inside_odd ? 1 : 0) + outside[lv]) % 2 == 1;
    });
    auto delta = st.take_journal();
    l = st.labels();
    return delta;
}

}  // namespace p123
