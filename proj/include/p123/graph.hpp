#pragma once

#include <p123/error.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace p123 {

using vertex_t = std::int32_t;
using edge_t = std::int32_t;

/// Undirected edge, stored with u < v.
struct Edge {
    vertex_t u;
    vertex_t v;

    vertex_t other(vertex_t x) const noexcept { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
    vertex_t neighbour;
    edge_t edge;
};

/// Immutable simple undirected graph on vertices 0..n-1.
/// Edge indices follow construction order; adjacency lists are sorted by neighbour id.
class Graph {
public:
    Graph() = default;

    explicit Graph(vertex_t vertex_count) : adjacency_(checked_count(vertex_count)) {}

    Graph(vertex_t vertex_count, std::span<const std::pair<vertex_t, vertex_t>> edges)
        : Graph(vertex_count) {
        edges_.reserve(edges.size());
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
                throw precondition_error("edge endpoint out of range");
            if (a == b) throw precondition_error("self-loop at vertex " + std::to_string(a));
            const auto e = static_cast<edge_t>(edges_.size());
            edges_.push_back({std::min(a, b), std::max(a, b)});
            adjacency_[a].push_back({b, e});
            adjacency_[b].push_back({a, e});
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end(),
                      [](const Incidence& x, const Incidence& y) { return x.neighbour < y.neighbour; });
            for (std::size_t i = 1; i < list.size(); ++i)
                if (list[i].neighbour == list[i - 1].neighbour)
                    throw precondition_error("duplicate edge " + std::to_string(list[i].neighbour));
        }
    }

    Graph(vertex_t vertex_count, std::initializer_list<std::pair<vertex_t, vertex_t>> edges)
        : Graph(vertex_count, std::span<const std::pair<vertex_t, vertex_t>>(edges.begin(), edges.size())) {}

    vertex_t vertex_count() const noexcept { return static_cast<vertex_t>(adjacency_.size()); }
    edge_t edge_count() const noexcept { return static_cast<edge_t>(edges_.size()); }

    const Edge& edge(edge_t e) const { return edges_.at(static_cast<std::size_t>(e)); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Incidence> neighbours(vertex_t v) const {
        return adjacency_.at(static_cast<std::size_t>(v));
    }

    std::size_t degree(vertex_t v) const { return neighbours(v).size(); }

    std::optional<edge_t> find_edge(vertex_t a, vertex_t b) const {
        if (degree(a) > degree(b)) std::swap(a, b);
        auto list = neighbours(a);
        auto it = std::lower_bound(list.begin(), list.end(), b,
                                   [](const Incidence& x, vertex_t id) { return x.neighbour < id; });
        if (it == list.end() || it->neighbour != b) return std::nullopt;
        return it->edge;
    }

    bool adjacent(vertex_t a, vertex_t b) const { return find_edge(a, b).has_value(); }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count() == b.vertex_count() &&
               std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end());
    }

private:
    static std::size_t checked_count(vertex_t n) {
        if (n < 0) throw precondition_error("negative vertex count");
        return static_cast<std::size_t>(n);
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::int64_t parse_id(std::string_view tok, std::size_t line) {
    if (tok.empty() || tok.size() > 10) throw parse_error(line, "malformed token '" + std::string(tok) + "'");
    std::int64_t value = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw parse_error(line, "malformed token '" + std::string(tok) + "'");
        value = value * 10 + (c - '0');
    }
    if (value > INT32_MAX - 1) throw parse_error(line, "id too large '" + std::string(tok) + "'");
    return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        fn(text.substr(start, end - start), line_no);
        if (end == text.size()) break;
        start = end + 1;
    }
}

/// Collects edges and rejects self-loops and repeats with the offending line number.
class EdgeCollector {
public:
    void add(std::int64_t a, std::int64_t b, std::size_t line) {
        if (a == b) throw parse_error(line, "self-loop at vertex " + std::to_string(a));
        auto key = std::pair{std::min(a, b), std::max(a, b)};
        if (!seen_.insert(key).second)
            throw parse_error(line, "duplicate edge " + std::to_string(a) + " " + std::to_string(b));
        edges_.emplace_back(static_cast<vertex_t>(a), static_cast<vertex_t>(b));
        max_id_ = std::max({max_id_, a, b});
    }

    std::int64_t max_id() const { return max_id_; }
    const std::vector<std::pair<vertex_t, vertex_t>>& edges() const { return edges_; }

private:
    std::set<std::pair<std::int64_t, std::int64_t>> seen_;
    std::vector<std::pair<vertex_t, vertex_t>> edges_;
    std::int64_t max_id_ = -1;
};

}  // namespace detail

/// Parses "u v" lines with 0-based ids. '#' lines and blank lines are skipped.
/// An optional "n <count>" line fixes the vertex count; otherwise it is 1 + the largest id.
inline Graph parse_edge_list(std::string_view text) {
    detail::EdgeCollector edges;
    std::optional<std::int64_t> declared;
    std::size_t declared_line = 0;
    detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks.front().front() == '#') return;
        if (toks.front() == "n") {
            if (toks.size() != 2) throw parse_error(no, "expected 'n <count>'");
            if (declared) throw parse_error(no, "duplicate vertex count line");
            declared = detail::parse_id(toks[1], no);
            declared_line = no;
            return;
        }
        if (toks.size() != 2) throw parse_error(no, "expected 'u v'");
        edges.add(detail::parse_id(toks[0], no), detail::parse_id(toks[1], no), no);
    });
    std::int64_t n = edges.max_id() + 1;
    if (declared) {
        if (*declared < n) throw parse_error(declared_line, "vertex id out of range for declared count");
        n = *declared;
    }
    return Graph(static_cast<vertex_t>(n), edges.edges());
}

/// Parses DIMACS "p edge n m" / "e u v" text with 1-based ids.
inline Graph parse_dimacs(std::string_view text) {
    detail::EdgeCollector edges;
    std::optional<std::pair<std::int64_t, std::int64_t>> problem;
    std::size_t last_line = 0;
    detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
        last_line = no;
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks.front() == "c") return;
        if (toks.front() == "p") {
            if (problem) throw parse_error(no, "duplicate problem line");
            if (toks.size() != 4 || (toks[1] != "edge" && toks[1] != "col"))
                throw parse_error(no, "expected 'p edge <n> <m>'");
            problem = std::pair{detail::parse_id(toks[2], no), detail::parse_id(toks[3], no)};
            return;
        }
        if (toks.front() == "e") {
            if (!problem) throw parse_error(no, "edge before problem line");
            if (toks.size() != 3) throw parse_error(no, "expected 'e <u> <v>'");
            auto a = detail::parse_id(toks[1], no);
            auto b = detail::parse_id(toks[2], no);
            if (a < 1 || b < 1 || a > problem->first || b > problem->first)
                throw parse_error(no, "vertex id out of range");
            edges.add(a - 1, b - 1, no);
            return;
        }
        throw parse_error(no, "unknown line type '" + std::string(toks.front()) + "'");
    });
    if (!problem) throw parse_error(0, "missing problem line");
    if (static_cast<std::int64_t>(edges.edges().size()) != problem->second)
        throw parse_error(last_line, "edge count mismatch: declared " + std::to_string(problem->second) +
                                         ", found " + std::to_string(edges.edges().size()));
    return Graph(static_cast<vertex_t>(problem->first), edges.edges());
}

/// Edge-list text that `parse_edge_list` reads back to an identical graph.
inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

/// Components of the subgraph induced by `vertices`.
/// Each component is sorted; components are ordered by their smallest vertex.
inline std::vector<std::vector<vertex_t>> induced_components(const Graph& g,
                                                            std::span<const vertex_t> vertices) {
    std::vector<char> allowed(static_cast<std::size_t>(g.vertex_count()), 0);
    for (auto v : vertices) allowed[v] = 1;
    std::vector<vertex_t> order(vertices.begin(), vertices.end());
    std::sort(order.begin(), order.end());

    std::vector<std::vector<vertex_t>> out;
    std::deque<vertex_t> queue;
    for (auto s : order) {
        if (allowed[s] != 1) continue;
        auto& comp = out.emplace_back();
        allowed[s] = 2;
        queue.push_back(s);
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (auto [w, e] : g.neighbours(v)) {
                if (allowed[w] == 1) {
                    allowed[w] = 2;
                    queue.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
    }
    return out;
}

inline std::vector<std::vector<vertex_t>> connected_components(const Graph& g) {
    std::vector<vertex_t> all(static_cast<std::size_t>(g.vertex_count()));
    for (vertex_t v = 0; v < g.vertex_count(); ++v) all[v] = v;
    return induced_components(g, all);
}

/// True iff no connected component is a single edge.
inline bool is_nice(const Graph& g) {
    for (const auto& comp : connected_components(g))
        if (comp.size() == 2) return false;
    return true;
}

/// Induced subgraph of a parent graph on a vertex subset, with index maps both ways.
/// Local vertex i is the i-th smallest global id; local edges are the induced parent
/// edges in ascending parent edge index.
class ComponentView {
public:
    ComponentView(const Graph& parent, std::vector<vertex_t> vertices)
        : parent_(&parent), vertices_(std::move(vertices)) {
        std::sort(vertices_.begin(), vertices_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw precondition_error("repeated vertex in component view");
        for (auto v : vertices_) {
            if (v < 0 || v >= parent.vertex_count()) throw precondition_error("view vertex out of range");
            for (auto [w, e] : parent.neighbours(v))
                if (v < w && contains(w)) edges_.push_back(e);
        }
        std::sort(edges_.begin(), edges_.end());
    }

    const Graph& parent() const noexcept { return *parent_; }
    std::span<const vertex_t> vertices() const noexcept { return vertices_; }
    std::span<const edge_t> edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    bool contains(vertex_t v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    std::optional<vertex_t> local_vertex(vertex_t global) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), global);
        if (it == vertices_.end() || *it != global) return std::nullopt;
        return static_cast<vertex_t>(it - vertices_.begin());
    }
    vertex_t global_vertex(vertex_t local) const { return vertices_.at(static_cast<std::size_t>(local)); }

    std::optional<edge_t> local_edge(edge_t global) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), global);
        if (it == edges_.end() || *it != global) return std::nullopt;
        return static_cast<edge_t>(it - edges_.begin());
    }
    edge_t global_edge(edge_t local) const { return edges_.at(static_cast<std::size_t>(local)); }

    /// Neighbours of `v` inside the view (global ids), ascending.
    std::vector<Incidence> neighbours(vertex_t v) const {
        std::vector<Incidence> out;
        for (auto inc : parent_->neighbours(v))
            if (contains(inc.neighbour)) out.push_back(inc);
        return out;
    }

    std::size_t degree(vertex_t v) const { return neighbours(v).size(); }

    bool is_connected() const {
        return vertices_.empty() || induced_components(*parent_, vertices_).size() == 1;
    }

    /// Standalone copy with local ids.
    Graph local_graph() const {
        std::vector<std::pair<vertex_t, vertex_t>> local;
        local.reserve(edges_.size());
        for (auto e : edges_) {
            const auto& ed = parent_->edge(e);
            local.emplace_back(*local_vertex(ed.u), *local_vertex(ed.v));
        }
        return Graph(static_cast<vertex_t>(vertices_.size()), local);
    }

private:
    const Graph* parent_;
    std::vector<vertex_t> vertices_;
    std::vector<edge_t> edges_;
};

}  // namespace p123
