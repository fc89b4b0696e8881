#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace p123 {

/// Ordered partition (V_1, ..., V_t) of the vertex set. Part indices are 1-based.
class Partition {
public:
    Partition() = default;

    /// `part_of[v]` is the 1-based part of v. Parts may be empty only transiently.
    explicit Partition(std::vector<int> part_of) : part_of_(std::move(part_of)) {
        int t = 0;
        for (int p : part_of_) {
            if (p < 1) throw precondition_error("part index must be >= 1");
            t = std::max(t, p);
        }
        sizes_.assign(static_cast<std::size_t>(t) + 1, 0);
        for (int p : part_of_) ++sizes_[p];
    }

    static Partition from_parts(vertex_t vertex_count, const std::vector<std::vector<vertex_t>>& parts) {
        std::vector<int> part_of(static_cast<std::size_t>(vertex_count), 0);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (auto v : parts[i]) {
                if (v < 0 || v >= vertex_count) throw precondition_error("partition vertex out of range");
                if (part_of[v] != 0) throw precondition_error("vertex in two parts");
                part_of[v] = static_cast<int>(i) + 1;
            }
        }
        for (int p : part_of)
            if (p == 0) throw precondition_error("partition does not cover every vertex");
        return Partition(std::move(part_of));
    }

    vertex_t vertex_count() const noexcept { return static_cast<vertex_t>(part_of_.size()); }
    int part_count() const noexcept { return static_cast<int>(sizes_.size()) - 1; }
    int part_of(vertex_t v) const { return part_of_.at(static_cast<std::size_t>(v)); }
    std::size_t part_size(int i) const { return i >= 1 && i <= part_count() ? sizes_[i] : 0; }
    const std::vector<int>& assignment() const noexcept { return part_of_; }

    /// Members of V_i in ascending order.
    std::vector<vertex_t> part(int i) const {
        std::vector<vertex_t> out;
        for (vertex_t v = 0; v < vertex_count(); ++v)
            if (part_of_[v] == i) out.push_back(v);
        return out;
    }

    void move(vertex_t v, int to) {
        if (to < 1) throw precondition_error("part index must be >= 1");
        if (to > part_count()) sizes_.resize(static_cast<std::size_t>(to) + 1, 0);
        --sizes_[part_of_.at(v)];
        part_of_[v] = to;
        ++sizes_[to];
    }

    void drop_trailing_empty() {
        while (part_count() > 0 && sizes_.back() == 0) sizes_.pop_back();
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.part_of_ == b.part_of_; }

private:
    std::vector<int> part_of_;
    std::vector<std::size_t> sizes_{0};
};

/// One line per part, "V<i>: sorted vertex ids".
inline std::string dump(const Partition& p) {
    std::ostringstream out;
    for (int i = 1; i <= p.part_count(); ++i) {
        out << 'V' << i << ':';
        for (auto v : p.part(i)) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

/// Each vertex, in the given order, joins the smallest part holding none of its placed neighbours.
inline Partition greedy_partition(const Graph& g, std::span<const vertex_t> order) {
    if (static_cast<vertex_t>(order.size()) != g.vertex_count())
        throw precondition_error("order must be a permutation of the vertices");
    std::vector<int> part_of(order.size(), 0);
    std::vector<std::size_t> stamp(order.size() + 2, 0);
    std::size_t round = 0;
    for (auto v : order) {
        if (v < 0 || v >= g.vertex_count() || part_of[v] != 0)
            throw precondition_error("order must be a permutation of the vertices");
        ++round;
        for (auto [w, e] : g.neighbours(v))
            if (part_of[w] != 0) stamp[part_of[w]] = round;
        int j = 1;
        while (stamp[j] == round) ++j;
        part_of[v] = j;
    }
    return Partition(std::move(part_of));
}

/// Descending degree, ties by ascending id.
inline std::vector<vertex_t> degree_order(const Graph& g) {
    std::vector<vertex_t> order(static_cast<std::size_t>(g.vertex_count()));
    for (vertex_t v = 0; v < g.vertex_count(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](vertex_t a, vertex_t b) { return g.degree(a) > g.degree(b); });
    return order;
}

/// f = sum over parts of (index * size).
inline std::int64_t potential(const Partition& p) {
    std::int64_t f = 0;
    for (int i = 1; i <= p.part_count(); ++i) f += static_cast<std::int64_t>(i) * p.part_size(i);
    return f;
}

inline bool parts_independent(const Graph& g, const Partition& p) {
    for (const auto& e : g.edges())
        if (p.part_of(e.u) == p.part_of(e.v)) return false;
    return true;
}

/// Isolated edges of G[V_1 u V_2], ascending edge index. Empty when t < 2.
inline std::vector<edge_t> compute_m0(const Graph& g, const Partition& p) {
    std::vector<edge_t> out;
    if (p.part_count() < 2) return out;
    auto low = [&](vertex_t v) { return p.part_of(v) <= 2; };
    auto low_degree = [&](vertex_t v) {
        int d = 0;
        for (auto [w, e] : g.neighbours(v)) d += low(w) ? 1 : 0;
        return d;
    };
    for (edge_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (!low(ed.u) || !low(ed.v) || p.part_of(ed.u) == p.part_of(ed.v)) continue;
        if (low_degree(ed.u) == 1 && low_degree(ed.v) == 1) out.push_back(e);
    }
    return out;
}

/// Exchanges the V_1 and V_2 ends of an M_0 edge.
inline Partition swap_edge(const Graph& g, const Partition& p, edge_t e) {
    auto m0 = compute_m0(g, p);
    if (!std::binary_search(m0.begin(), m0.end(), e)) throw precondition_error("edge is not in M0");
    Partition out = p;
    const auto& ed = g.edge(e);
    int pu = p.part_of(ed.u);
    out.move(ed.u, p.part_of(ed.v));
    out.move(ed.v, pu);
    return out;
}

struct MissingPart {
    vertex_t vertex;
    int part;
    friend bool operator==(const MissingPart&, const MissingPart&) = default;
};

/// Every (v, j) with j < part(v) such that v has no neighbour in V_j; by vertex then j.
inline std::vector<MissingPart> check_p1(const Graph& g, const Partition& p) {
    std::vector<MissingPart> out;
    std::vector<vertex_t> seen(static_cast<std::size_t>(p.part_count()) + 1, -1);
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        for (auto [w, e] : g.neighbours(v)) seen[p.part_of(w)] = v;
        for (int j = 1; j < p.part_of(v); ++j)
            if (seen[j] != v) out.push_back({v, j});
    }
    return out;
}

/// Certificate that swap-robustness fails: swapping `swaps` leaves `vertex` without a neighbour in V_part.
struct SWitness {
    vertex_t vertex;
    int part;
    std::vector<edge_t> swaps;
    friend bool operator==(const SWitness&, const SWitness&) = default;
};

/// Swap-robustness without subset enumeration. A vertex needing side j in {1,2} is safe iff it has a
/// neighbour in V_j that is not an M_0 end, or it sees both ends of some M_0 edge; otherwise swapping
/// every M_0 edge whose end it sees in V_j strands it.
inline std::optional<SWitness> check_s(const Graph& g, const Partition& p) {
    if (!parts_independent(g, p)) throw precondition_error("check_s requires independent parts");
    if (!check_p1(g, p).empty()) throw precondition_error("check_s requires property P1");

    const auto m0 = compute_m0(g, p);
    std::vector<edge_t> m0_edge_of(static_cast<std::size_t>(g.vertex_count()), -1);
    for (auto e : m0) {
        m0_edge_of[g.edge(e).u] = e;
        m0_edge_of[g.edge(e).v] = e;
    }
    if (m0.empty()) return std::nullopt;

    std::vector<edge_t> seen_edge(static_cast<std::size_t>(g.edge_count()), -1);
    for (vertex_t w = 0; w < g.vertex_count(); ++w) {
        const int i = p.part_of(w);
        if (i < 2 || (i == 2 && m0_edge_of[w] >= 0)) continue;

        bool covers_pair = false;
        for (auto [x, e] : g.neighbours(w)) {
            edge_t me = m0_edge_of[x];
            if (me < 0) continue;
            if (seen_edge[me] == w) covers_pair = true;
            seen_edge[me] = w;
        }
        if (covers_pair) continue;

        for (int j = 1; j <= std::min(2, i - 1); ++j) {
            bool safe = false;
            std::vector<edge_t> swaps;
            for (auto [x, e] : g.neighbours(w)) {
                if (p.part_of(x) != j) continue;
                if (m0_edge_of[x] < 0) {
                    safe = true;
                    break;
                }
                swaps.push_back(m0_edge_of[x]);
            }
            if (!safe) {
                std::sort(swaps.begin(), swaps.end());
                return SWitness{w, j, std::move(swaps)};
            }
        }
    }
    return std::nullopt;
}

struct PartitionStats {
    int moves = 0;       // single-vertex moves to a lower part
    int s_repairs = 0;   // swap-robustness repairs
    int swaps = 0;       // M_0 swaps performed by repairs
};

namespace detail {

inline int lowest_free_part(const Graph& g, const Partition& p, vertex_t v) {
    std::vector<char> hit(static_cast<std::size_t>(p.part_count()) + 2, 0);
    for (auto [w, e] : g.neighbours(v)) hit[p.part_of(w)] = 1;
    int j = 1;
    while (hit[j]) ++j;
    return j;
}

}  // namespace detail

/// Local search on f: move P1 violators down; when swap-robustness fails, perform the witness
/// swaps and move the stranded vertex down. Both steps strictly decrease f.
inline Partition build_valid_partition(const Graph& g, std::optional<Partition> initial = std::nullopt,
                                       PartitionStats* stats = nullptr) {
    if (connected_components(g).size() > 1) throw precondition_error("graph must be connected");
    if (!is_nice(g)) throw not_nice_error();

    Partition p = initial ? *initial : greedy_partition(g, degree_order(g));
    if (p.vertex_count() != g.vertex_count()) throw precondition_error("partition size mismatch");
    if (!parts_independent(g, p)) throw precondition_error("initial partition parts must be independent");

    PartitionStats local;
    const std::int64_t budget = potential(p);
    std::int64_t last = budget;
    for (std::int64_t iter = 0;; ++iter) {
        if (iter > budget) throw unreachable_case("partition repair did not terminate within f(initial) steps");
        p.drop_trailing_empty();

        auto missing = check_p1(g, p);
        if (!missing.empty()) {
            auto v = missing.front().vertex;
            p.move(v, detail::lowest_free_part(g, p, v));
            ++local.moves;
        } else if (auto witness = check_s(g, p)) {
            for (auto e : witness->swaps) p = swap_edge(g, p, e);
            p.move(witness->vertex, detail::lowest_free_part(g, p, witness->vertex));
            ++local.s_repairs;
            local.swaps += static_cast<int>(witness->swaps.size());
        } else {
            break;
        }

        auto f = potential(p);
        if (f >= last) throw unreachable_case("partition repair failed to decrease the potential");
        last = f;
    }
    p.drop_trailing_empty();
    if (stats) *stats = local;
    return p;
}

}  // namespace p123
