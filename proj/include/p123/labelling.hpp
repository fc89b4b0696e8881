#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>

#include <compare>
#include <optional>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace p123 {

using label_t = std::uint8_t;

/// Total map from edge index to a label in {1, 2, 3}.
class Labelling {
public:
    Labelling() = default;
    explicit Labelling(std::size_t edge_count, label_t fill = 1) : labels_(edge_count, checked(fill)) {}

    std::size_t size() const noexcept { return labels_.size(); }
    label_t operator[](edge_t e) const { return labels_.at(static_cast<std::size_t>(e)); }
    void set(edge_t e, label_t label) { labels_.at(static_cast<std::size_t>(e)) = checked(label); }
    const std::vector<label_t>& values() const noexcept { return labels_; }

    friend bool operator==(const Labelling&, const Labelling&) = default;

private:
    static label_t checked(label_t l) {
        if (l < 1 || l > 3) throw precondition_error("label must be 1, 2 or 3");
        return l;
    }

    std::vector<label_t> labels_;
};

/// The product 2^d2 * 3^d3 is represented exactly by its exponents.
struct ProductKey {
    int d2 = 0;
    int d3 = 0;
    friend auto operator<=>(const ProductKey&, const ProductKey&) = default;
};

struct VertexProfile {
    int d1 = 0;
    int d2 = 0;
    int d3 = 0;

    ProductKey key() const noexcept { return {d2, d3}; }
    int nontrivial_degree() const noexcept { return d2 + d3; }

    int count(label_t label) const noexcept { return label == 1 ? d1 : label == 2 ? d2 : d3; }
    friend bool operator==(const VertexProfile&, const VertexProfile&) = default;
};

enum class Chroma { mono1, mono2, mono3, bichromatic };

struct VertexClass {
    Chroma chroma;
    bool special;

    bool monochromatic() const noexcept { return chroma != Chroma::bichromatic; }
    friend bool operator==(const VertexClass&, const VertexClass&) = default;
};

inline const char* to_string(Chroma c) {
    switch (c) {
        case Chroma::mono1: return "mono1";
        case Chroma::mono2: return "mono2";
        case Chroma::mono3: return "mono3";
        case Chroma::bichromatic: return "bichromatic";
    }
    return "?";
}

/// d3 = 1, d2 >= 2, d2 + d3 odd.
inline bool is_special(const VertexProfile& p) noexcept {
    return p.d3 == 1 && p.d2 >= 2 && p.nontrivial_degree() % 2 == 1;
}

inline VertexClass classify(const VertexProfile& p) noexcept {
    Chroma c = p.d2 == 0 ? (p.d3 == 0 ? Chroma::mono1 : Chroma::mono3)
                         : (p.d3 == 0 ? Chroma::mono2 : Chroma::bichromatic);
    return {c, is_special(p)};
}

inline VertexProfile profile(const Graph& g, const Labelling& l, vertex_t v) {
    VertexProfile out;
    for (auto [w, e] : g.neighbours(v)) {
        switch (l[e]) {
            case 1: ++out.d1; break;
            case 2: ++out.d2; break;
            default: ++out.d3; break;
        }
    }
    return out;
}

/// Edges whose ends have equal products, ascending. Recomputed from scratch.
inline std::vector<edge_t> find_conflicts(const Graph& g, const Labelling& l) {
    if (l.size() != static_cast<std::size_t>(g.edge_count()))
        throw precondition_error("labelling does not match the graph's edge count");
    std::vector<ProductKey> keys(static_cast<std::size_t>(g.vertex_count()));
    for (vertex_t v = 0; v < g.vertex_count(); ++v) keys[v] = profile(g, l, v).key();
    std::vector<edge_t> out;
    for (edge_t e = 0; e < g.edge_count(); ++e)
        if (keys[g.edge(e).u] == keys[g.edge(e).v]) out.push_back(e);
    return out;
}

struct LabelChange {
    edge_t edge;
    label_t before;
    label_t after;
    friend bool operator==(const LabelChange&, const LabelChange&) = default;
};

/// A labelling bound to its graph, with per-vertex profiles kept current on every edit.
/// Optionally journals edits so callers can report what a pass changed.
class LabelState {
public:
    LabelState(const Graph& g, Labelling labels) : g_(&g), labels_(std::move(labels)) {
        if (labels_.size() != static_cast<std::size_t>(g.edge_count()))
            throw precondition_error("labelling does not match the graph's edge count");
        profiles_.resize(static_cast<std::size_t>(g.vertex_count()));
        for (vertex_t v = 0; v < g.vertex_count(); ++v) profiles_[v] = p123::profile(g, labels_, v);
    }

    explicit LabelState(const Graph& g) : LabelState(g, Labelling(static_cast<std::size_t>(g.edge_count()))) {}

    const Graph& graph() const noexcept { return *g_; }
    const Labelling& labels() const noexcept { return labels_; }
    label_t label(edge_t e) const { return labels_[e]; }

    const VertexProfile& profile(vertex_t v) const { return profiles_.at(static_cast<std::size_t>(v)); }
    ProductKey key(vertex_t v) const { return profile(v).key(); }
    VertexClass vertex_class(vertex_t v) const { return classify(profile(v)); }
    bool in_conflict(edge_t e) const { return key(g_->edge(e).u) == key(g_->edge(e).v); }

    void set(edge_t e, label_t label) {
        label_t before = labels_[e];
        if (before == label) return;
        labels_.set(e, label);
        const auto& ed = g_->edge(e);
        for (auto v : {ed.u, ed.v}) {
            bump(profiles_[v], before, -1);
            bump(profiles_[v], label, +1);
        }
        if (journal_) journal_->push_back({e, before, label});
    }

    void start_journal() { journal_.emplace(); }
    std::vector<LabelChange> take_journal() {
        auto out = journal_ ? std::move(*journal_) : std::vector<LabelChange>{};
        journal_.reset();
        return out;
    }

private:
    static void bump(VertexProfile& p, label_t l, int by) {
        (l == 1 ? p.d1 : l == 2 ? p.d2 : p.d3) += by;
    }

    const Graph* g_;
    Labelling labels_;
    std::vector<VertexProfile> profiles_;
    std::optional<std::vector<LabelChange>> journal_;
};

/// "u v label" per edge, by edge index.
inline std::string write_labelling(const Graph& g, const Labelling& l) {
    std::ostringstream out;
    for (edge_t e = 0; e < g.edge_count(); ++e)
        out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << static_cast<int>(l[e]) << '\n';
    return out.str();
}

/// "v d2 d3" per vertex.
inline std::string write_products(const Graph& g, const Labelling& l) {
    std::ostringstream out;
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        auto p = profile(g, l, v);
        out << v << ' ' << p.d2 << ' ' << p.d3 << '\n';
    }
    return out.str();
}

/// Reads "u v label" lines; every edge of g must appear exactly once.
inline Labelling parse_labelling(const Graph& g, std::string_view text) {
    Labelling out(static_cast<std::size_t>(g.edge_count()));
    std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
    detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks.front().front() == '#') return;
        if (toks.size() != 3) throw parse_error(no, "expected 'u v label'");
        auto a = detail::parse_id(toks[0], no);
        auto b = detail::parse_id(toks[1], no);
        auto lab = detail::parse_id(toks[2], no);
        if (lab < 1 || lab > 3) throw parse_error(no, "label out of range");
        if (a >= g.vertex_count() || b >= g.vertex_count()) throw parse_error(no, "vertex id out of range");
        auto e = g.find_edge(static_cast<vertex_t>(a), static_cast<vertex_t>(b));
        if (!e) throw parse_error(no, "no such edge");
        if (seen[*e]) throw parse_error(no, "edge labelled twice");
        seen[*e] = 1;
        out.set(*e, static_cast<label_t>(lab));
    });
    for (edge_t e = 0; e < g.edge_count(); ++e)
        if (!seen[e])
            throw parse_error(0, "edge " + std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v) +
                                     " has no label");
    return out;
}

}  // namespace p123
