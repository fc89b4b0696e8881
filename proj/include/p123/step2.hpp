#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>
#include <p123/labelling.hpp>
#include <p123/partition.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace p123 {

/// Product type required of a vertex in V_i once every part below V_2 has been processed.
struct TargetProfile {
    enum class Kind {
        mono1_or_mono3,  // V_1
        mono1_or_mono2,  // V_2
        fixed_d2,        // odd parts from V_3 on: d2 == count
        fixed_d3,        // even parts from V_4 on: d3 == count
    };

    int part;
    Kind kind;
    int count;      // required d2 or d3 for the fixed kinds
    bool odd_sum;   // required parity of d2 + d3 for the fixed kinds

    bool matches(const VertexProfile& p) const noexcept {
        auto c = classify(p).chroma;
        switch (kind) {
            case Kind::mono1_or_mono3: return c == Chroma::mono1 || c == Chroma::mono3;
            case Kind::mono1_or_mono2: return c == Chroma::mono1 || c == Chroma::mono2;
            case Kind::fixed_d2:
                return c == Chroma::bichromatic && p.d2 == count && (p.nontrivial_degree() % 2 == 1) == odd_sum;
            case Kind::fixed_d3:
                return c == Chroma::bichromatic && p.d3 == count && (p.nontrivial_degree() % 2 == 1) == odd_sum;
        }
        return false;
    }
};

inline TargetProfile target_profile(int i, int t) {
    using K = TargetProfile::Kind;
    if (i < 1 || i > t) throw precondition_error("part index out of range");
    if (i == 1) return {1, K::mono1_or_mono3, 0, false};
    if (i == 2) return {2, K::mono1_or_mono2, 0, false};
    if (i % 2 == 0) return {i, K::fixed_d3, i / 2, true};
    return {i, K::fixed_d2, (i - 1) / 2, false};
}

struct Step2Result {
    Labelling labelling;
    Partition partition;
    int swaps = 0;
    std::vector<std::string> trace;
};

namespace detail {

inline label_t label_towards(int part) { return part % 2 == 1 ? 3 : 2; }

class Step2Pass {
public:
    Step2Pass(const Graph& g, Partition p, bool tracing)
        : g_(g), p_(std::move(p)), state_(g), tracing_(tracing) {
        m0_edge_of_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
        in_m_.assign(static_cast<std::size_t>(g.edge_count()), 0);
        for (auto e : compute_m0(g, p_)) {
            m0_edge_of_[g.edge(e).u] = e;
            m0_edge_of_[g.edge(e).v] = e;
            in_m_[e] = 1;
        }
    }

    Step2Result run() {
        for (int i = p_.part_count(); i >= 3; --i)
            for (auto u : p_.part(i)) treat(u, i);
        return {state_.labels(), p_, swaps_, std::move(trace_)};
    }

private:
    struct Handle {
        vertex_t vertex;
        edge_t edge;
    };

    void treat(vertex_t u, int i) {
        const bool even = i % 2 == 0;
        const int pri_side = even ? 1 : 2;   // x on this side takes the label whose count is fixed
        const int sec_side = even ? 2 : 1;   // S_u is moved to this side
        const label_t pri = label_towards(pri_side);
        const label_t sec = label_towards(sec_side);
        const bool want_odd = even;
        std::ostringstream log;
        log << "u=" << u << " part=" << i;

        // M_u and the chosen end S_u of each of its edges.
        std::vector<edge_t> mu;
        std::vector<vertex_t> su;
        for (auto [x, e] : g_.neighbours(u)) {
            auto me = m0_edge_of_[x];
            if (me < 0 || !in_m_[me] || std::find(mu.begin(), mu.end(), me) != mu.end()) continue;
            const auto& ed = g_.edge(me);
            bool su_u = g_.adjacent(u, ed.u);
            bool su_v = g_.adjacent(u, ed.v);
            vertex_t end = x;
            if (su_u && su_v) end = p_.part_of(ed.u) == sec_side ? ed.u : ed.v;
            mu.push_back(me);
            su.push_back(end);
        }
        for (std::size_t k = 0; k < mu.size(); ++k) {
            if (p_.part_of(su[k]) != sec_side) {
                swap(mu[k]);
                log << " swap=" << mu[k];
            }
        }

        std::vector<std::optional<Handle>> x(static_cast<std::size_t>(i), std::nullopt);
        for (auto [w, e] : g_.neighbours(u)) {
            int j = p_.part_of(w);
            if (j >= i || x[j]) continue;
            if (j == pri_side && std::find(su.begin(), su.end(), w) != su.end()) continue;
            x[j] = Handle{w, e};
        }
        for (int j = 1; j < i; ++j)
            if (!x[j])
                throw unreachable_case("vertex " + std::to_string(u) + " lacks a neighbour in V_" +
                                       std::to_string(j) + " (partition not valid)");

        auto label_x = [&](int j, label_t l) { state_.set(x[j]->edge, l); };
        auto sec_count = [&] { return state_.profile(u).count(sec); };
        auto parity_ok = [&] { return (state_.profile(u).nontrivial_degree() % 2 == 1) == want_odd; };

        for (int j = 3; j < i; ++j)
            if ((j - (i - 1)) % 2 == 0) label_x(j, pri);

        if (mu.empty()) {
            log << " branch=no-mu";
            label_x(pri_side, pri);
            if (i > 3) label_x(i - 2, sec);
            if (!parity_ok()) {
                auto e = x[sec_side]->edge;
                state_.set(e, state_.label(e) == 1 ? sec : label_t{1});
            }
        } else {
            auto zpos = std::min_element(su.begin(), su.end()) - su.begin();
            vertex_t z = su[zpos];
            edge_t ze = mu[zpos];
            for (auto w : su)
                if (w != z) state_.set(*g_.find_edge(u, w), sec);

            if (!parity_ok() && sec_count() == 0) {
                if (i <= 4)
                    throw unreachable_case("part " + std::to_string(i) + " vertex " + std::to_string(u) +
                                           " reached the excluded wrong-parity, no-" + std::to_string(sec) +
                                           " branch");
                label_x(i - 2, sec);
                log << " fallback";
            }
            if (parity_ok()) {
                log << " branch=keep-parity z=" << z;
                state_.set(*g_.find_edge(u, z), sec);
                label_x(pri_side, pri);
            } else {
                log << " branch=swap-z z=" << z;
                swap(ze);
                state_.set(*g_.find_edge(u, z), pri);
            }
            for (auto e : mu) {
                const auto& ed = g_.edge(e);
                if (state_.vertex_class(ed.u).chroma == Chroma::mono1 &&
                    state_.vertex_class(ed.v).chroma == Chroma::mono1)
                    throw unreachable_case("M_u edge still has two 1-monochromatic ends");
                in_m_[e] = 0;
            }
        }

        const auto target = target_profile(i, p_.part_count());
        const auto& prof = state_.profile(u);
        if (!target.matches(prof) || is_special(prof))
            throw unreachable_case("vertex " + std::to_string(u) + " missed its product type in part " +
                                   std::to_string(i));
        if (tracing_) {
            log << " d2=" << prof.d2 << " d3=" << prof.d3;
            trace_.push_back(log.str());
        }
    }

    void swap(edge_t e) {
        const auto& ed = g_.edge(e);
        int pu = p_.part_of(ed.u);
        p_.move(ed.u, p_.part_of(ed.v));
        p_.move(ed.v, pu);
        ++swaps_;
    }

    const Graph& g_;
    Partition p_;
    LabelState state_;
    bool tracing_;
    std::vector<edge_t> m0_edge_of_;
    std::vector<char> in_m_;
    int swaps_ = 0;
    std::vector<std::string> trace_;
};

}  // namespace detail

/// From the all-1 labelling, gives every vertex of V_t, ..., V_3 (in that order, ascending id
/// within a part) its part's product type by relabelling its upward edges, swapping M_0 edges
/// where needed so that no isolated V_1-V_2 edge keeps two 1-monochromatic ends.
inline Step2Result run_step2(const Graph& g, const Partition& p, bool trace = false) {
    if (p.vertex_count() != g.vertex_count()) throw precondition_error("partition size mismatch");
    if (!parts_independent(g, p) || !check_p1(g, p).empty() || check_s(g, p))
        throw precondition_error("run_step2 requires a valid partition");
    return detail::Step2Pass(g, p, trace).run();
}

/// Violations of the step-2 postconditions, one message each; empty when all hold.
inline std::vector<std::string> step2_violations(const Graph& g, const Partition& p, const Labelling& l) {
    std::vector<std::string> out;
    auto note = [&](const std::string& s) { out.push_back(s); };
    std::vector<VertexProfile> prof(static_cast<std::size_t>(g.vertex_count()));
    for (vertex_t v = 0; v < g.vertex_count(); ++v) prof[v] = profile(g, l, v);

    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        int i = p.part_of(v);
        auto c = classify(prof[v]);
        if (i == 1 && c.chroma != Chroma::mono1 && c.chroma != Chroma::mono3)
            note("V1 vertex neither MONO1 nor MONO3: " + std::to_string(v));
        if (i == 2 && c.chroma != Chroma::mono1 && c.chroma != Chroma::mono2)
            note("V2 vertex neither MONO1 nor MONO2: " + std::to_string(v));
        if (i >= 3 && c.chroma != Chroma::bichromatic) note("upper-part vertex not bichromatic: " + std::to_string(v));
        if (c.special) note("special vertex: " + std::to_string(v));
        if (!target_profile(i, p.part_count()).matches(prof[v]))
            note("target: vertex " + std::to_string(v) + " in part " + std::to_string(i));
    }
    for (edge_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        int pu = p.part_of(ed.u), pv = p.part_of(ed.v);
        if (pu <= 2 && pv <= 2 && l[e] != 1) note("V1-V2 edge not labelled 1: " + std::to_string(e));
        if (prof[ed.u].key() != prof[ed.v].key()) continue;
        if (!((pu == 1 && pv == 2) || (pu == 2 && pv == 1))) {
            note("conflict outside the V1-V2 cut at edge " + std::to_string(e));
            continue;
        }
        auto has_other = [&](vertex_t a, vertex_t b) {
            for (auto [w, we] : g.neighbours(a))
                if (w != b && p.part_of(w) <= 2) return true;
            return false;
        };
        if (!has_other(ed.u, ed.v) && !has_other(ed.v, ed.u))
            note("isolated conflicting edge " + std::to_string(e));
    }
    return out;
}

}  // namespace p123
