#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>
#include <p123/labelling.hpp>
#include <p123/nullstellensatz.hpp>
#include <p123/parity.hpp>
#include <p123/partition.hpp>

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace p123 {

/// A connected component of G[V_1 u V_2] holding at least one conflicting edge.
/// Sides come from the partition; profiles are read from the full graph.
struct ConflictComponent {
    ComponentView view;
};

enum class FixKind { noblue, case1, case2, case3, case4, case5, case6, last_case };

inline const char* to_string(FixKind k) {
    switch (k) {
        case FixKind::noblue: return "noblue";
        case FixKind::case1: return "2neigh/case1";
        case FixKind::case2: return "2neigh/case2";
        case FixKind::case3: return "2neigh/case3";
        case FixKind::case4: return "2neigh/case4";
        case FixKind::case5: return "2neigh/case5";
        case FixKind::case6: return "2neigh/case6";
        case FixKind::last_case: return "lastcase";
    }
    return "?";
}

struct FixOutcome {
    FixKind kind;
    std::vector<LabelChange> delta;
    std::vector<std::string> trace;
};

inline std::vector<ConflictComponent> conflict_components(const Graph& g, const Partition& p, const Labelling& l) {
    std::vector<vertex_t> low;
    for (vertex_t v = 0; v < g.vertex_count(); ++v)
        if (p.part_of(v) <= 2) low.push_back(v);
    std::vector<ProductKey> keys(static_cast<std::size_t>(g.vertex_count()));
    for (vertex_t v = 0; v < g.vertex_count(); ++v) keys[v] = profile(g, l, v).key();

    std::vector<ConflictComponent> out;
    for (auto& comp : induced_components(g, low)) {
        ComponentView view(g, std::move(comp));
        bool conflicted = false;
        for (auto e : view.edges())
            conflicted = conflicted || keys[g.edge(e).u] == keys[g.edge(e).v];
        if (!conflicted) continue;
        if (view.edges().size() < 2)
            throw unreachable_case("conflict component with a single edge " + std::to_string(view.edges()[0]));
        out.push_back({std::move(view)});
    }
    return out;
}

/// nullopt when no two H vertices conflict and every H vertex is monochromatic or special.
inline std::optional<std::string> check_p3(const LabelState& st, const ComponentView& h) {
    for (auto v : h.vertices()) {
        auto c = st.vertex_class(v);
        if (!c.monochromatic() && !c.special)
            return "vertex " + std::to_string(v) + " is bichromatic and not special";
    }
    for (auto e : h.edges())
        if (st.in_conflict(e))
            return "conflict on edge " + std::to_string(st.graph().edge(e).u) + "-" +
                   std::to_string(st.graph().edge(e).v);
    return std::nullopt;
}

namespace detail {

class ComponentFixer {
public:
    ComponentFixer(const Partition& p, LabelState& st, const ComponentView& h)
        : g_(st.graph()), p_(p), st_(st), h_(h) {}

    struct LeafPair {
        vertex_t v1, u1, u2;
    };

    bool has_mono3_in_v1() const {
        for (auto v : h_.vertices())
            if (side(v) == 1 && chroma(v) == Chroma::mono3) return true;
        return false;
    }

    std::optional<LeafPair> leaf_pair() const {
        for (auto v : h_.vertices()) {
            if (side(v) != 1 || chroma(v) != Chroma::mono1) continue;
            std::vector<vertex_t> leaves;
            for (auto [w, e] : h_.neighbours(v))
                if (chroma(w) == Chroma::mono1 && h_.degree(w) == 1) leaves.push_back(w);
            if (leaves.size() >= 2) return LeafPair{v, leaves[0], leaves[1]};
        }
        return std::nullopt;
    }

    bool noblue_applies() const { return has_mono3_in_v1() || leaf_pair().has_value(); }

    std::optional<vertex_t> two_neighbour_vertex() const {
        for (auto v : h_.vertices())
            if (side(v) == 2 && chroma(v) == Chroma::mono1 && h_.degree(v) >= 2) return v;
        return std::nullopt;
    }

    FixKind fix_noblue() {
        if (!noblue_applies()) throw precondition_error("noblue trigger absent");
        std::vector<vertex_t> pre;
        if (auto lp = leaf_pair()) {
            set(lp->v1, lp->u1, 3);
            set(lp->v1, lp->u2, 3);
            pre = {lp->u1, lp->u2};
            note("leaves v1=" + id(lp->v1) + " u1=" + id(lp->u1) + " u2=" + id(lp->u2));
            if (!check_p3(st_, h_)) return FixKind::noblue;
        }

        std::vector<vertex_t> xs, rest;
        for (auto v : h_.vertices()) {
            if (side(v) == 1 && chroma(v) == Chroma::mono3) xs.push_back(v);
            else if (std::find(pre.begin(), pre.end(), v) == pre.end()) rest.push_back(v);
        }
        auto in_x = [&](vertex_t v) { return std::binary_search(xs.begin(), xs.end(), v); };

        std::vector<vertex_t> ys;             // 1-monochromatic y_i with a 1-monochromatic partner w_i
        std::vector<vertex_t> w_of_y;
        for (auto& comp : induced_components(g_, rest)) {
            ComponentView c(g_, comp);
            std::optional<vertex_t> y, x;
            for (auto v : c.vertices()) {
                for (auto [w, e] : h_.neighbours(v))
                    if (in_x(w)) {
                        y = v, x = w;
                        break;
                    }
                if (y) break;
            }
            if (!y) throw unreachable_case("component of H - X not attached to X");
            parity(c, 2, *y, 2);
            int d2 = profile(*y).d2;
            if (d2 % 2 == 1) {
                note("C at " + id(*y) + ": y odd");
            } else if (d2 > 0) {
                set(*x, *y, 3);
                if (!st_.vertex_class(*y).special) throw unreachable_case("y_i did not become special");
                note("C at " + id(*y) + ": y special via x=" + id(*x));
            } else {
                for (auto [w, e] : c.neighbours(*y))
                    if (chroma(w) == Chroma::mono1) {
                        ys.push_back(*y);
                        w_of_y.push_back(w);
                        break;
                    }
                note("C at " + id(*y) + ": y mono1");
            }
        }

        std::vector<vertex_t> hprime = xs;
        hprime.insert(hprime.end(), ys.begin(), ys.end());
        for (auto& comp : induced_components(g_, hprime)) {
            ComponentView q(g_, comp);
            vertex_t xk = *std::find_if(comp.begin(), comp.end(), in_x);
            parity(q, 3, xk, 2);
            for (auto [y, e] : q.neighbours(xk)) {
                if (st_.key(y) != st_.key(xk)) continue;
                auto w = w_of_y[std::find(ys.begin(), ys.end(), y) - ys.begin()];
                if (st_.label(e) == 3) {
                    st_.set(e, 1);
                    note("Q at " + id(xk) + ": unlabel x-y=" + id(y) + ", y-w=" + id(w) + " to 3");
                } else {
                    st_.set(e, 3);
                    note("Q at " + id(xk) + ": x-y=" + id(y) + " and y-w=" + id(w) + " to 3");
                }
                set(y, w, 3);
                break;
            }
        }
        return FixKind::noblue;
    }

    FixKind fix_two_neighbours() {
        if (noblue_applies()) throw precondition_error("noblue applies; two-neighbour claim not reached");
        auto u_opt = two_neighbour_vertex();
        if (!u_opt) throw precondition_error("two-neighbour trigger absent");
        const vertex_t u = *u_opt;
        for (auto v : h_.vertices())
            if (profile(v).d3 != 0) throw unreachable_case("3-label inside H although noblue does not apply");
        note("u=" + id(u));

        std::vector<vertex_t> rest;
        for (auto v : h_.vertices())
            if (v != u) rest.push_back(v);

        enum class Kind { nice, bad, tricky };
        struct Part {
            std::vector<vertex_t> vertices;
            vertex_t v;
            Kind kind = Kind::nice;
            vertex_t w = -1;
            vertex_t y = -1;
            std::vector<vertex_t> xi;
        };
        std::vector<Part> comps;
        for (auto& comp : induced_components(g_, rest)) {
            std::optional<vertex_t> v;
            for (auto c : comp)
                if (g_.adjacent(u, c)) {
                    v = c;
                    break;
                }
            if (!v) throw unreachable_case("component of H - u without a neighbour of u");
            comps.push_back(Part{comp, *v, Kind::nice, -1, -1, {}});
        }
        std::sort(comps.begin(), comps.end(), [](const Part& a, const Part& b) { return a.v < b.v; });

        int n_nice = 0, n_bad = 0, n_tricky = 0;
        for (auto& c : comps) {
            std::vector<vertex_t> minus_v;
            for (auto x : c.vertices)
                if (x != c.v) minus_v.push_back(x);
            for (auto& jcomp : induced_components(g_, minus_v)) {
                ComponentView j(g_, jcomp);
                std::optional<vertex_t> x;
                for (auto [w, e] : h_.neighbours(c.v))
                    if (j.contains(w)) {
                        x = w;
                        break;
                    }
                if (!x) throw unreachable_case("component of C_i - v_i not attached to v_i");
                parity(j, 2, *x, 2);
                if (profile(*x).d2 % 2 == 0) c.xi.push_back(*x);
            }
            std::sort(c.xi.begin(), c.xi.end());
            if (c.xi.size() >= 2) {
                for (auto z : c.xi) set(c.v, z, 3);
            } else if (c.xi.size() == 1 && profile(c.xi[0]).d2 >= 1) {
                set(c.v, c.xi[0], 3);
            } else if (c.xi.size() == 1) {
                c.w = c.xi[0];
                c.kind = Kind::bad;
                for (auto [a, e] : h_.neighbours(c.w))
                    if (a != c.v && chroma(a) == Chroma::mono1) {
                        c.kind = Kind::tricky;
                        c.y = a;
                        break;
                    }
            }
            (c.kind == Kind::nice ? n_nice : c.kind == Kind::bad ? n_bad : n_tricky)++;
        }
        note("components nice=" + std::to_string(n_nice) + " bad=" + std::to_string(n_bad) +
             " tricky=" + std::to_string(n_tricky));

        if (n_tricky > 0) {
            auto& ci = *std::find_if(comps.begin(), comps.end(), [](const Part& c) { return c.kind == Kind::tricky; });
            for (auto& c : comps) {
                if (&c == &ci || c.kind == Kind::nice) continue;
                set(c.v, c.w, 2);
                set(u, c.v, 2);
            }
            if (profile(u).d2 % 2 == 0) {
                set(ci.v, ci.w, 2);
                set(u, ci.v, 2);
            } else {
                set(ci.v, ci.w, 3);
                set(ci.w, ci.y, 3);
            }
            return FixKind::case1;
        }

        if (n_nice == 0) {
            if (n_bad == 1) {
                set(comps[0].v, comps[0].w, 2);
                set(u, comps[0].v, 2);
            } else {
                for (auto& c : comps) set(u, c.v, 3);
            }
            return FixKind::case2;
        }

        if (n_bad > 0) {
            auto& first_nice = *std::find_if(comps.begin(), comps.end(), [](const Part& c) { return c.kind == Kind::nice; });
            for (auto& c : comps) {
                if (c.kind != Kind::bad) continue;
                set(c.v, c.w, 2);
                set(u, c.v, 2);
            }
            if (profile(u).d2 % 2 == 0) set(u, first_nice.v, 3);
            return FixKind::case3;
        }

        if (n_nice == 1) {
            auto& c1 = comps[0];
            std::optional<vertex_t> v2;
            for (auto [a, e] : h_.neighbours(u))
                if (a != c1.v) {
                    v2 = a;
                    break;
                }
            if (!v2) throw unreachable_case("u has a single neighbour in H in the one-component case");
            if (chroma(c1.v) == Chroma::mono1) {
                set(u, c1.v, 3);
                set(u, *v2, 3);
            } else {
                set(u, c1.v, 3);
            }
            return FixKind::case4;
        }

        for (auto& c : comps) {
            if (profile(c.v).d3 < 2) continue;
            std::optional<vertex_t> x;
            for (auto [a, e] : h_.neighbours(u))
                if (a != c.v && std::binary_search(c.vertices.begin(), c.vertices.end(), a)) {
                    x = a;
                    break;
                }
            if (!x) continue;

            for (auto [a, e] : h_.neighbours(c.v))
                if (st_.label(e) == 3) st_.set(e, 2);
            if (profile(c.v).d2 % 2 == 1) {
                set(u, c.v, 2);
                note("case5 odd at v=" + id(c.v));
                return FixKind::case5;
            }
            auto path = shortest_path(c.vertices, c.v, *x);
            std::vector<edge_t> cycle{edge(u, c.v)};
            for (std::size_t k = 0; k + 1 < path.size(); ++k) cycle.push_back(edge(path[k], path[k + 1]));
            cycle.push_back(edge(*x, u));
            for (auto e : cycle) {
                if (st_.label(e) == 3) throw unreachable_case("3-label on the case-5 cycle");
                st_.set(e, st_.label(e) == 1 ? 2 : 1);
            }
            note("case5 cycle via x=" + id(*x) + " length=" + std::to_string(cycle.size()));
            if (check_p3(st_, h_)) {
                auto& other = *std::find_if(comps.begin(), comps.end(), [&](const Part& o) { return &o != &c; });
                set(u, other.v, 3);
                note("case5 u special via v=" + id(other.v));
            }
            return FixKind::case5;
        }

        NullstellensatzInstance inst;
        std::vector<vertex_t> as;
        for (auto [a, e] : h_.neighbours(u))
            if (profile(a).d2 == 0) {
                as.push_back(a);
                inst.n.push_back(profile(a).d3);
            }
        auto z = nullstellensatz_assign(inst);
        std::ostringstream msg;
        msg << "case6 r=" << inst.r() << " z=";
        for (std::size_t i = 0; i < as.size(); ++i) {
            msg << z[i];
            if (z[i] == 1) set(u, as[i], 3);
        }
        note(msg.str());
        return FixKind::case6;
    }

    FixKind fix_last_case() {
        if (noblue_applies() || two_neighbour_vertex()) throw precondition_error("an earlier claim applies");
        std::optional<vertex_t> v, u;
        for (auto e : h_.edges()) {
            const auto& ed = g_.edge(e);
            if (!st_.in_conflict(e) || chroma(ed.u) != Chroma::mono1) continue;
            v = side(ed.u) == 1 ? ed.u : ed.v;
            u = ed.other(*v);
            break;
        }
        if (!v) throw precondition_error("no conflicting 1-monochromatic pair in H");
        if (h_.degree(*u) != 1) throw unreachable_case("u has more than one neighbour in H");
        std::vector<vertex_t> xs;
        for (auto [a, e] : h_.neighbours(*v))
            if (a != *u) xs.push_back(a);
        if (xs.empty()) throw unreachable_case("v has no neighbour besides u");
        for (auto a : xs)
            if (chroma(a) != Chroma::mono2) throw unreachable_case("x_i is not 2-monochromatic");

        std::vector<vertex_t> rest;
        for (auto a : h_.vertices())
            if (a != *u) rest.push_back(a);
        parity(ComponentView(g_, rest), 2, *v, 1);
        int d2 = profile(*v).d2;
        note("v=" + id(*v) + " u=" + id(*u) + " d2(v)=" + std::to_string(d2));
        if (d2 % 2 == 1) return FixKind::last_case;
        if (d2 >= 2) {
            set(*v, *u, 3);
        } else {
            if (st_.label(edge(*v, xs[0])) != 1) throw unreachable_case("v-x_1 not labelled 1");
            set(*v, xs[0], 3);
            if (!st_.vertex_class(xs[0]).special) throw unreachable_case("x_1 did not become special");
        }
        return FixKind::last_case;
    }

    std::vector<std::string> take_trace() { return std::move(trace_); }

private:
    int side(vertex_t v) const { return p_.part_of(v); }
    const VertexProfile& profile(vertex_t v) const { return st_.profile(v); }
    Chroma chroma(vertex_t v) const { return st_.vertex_class(v).chroma; }
    edge_t edge(vertex_t a, vertex_t b) const {
        auto e = g_.find_edge(a, b);
        if (!e || !h_.local_edge(*e)) throw unreachable_case("expected an edge of H between " + id(a) + " and " + id(b));
        return *e;
    }
    void set(vertex_t a, vertex_t b, label_t l) { st_.set(edge(a, b), l); }
    void note(std::string s) { trace_.push_back(std::move(s)); }
    // Vertices of `odd_part` end with odd global s-degree, the other part even; `root` is exempt.
    void parity(const ComponentView& view, label_t s, vertex_t root, int odd_part) {
        note("parity s=" + std::to_string(s) + " root=" + id(root) + " odd=V" + std::to_string(odd_part) +
             " even=V" + std::to_string(3 - odd_part));
        relabel_to_parity(st_, view, s, root, [&](vertex_t a) { return side(a) == odd_part; });
    }
    static std::string id(vertex_t v) { return std::to_string(v); }

    std::vector<vertex_t> shortest_path(const std::vector<vertex_t>& within, vertex_t from, vertex_t to) const {
        ComponentView c(g_, within);
        std::vector<vertex_t> prev(c.size(), -1);
        std::vector<char> seen(c.size(), 0);
        seen[*c.local_vertex(from)] = 1;
        std::deque<vertex_t> queue{from};
        while (!queue.empty()) {
            auto a = queue.front();
            queue.pop_front();
            if (a == to) break;
            for (auto [b, e] : c.neighbours(a)) {
                auto lb = *c.local_vertex(b);
                if (seen[lb]) continue;
                seen[lb] = 1;
                prev[lb] = a;
                queue.push_back(b);
            }
        }
        if (!seen[*c.local_vertex(to)]) throw unreachable_case("no path inside C_i");
        std::vector<vertex_t> path{to};
        while (path.back() != from) path.push_back(prev[*c.local_vertex(path.back())]);
        std::reverse(path.begin(), path.end());
        return path;
    }

    const Graph& g_;
    const Partition& p_;
    LabelState& st_;
    const ComponentView& h_;
    std::vector<std::string> trace_;
};

template <typename Fn>
FixOutcome run_fixer(const Partition& p, LabelState& st, const ConflictComponent& c, Fn&& fn) {
    ComponentFixer fixer(p, st, c.view);
    st.start_journal();
    FixKind kind = fn(fixer);
    return {kind, st.take_journal(), fixer.take_trace()};
}

}  // namespace detail

inline bool noblue_applies(const Partition& p, LabelState& st, const ConflictComponent& c) {
    return detail::ComponentFixer(p, st, c.view).noblue_applies();
}

inline bool two_neighbours_applies(const Partition& p, LabelState& st, const ConflictComponent& c) {
    detail::ComponentFixer f(p, st, c.view);
    return !f.noblue_applies() && f.two_neighbour_vertex().has_value();
}

/// A V_1 vertex that is 3-monochromatic, or a 1-monochromatic V_1 vertex with two
/// 1-monochromatic leaf neighbours in V_2.
inline FixOutcome fix_noblue(const Partition& p, LabelState& st, const ConflictComponent& c) {
    return detail::run_fixer(p, st, c, [](detail::ComponentFixer& f) { return f.fix_noblue(); });
}

/// A 1-monochromatic V_2 vertex with two or more neighbours in H; dispatches cases 1 to 6.
inline FixOutcome fix_two_neighbours(const Partition& p, LabelState& st, const ConflictComponent& c) {
    return detail::run_fixer(p, st, c, [](detail::ComponentFixer& f) { return f.fix_two_neighbours(); });
}

inline FixOutcome fix_last_case(const Partition& p, LabelState& st, const ConflictComponent& c) {
    return detail::run_fixer(p, st, c, [](detail::ComponentFixer& f) { return f.fix_last_case(); });
}

/// Runs the first claim whose trigger holds, then checks the component.
inline FixOutcome fix_component(const Partition& p, LabelState& st, const ConflictComponent& c) {
    FixOutcome out = noblue_applies(p, st, c)          ? fix_noblue(p, st, c)
                     : two_neighbours_applies(p, st, c) ? fix_two_neighbours(p, st, c)
                                                        : fix_last_case(p, st, c);
    for (const auto& ch : out.delta)
        if (!c.view.local_edge(ch.edge)) throw unreachable_case("fixer relabelled an edge outside its component");
    if (auto bad = check_p3(st, c.view))
        throw unreachable_case(std::string(to_string(out.kind)) + " left the component violating P3: " + *bad);
    return out;
}

struct Step3Result {
    Labelling labelling;
    std::vector<FixKind> fixes;   // one per conflict component, in component order
    std::vector<std::string> trace;
};

/// Fixes every conflict component of G[V_1 u V_2] independently.
inline Step3Result run_step3(const Graph& g, const Partition& p, const Labelling& l, bool trace = false) {
    auto comps = conflict_components(g, p, l);
    LabelState st(g, l);
    Step3Result out;
    for (const auto& c : comps) {
        auto fix = fix_component(p, st, c);
        out.fixes.push_back(fix.kind);
        if (trace) {
            std::ostringstream line;
            line << "H@" << c.view.vertices()[0] << " |V|=" << c.view.size() << " claim=" << to_string(fix.kind)
                 << " relabelled=" << fix.delta.size();
            out.trace.push_back(line.str());
            for (auto& t : fix.trace) out.trace.push_back("  " + t);
        }
    }
    out.labelling = st.labels();
    return out;
}

}  // namespace p123
