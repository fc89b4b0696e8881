#include <p123/graph.hpp>

#include <gtest/gtest.h>

#include "support.hpp"

#include <random>
#include <set>

using namespace p123;

namespace {

std::vector<std::pair<vertex_t, vertex_t>> edge_pairs(const Graph& g) {
    std::vector<std::pair<vertex_t, vertex_t>> out;
    for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

std::size_t error_line(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const parse_error& e) {
        return e.line();
    }
    ADD_FAILURE() << "expected a parse error";
    return 0;
}

}  // namespace

TEST(ParseEdgeList, PathOfThree) {
    auto g = parse_edge_list("0 1\n1 2");
    EXPECT_EQ(g.vertex_count(), 3);
    EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<vertex_t, vertex_t>>{{0, 1}, {1, 2}}));
}

TEST(ParseEdgeList, SelfLoopReportsLine) {
    EXPECT_EQ(error_line([] { parse_edge_list("0 0"); }), 1u);
}

TEST(ParseEdgeList, DuplicateReportsSecondLine) {
    EXPECT_EQ(error_line([] { parse_edge_list("0 1\n0 1"); }), 2u);
    EXPECT_EQ(error_line([] { parse_edge_list("0 1\n1 0"); }), 2u);
}

TEST(ParseEdgeList, MalformedTokenReportsLine) {
    EXPECT_EQ(error_line([] { parse_edge_list("0 1\n1 x"); }), 2u);
    EXPECT_EQ(error_line([] { parse_edge_list("0 -1"); }), 1u);
    EXPECT_EQ(error_line([] { parse_edge_list("0 1 2"); }), 1u);
}

TEST(ParseEdgeList, CommentsBlankLinesAndHeader) {
    auto g = parse_edge_list("# comment\n\nn 5\n  0 1  \r\n# x\n3 4\n");
    EXPECT_EQ(g.vertex_count(), 5);
    EXPECT_EQ(g.edge_count(), 2);
    EXPECT_EQ(parse_edge_list("").vertex_count(), 0);
    EXPECT_EQ(parse_edge_list("n 3\n").vertex_count(), 3);
    EXPECT_THROW(parse_edge_list("n 2\n0 2"), parse_error);
    EXPECT_THROW(parse_edge_list("n 2\nn 3"), parse_error);
}

TEST(ParseDimacs, PathOfThree) {
    auto g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3");
    EXPECT_EQ(g.vertex_count(), 3);
    EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<vertex_t, vertex_t>>{{0, 1}, {1, 2}}));
}

TEST(ParseDimacs, IdOutOfRange) {
    EXPECT_EQ(error_line([] { parse_dimacs("p edge 2 1\ne 1 3"); }), 2u);
    EXPECT_THROW(parse_dimacs("p edge 2 1\ne 0 1"), parse_error);
}

TEST(ParseDimacs, EdgeCountMismatch) {
    try {
        parse_dimacs("p edge 3 3\ne 1 2\ne 2 3");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find("edge count mismatch"), std::string::npos);
    }
}

TEST(ParseDimacs, ProblemLineRules) {
    EXPECT_THROW(parse_dimacs("e 1 2"), parse_error);
    EXPECT_THROW(parse_dimacs("c only comments\n"), parse_error);
    EXPECT_THROW(parse_dimacs("p edge 2 1\np edge 2 1\ne 1 2"), parse_error);
    EXPECT_THROW(parse_dimacs("p edge 2 1\ne 1 1"), parse_error);
    EXPECT_THROW(parse_dimacs("p edge 3 2\ne 1 2\ne 2 1"), parse_error);
    EXPECT_THROW(parse_dimacs("p edge 2 1\nx 1 2"), parse_error);
    EXPECT_EQ(parse_dimacs("c hi\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").edge_count(), 3);
}

TEST(Graph, RejectsBadEdges) {
    EXPECT_THROW(Graph(2, {{0, 2}}), precondition_error);
    EXPECT_THROW(Graph(2, {{1, 1}}), precondition_error);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), precondition_error);
}

TEST(Graph, AdjacencySortedAndConsistent) {
    Graph g(4, {{3, 0}, {0, 1}, {2, 0}});
    std::vector<vertex_t> nbrs;
    for (auto [w, e] : g.neighbours(0)) {
        nbrs.push_back(w);
        EXPECT_EQ(g.edge(e).other(0), w);
    }
    EXPECT_EQ(nbrs, (std::vector<vertex_t>{1, 2, 3}));
    EXPECT_EQ(g.find_edge(2, 0), std::optional<edge_t>(2));
    EXPECT_FALSE(g.find_edge(1, 2));
    EXPECT_EQ(g.edge(0).u, 0);
    EXPECT_EQ(g.edge(0).v, 3);
}

TEST(ConnectedComponents, Examples) {
    using C = std::vector<std::vector<vertex_t>>;
    EXPECT_EQ(connected_components(Graph(3, {{0, 1}, {1, 2}})), (C{{0, 1, 2}}));
    EXPECT_EQ(connected_components(Graph(4, {{0, 1}, {2, 3}})), (C{{0, 1}, {2, 3}}));
    EXPECT_EQ(connected_components(Graph(2)), (C{{0}, {1}}));
    EXPECT_EQ(connected_components(Graph(5, {{4, 1}, {3, 0}})), (C{{0, 3}, {1, 4}, {2}}));
}

TEST(IsNice, Examples) {
    EXPECT_FALSE(is_nice(Graph(2, {{0, 1}})));
    EXPECT_TRUE(is_nice(Graph(3, {{0, 1}, {1, 2}})));
    EXPECT_FALSE(is_nice(Graph(5, {{0, 1}, {2, 3}, {3, 4}, {2, 4}})));
    EXPECT_TRUE(is_nice(Graph(2)));
    EXPECT_TRUE(is_nice(Graph(0)));
}

TEST(ComponentView, InducedEdgesAndMaps) {
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    ComponentView view(g, {3, 1, 2});
    EXPECT_EQ(std::vector<vertex_t>(view.vertices().begin(), view.vertices().end()), (std::vector<vertex_t>{1, 2, 3}));
    EXPECT_EQ(std::vector<edge_t>(view.edges().begin(), view.edges().end()), (std::vector<edge_t>{1, 2}));
    for (vertex_t l = 0; l < 3; ++l) EXPECT_EQ(view.local_vertex(view.global_vertex(l)), l);
    for (edge_t l = 0; l < 2; ++l) EXPECT_EQ(view.local_edge(view.global_edge(l)), l);
    EXPECT_FALSE(view.local_vertex(0));
    EXPECT_FALSE(view.local_edge(0));
    EXPECT_EQ(view.degree(2), 2u);
    EXPECT_EQ(view.degree(1), 1u);
    EXPECT_TRUE(view.is_connected());
    EXPECT_FALSE(ComponentView(g, {0, 2}).is_connected());
    auto local = view.local_graph();
    EXPECT_EQ(local.vertex_count(), 3);
    EXPECT_EQ(edge_pairs(local), (std::vector<std::pair<vertex_t, vertex_t>>{{0, 1}, {1, 2}}));
}

TEST(GraphProperties, RoundTripAndComponentCover) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto g = random_nice_graph(1 + t % 25, 0.15, rng());
        EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);

        auto comps = connected_components(g);
        std::set<vertex_t> seen;
        bool has_k2 = false;
        for (auto& c : comps) {
            for (auto v : c) EXPECT_TRUE(seen.insert(v).second);
            ComponentView view(g, c);
            has_k2 = has_k2 || (c.size() == 2 && view.edges().size() == 1);
            EXPECT_TRUE(view.is_connected());
        }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(g.vertex_count()));
        EXPECT_EQ(is_nice(g), !has_k2);
    }
}
