#include <p123/partition.hpp>

#include <gtest/gtest.h>

#include "support.hpp"

#include <random>

using namespace p123;
using p123::testing::exhaustive_swap_robust;

namespace {

// Path y-x-w-z-p with y=0, x=1, w=2, z=3, p=4.
constexpr vertex_t Y = 0, X = 1, W = 2, Z = 3, P = 4;

Graph p5() { return Graph(5, {{Y, X}, {X, W}, {W, Z}, {Z, P}}); }
Partition p5_seed() { return Partition::from_parts(5, {{X, P}, {Y, Z}, {W}}); }
Graph k3() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
Graph p3() { return Graph(3, {{0, 1}, {1, 2}}); }
Graph star3() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

using Parts = std::vector<std::vector<vertex_t>>;

Parts parts_of(const Partition& p) {
    Parts out;
    for (int i = 1; i <= p.part_count(); ++i) out.push_back(p.part(i));
    return out;
}

}  // namespace

TEST(GreedyPartition, Examples) {
    std::vector<vertex_t> order{0, 1, 2};
    EXPECT_EQ(parts_of(greedy_partition(k3(), order)), (Parts{{0}, {1}, {2}}));
    EXPECT_EQ(parts_of(greedy_partition(p3(), order)), (Parts{{0, 2}, {1}}));
    EXPECT_EQ(parts_of(greedy_partition(Graph(3), order)), (Parts{{0, 1, 2}}));
}

TEST(GreedyPartition, RejectsNonPermutation) {
    std::vector<vertex_t> dup{0, 0, 1};
    std::vector<vertex_t> short_order{0, 1};
    EXPECT_THROW(greedy_partition(k3(), dup), precondition_error);
    EXPECT_THROW(greedy_partition(k3(), short_order), precondition_error);
}

TEST(DegreeOrder, DescendingThenById) {
    Graph g(5, {{0, 4}, {1, 4}, {2, 4}, {1, 2}});
    EXPECT_EQ(degree_order(g), (std::vector<vertex_t>{4, 1, 2, 0, 3}));
}

TEST(Potential, Examples) {
    EXPECT_EQ(potential(Partition::from_parts(3, {{0}, {1}, {2}})), 6);
    EXPECT_EQ(potential(Partition::from_parts(3, {{0, 2}, {1}})), 4);
    EXPECT_EQ(potential(Partition::from_parts(7, {{0, 1, 2, 3, 4, 5, 6}})), 7);
}

TEST(ComputeM0, Examples) {
    EXPECT_EQ(compute_m0(p5(), p5_seed()), (std::vector<edge_t>{0, 3}));
    EXPECT_EQ(compute_m0(k3(), Partition::from_parts(3, {{0}, {1}, {2}})), (std::vector<edge_t>{0}));
    EXPECT_TRUE(compute_m0(star3(), Partition::from_parts(4, {{1, 2, 3}, {0}})).empty());
    EXPECT_TRUE(compute_m0(Graph(2), Partition::from_parts(2, {{0, 1}})).empty());
}

TEST(SwapEdge, Examples) {
    auto k3p = Partition::from_parts(3, {{0}, {1}, {2}});
    EXPECT_EQ(parts_of(swap_edge(k3(), k3p, 0)), (Parts{{1}, {0}, {2}}));
    EXPECT_EQ(swap_edge(k3(), swap_edge(k3(), k3p, 0), 0), k3p);
    EXPECT_EQ(parts_of(swap_edge(p5(), p5_seed(), 0)), (Parts{{Y, P}, {X, Z}, {W}}));
}

TEST(SwapEdge, RejectsEdgeOutsideM0) {
    EXPECT_THROW(swap_edge(p5(), p5_seed(), 1), precondition_error);
    EXPECT_THROW(swap_edge(k3(), Partition::from_parts(3, {{0}, {1}, {2}}), 2), precondition_error);
}

TEST(CheckP1, Examples) {
    EXPECT_TRUE(check_p1(k3(), Partition::from_parts(3, {{0}, {1}, {2}})).empty());
    EXPECT_TRUE(check_p1(p3(), Partition::from_parts(3, {{0, 2}, {1}})).empty());
    auto swapped = swap_edge(p5(), p5_seed(), 0);
    EXPECT_EQ(check_p1(p5(), swapped), (std::vector<MissingPart>{{W, 1}}));
}

TEST(CheckP1, OrderedByVertexThenPart) {
    Graph g(4, {{0, 1}});
    auto p = Partition::from_parts(4, {{0}, {1}, {2}, {3}});
    EXPECT_EQ(check_p1(g, p), (std::vector<MissingPart>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}}));
}

TEST(CheckS, Examples) {
    EXPECT_EQ(check_s(p5(), p5_seed()), (SWitness{W, 1, {0}}));
    EXPECT_FALSE(check_s(k3(), Partition::from_parts(3, {{0}, {1}, {2}})));
    EXPECT_FALSE(check_s(star3(), Partition::from_parts(4, {{1, 2, 3}, {0}})));
}

TEST(CheckS, RequiresValidInput) {
    EXPECT_THROW(check_s(k3(), Partition::from_parts(3, {{0, 1}, {2}})), precondition_error);
    EXPECT_THROW(check_s(p3(), Partition::from_parts(3, {{1}, {0}, {2}})), precondition_error);
}

TEST(CheckS, WitnessStrandsItsVertex) {
    const Graph g = p5();
    auto w = check_s(g, p5_seed());
    ASSERT_TRUE(w);
    auto q = p5_seed();
    for (auto e : w->swaps) q = swap_edge(g, q, e);
    for (auto [x, e] : g.neighbours(w->vertex)) EXPECT_NE(q.part_of(x), w->part);
}

TEST(BuildValidPartition, Examples) {
    EXPECT_EQ(parts_of(build_valid_partition(k3())), (Parts{{0}, {1}, {2}}));
    PartitionStats stats;
    auto p = build_valid_partition(p5(), p5_seed(), &stats);
    EXPECT_EQ(parts_of(p), (Parts{{Y, W, P}, {X, Z}}));
    EXPECT_EQ(potential(p), 7);
    EXPECT_EQ(stats.s_repairs, 1);
    EXPECT_EQ(stats.swaps, 1);
    EXPECT_EQ(parts_of(build_valid_partition(star3())), (Parts{{0}, {1, 2, 3}}));
}

TEST(BuildValidPartition, Preconditions) {
    EXPECT_THROW(build_valid_partition(Graph(2, {{0, 1}})), not_nice_error);
    EXPECT_THROW(build_valid_partition(Graph(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}})), precondition_error);
    EXPECT_THROW(build_valid_partition(k3(), Partition::from_parts(3, {{0, 1}, {2}})), precondition_error);
}

TEST(PartitionDump, Format) {
    EXPECT_EQ(dump(p5_seed()), "V1: 1 4\nV2: 0 3\nV3: 2\n");
}

TEST(PartitionProperties, RandomGraphs) {
    std::mt19937_64 rng(5);
    int compared = 0;
    for (int t = 0; t < 150; ++t) {
        auto g = random_nice_graph(3 + t % 20, t % 2 ? 0.15 : 0.35, rng());
        for (const auto& h : p123::testing::nontrivial_components(g)) {
            auto valid = build_valid_partition(h);
            EXPECT_TRUE(parts_independent(h, valid));
            EXPECT_TRUE(check_p1(h, valid).empty());
            EXPECT_FALSE(check_s(h, valid));
            for (int i = 1; i <= valid.part_count(); ++i) EXPECT_GT(valid.part_size(i), 0u);
            EXPECT_EQ(build_valid_partition(h), valid);

            std::vector<vertex_t> order(static_cast<std::size_t>(h.vertex_count()));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            auto greedy = greedy_partition(h, order);
            EXPECT_TRUE(check_p1(h, greedy).empty());
            auto m0 = compute_m0(h, greedy);
            if (m0.size() <= 10) {
                EXPECT_EQ(!check_s(h, greedy).has_value(), exhaustive_swap_robust(h, greedy)) << to_edge_list(h);
                ++compared;
            }
            for (auto e : m0) {
                auto swapped = swap_edge(h, greedy, e);
                EXPECT_EQ(potential(swapped), potential(greedy));
                EXPECT_EQ(compute_m0(h, swapped), m0);
            }

            PartitionStats stats;
            auto repaired = build_valid_partition(h, greedy, &stats);
            EXPECT_LE(potential(repaired), potential(greedy));
            EXPECT_LE(stats.moves + stats.s_repairs, potential(greedy));
        }
    }
    EXPECT_GT(compared, 100);
}
