#include <gtest/gtest.h>

#include "selgrade/mean_cycle.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace selgrade;

namespace {

using oracles::enumerate_simple_cycles;
using oracles::random_digraph;

void check_cycle(const WeightedDigraph& g, const MeanCycle& c) {
    ASSERT_FALSE(c.edges.empty());
    EXPECT_NEAR(cycle_mean(g, c.edges), c.mean, 1e-12);
}

}  // namespace

TEST(MeanCycle, MatchesSimpleCycleEnumerationOnSmallGraphs) {
    std::mt19937_64 rng(0x5e1);
    std::size_t graphs_with_cycles = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const auto g = random_digraph(rng, n, std::min(0.5, 1.6 / static_cast<double>(n)));
        const auto oracle = enumerate_simple_cycles(g);
        for (auto method : {MeanCycleMethod::Karp, MeanCycleMethod::Howard, MeanCycleMethod::Automatic}) {
            const auto hi = max_mean_cycle(g, method);
            const auto lo = min_mean_cycle(g, method);
            ASSERT_EQ(hi.has_value(), oracle.cycles > 0) << "trial " << trial;
            ASSERT_EQ(lo.has_value(), oracle.cycles > 0);
            if (hi) {
                EXPECT_NEAR(hi->mean, oracle.hi, 1e-9) << "trial " << trial;
                EXPECT_NEAR(lo->mean, oracle.lo, 1e-9) << "trial " << trial;
                check_cycle(g, *hi);
                check_cycle(g, *lo);
            }
        }
        graphs_with_cycles += oracle.cycles > 0;
    }
    EXPECT_GT(graphs_with_cycles, 300u);
}

TEST(MeanCycle, KarpAndHowardAgreeOnLargerGraphs) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_digraph(rng, 200 + 10 * static_cast<std::size_t>(trial), 0.01);
        const auto k = max_mean_cycle(g, MeanCycleMethod::Karp);
        const auto h = max_mean_cycle(g, MeanCycleMethod::Howard);
        ASSERT_EQ(k.has_value(), h.has_value());
        if (k) {
            EXPECT_NEAR(k->mean, h->mean, 1e-9);
            check_cycle(g, *k);
            check_cycle(g, *h);
        }
    }
}

TEST(MeanCycle, AcyclicGraphHasNone) {
    WeightedDigraph g{3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, -1.0}}};
    EXPECT_FALSE(max_mean_cycle(g).has_value());
    EXPECT_FALSE(min_mean_cycle(g, MeanCycleMethod::Howard).has_value());
}

TEST(MeanCycle, SelfLoopsAndTies) {
    WeightedDigraph g{2, {{0, 0, 0.5}, {0, 1, 1.0}, {1, 0, 0.0}, {1, 1, -0.25}}};
    EXPECT_DOUBLE_EQ(max_mean_cycle(g)->mean, 0.5);
    EXPECT_DOUBLE_EQ(min_mean_cycle(g)->mean, -0.25);
}

TEST(MeanCycle, RejectsBadInput) {
    EXPECT_THROW((void)max_mean_cycle(WeightedDigraph{1, {{0, 1, 0.0}}}), Error);
    EXPECT_THROW((void)max_mean_cycle(WeightedDigraph{1, {{0, 0, std::nan("")}}}), Error);
    WeightedDigraph g{2, {{0, 1, 0.0}, {1, 0, 0.0}}};
    EXPECT_THROW((void)cycle_mean(g, {0}), Error);
    EXPECT_THROW((void)cycle_mean(g, {}), Error);
    EXPECT_DOUBLE_EQ(cycle_mean(g, {0, 1}), 0.0);
}
