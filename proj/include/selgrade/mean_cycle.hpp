#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace selgrade {

struct WeightedEdge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    double weight = 0.0;
};

/// Plain weighted multigraph used by the extremal cycle-mean solvers.
struct WeightedDigraph {
    std::size_t node_count = 0;
    std::vector<WeightedEdge> edges;
};

struct MeanCycle {
    double mean = 0.0;
    /// Edge indices into WeightedDigraph::edges, in traversal order; the cycle is closed.
    std::vector<std::uint32_t> edges;
};

enum class MeanCycleMethod { Automatic, Karp, Howard };

/// Karp is used automatically when the graph has at most this many nodes and edges.
inline constexpr std::size_t kKarpNodeLimit = 2000;
inline constexpr std::size_t kKarpEdgeLimit = 100000;

/// Maximum mean-weight cycle, or nullopt for an acyclic graph. `mean` is the exact mean
/// of the returned cycle.
[[nodiscard]] std::optional<MeanCycle> max_mean_cycle(const WeightedDigraph& g,
                                                      MeanCycleMethod method = MeanCycleMethod::Automatic);
[[nodiscard]] std::optional<MeanCycle> min_mean_cycle(const WeightedDigraph& g,
                                                      MeanCycleMethod method = MeanCycleMethod::Automatic);

/// Mean weight of a closed edge sequence; throws InvalidArgument if it is not closed.
[[nodiscard]] double cycle_mean(const WeightedDigraph& g, const std::vector<std::uint32_t>& cycle);

}  // namespace selgrade
