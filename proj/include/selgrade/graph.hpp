#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "selgrade/flow.hpp"
#include "selgrade/sphere_grid.hpp"

namespace selgrade {

struct GraphParams {
    double step_time = 1.0;  ///< T > 0
    double epsilon = 0.02;   ///< jump radius, 0 < eps < 1
};

void validate(const GraphParams& params);

/// Directed multigraph on cells in CSR form. Edges from a node are sorted by (to, control).
/// The weight of an edge depends only on its source and control (the log-growth of that
/// step), so weights are stored per (node, control).
class TransitionGraph {
public:
    struct EdgeRecord {
        CellId from = 0;
        CellId to = 0;
        std::uint32_t control = 0;
        /// The image lands within epsilon of the target cell: |image - center_to| < eps + radius(to).
        bool exact = false;
        friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
    };

    TransitionGraph() = default;

    /// Sorts and deduplicates `edges` by (from, to, control); a duplicate keeps the exact flag if any copy has it. `weights` has node_count * control_count entries.
    static TransitionGraph from_edges(std::size_t node_count, std::size_t control_count, std::vector<double> weights,
                                      std::vector<EdgeRecord> edges, GraphParams params);

    [[nodiscard]] std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    [[nodiscard]] std::size_t edge_count() const { return targets_.size(); }
    [[nodiscard]] std::size_t control_count() const { return control_count_; }
    [[nodiscard]] const GraphParams& params() const { return params_; }

    [[nodiscard]] std::span<const CellId> targets(CellId from) const {
        return {targets_.data() + offsets_[from], offsets_[from + 1] - offsets_[from]};
    }
    [[nodiscard]] std::span<const std::uint32_t> edge_controls(CellId from) const {
        return {controls_.data() + offsets_[from], offsets_[from + 1] - offsets_[from]};
    }
    [[nodiscard]] std::span<const std::uint8_t> edge_exact(CellId from) const {
        return {exact_.data() + offsets_[from], offsets_[from + 1] - offsets_[from]};
    }
    [[nodiscard]] double weight(CellId node, std::size_t control) const {
        return weights_[static_cast<std::size_t>(node) * control_count_ + control];
    }
    [[nodiscard]] bool has_edge(CellId from, CellId to) const;
    [[nodiscard]] std::vector<EdgeRecord> edges() const;

private:
    std::size_t control_count_ = 0;
    GraphParams params_;
    std::vector<std::size_t> offsets_;
    std::vector<CellId> targets_;
    std::vector<std::uint32_t> controls_;
    std::vector<std::uint8_t> exact_;
    std::vector<double> weights_;
};

/// Edge (c -> c', u) iff |S Phi(T, c, u) - c'| < eps + radius(c) + radius(c'), chordal distance;
/// weight = log |Phi(T, c, u)|. Deterministic for fixed inputs.
TransitionGraph build_graph(const FlowSystem& system, const SphereGrid& grid, const GraphParams& params);

struct Component {
    std::uint32_t id = 0;
    std::vector<CellId> cells;  ///< sorted
    std::size_t internal_edges = 0;
    /// Has at least one internal edge.
    bool is_recurrent = false;
    /// Contains a cycle of exact edges: a periodic chain whose jumps land within eps of the next cell.
    bool carries_chain = false;
};

struct SccResult {
    std::vector<std::uint32_t> component_of;  ///< node -> component id
    std::vector<Component> components;        ///< ids ordered by smallest member cell
};

/// Iterative Tarjan; no recursion, safe for very large graphs.
SccResult strongly_connected_components(const TransitionGraph& g);

/// Components that carry a periodic chain on cell centers (the chain recurrent components
/// at grid scale). Ids are kept from the SCC result.
std::vector<Component> recurrent_components(const SccResult& scc);

/// Cells reachable from `from` by paths with at least one edge.
std::vector<CellId> chain_reachable(const TransitionGraph& g, std::span<const CellId> from);

struct GraphPath {
    std::vector<CellId> cells;            ///< cells.size() == controls.size() + 1
    std::vector<std::uint32_t> controls;  ///< control of each traversed edge
};

/// BFS shortest path with at least `min_edges` edges (0 or 1). `allowed` restricts the
/// intermediate and end cells when nonempty.
std::optional<GraphPath> shortest_path(const TransitionGraph& g, CellId from, CellId to,
                                       const std::vector<std::uint8_t>& allowed = {}, int min_edges = 0);

}  // namespace selgrade
