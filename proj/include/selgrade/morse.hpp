#pragma once

#include <optional>
#include <span>
#include <vector>

#include "selgrade/chain.hpp"
#include "selgrade/components.hpp"
#include "selgrade/graph.hpp"
#include "selgrade/mean_cycle.hpp"

namespace selgrade {

/// Closed cell cycle of the transition graph with its growth data.
struct CycleCertificate {
    std::vector<CellId> cells;            ///< cells.front() == cells.back()
    std::vector<std::uint32_t> controls;  ///< one per step
    double step_time = 1.0;
    double mean_weight = 0.0;             ///< mean log-growth per step
    double log_beta = 0.0;                ///< sum of log-growths over one period

    [[nodiscard]] std::size_t length() const { return controls.size(); }
    /// Exponent per unit time.
    [[nodiscard]] double rate() const { return mean_weight / step_time; }
    /// beta = product of step norms over one period.
    [[nodiscard]] double beta() const;
};

/// Morse spectrum interval of one component, units 1/time, with the attaining cycles.
struct MorseInterval {
    std::uint32_t component = 0;
    double lo = 0.0;
    double hi = 0.0;
    CycleCertificate min_cycle;
    CycleCertificate max_cycle;
};

/// Subgraph induced on `cells` (sorted) with local node ids; `origin` receives the edge
/// records in the same order as the returned edges.
WeightedDigraph induced_digraph(const TransitionGraph& g, std::span<const CellId> cells,
                                std::vector<TransitionGraph::EdgeRecord>* origin = nullptr);

/// [min mean cycle, max mean cycle] / T over cycles inside `cells`. Throws NoCycle when the
/// cell set carries no cycle.
MorseInterval cycle_mean_extremes(const TransitionGraph& g, std::span<const CellId> cells,
                                  MeanCycleMethod method = MeanCycleMethod::Automatic);
MorseInterval cycle_mean_extremes(const TransitionGraph& g, const Component& comp,
                                  MeanCycleMethod method = MeanCycleMethod::Automatic);

/// Periodic chain on cell centers following the certificate. Each step declares the edge
/// tolerance eps + radius(from) + radius(to) of the graph it came from.
Chain certificate_chain(const CycleCertificate& cert, const FlowSystem& system, const SphereGrid& grid, double epsilon);

struct ExtremalCertificates {
    CycleCertificate plus;   ///< rate > delta0
    CycleCertificate minus;  ///< rate < -delta0
};

/// Both extremal cycles when hi > delta0 and lo < -delta0, nullopt otherwise.
std::optional<ExtremalCertificates> extremal_cycle_certificates(const MorseInterval& interval, double delta0);
std::optional<ExtremalCertificates> extremal_cycle_certificates(const TransitionGraph& g, const Component& comp,
                                                                double delta0);

struct SpectrumMatch {
    std::uint32_t class_id = 0;
    double projective_lo = 0.0;
    double projective_hi = 0.0;
    double max_delta = 0.0;  ///< largest endpoint difference against any member
    double tolerance = 0.0;
    bool equal = false;
};

/// Compares each class's interval on the projective quotient graph with the intervals of its
/// sphere members (`sphere_intervals` is parallel to structure.components). Tolerance 2 h / T
/// with h the grid mesh.
std::vector<SpectrumMatch> spectrum_sphere_equals_projective(const ComponentStructure& structure,
                                                             const std::vector<MorseInterval>& sphere_intervals,
                                                             const ProjectiveQuotient& quotient,
                                                             const SphereGrid& grid);

}  // namespace selgrade
