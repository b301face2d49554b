#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selgrade/chain_ops.hpp"
#include "selgrade/graph.hpp"
#include "selgrade/hemisphere.hpp"
#include "selgrade/morse.hpp"

namespace selgrade {

/// Hemisphere cells meeting the closure of the cone {alpha v : alpha > 0, v in component}.
struct ConeCellSet {
    std::uint32_t component = 0;
    std::vector<CellId> cells;  ///< sorted; always contains the pole and the equator image
};

/// Pole, the cell of pi_P(tan(phi_k) c) for every level k and component cell center c, and
/// the equator cells of the component.
ConeCellSet cone_cells(const Component& comp, const HemisphereGrid& grid);

struct OneWayPair {
    CellId from = 0;
    CellId to = 0;
    bool forward = false;   ///< `to` reachable from `from`
    bool backward = false;  ///< `from` reachable from `to`
};

struct TransitivityReport {
    std::uint32_t component = 0;
    std::size_t cone_size = 0;
    bool chain_transitive = false;
    /// Round trips pole -> cell -> pole for a sample of cone cells (when transitive).
    std::vector<GraphPath> witness;
    /// A pair without mutual reachability (when not transitive).
    std::optional<OneWayPair> counterexample;
    bool theorem2_condition = false;
    bool refinement_stable = false;
};

/// Mutual reachability of the cone cells through the full hemisphere graph; every cell also
/// needs a path back to itself. `scc` must come from `g`.
TransitivityReport check_chain_transitive(const TransitionGraph& g, const SccResult& scc, const ConeCellSet& cells,
                                          std::size_t witness_samples = 8);
TransitivityReport check_chain_transitive(const TransitionGraph& g, const ConeCellSet& cells);

/// lo < -delta0 and hi > delta0.
[[nodiscard]] bool theorem2_check(const MorseInterval& interval, double delta0);

/// Cross-check of the half-line witness against the transitivity verdict. A witness with a
/// non-transitive verdict is recorded as a refinement defect; the converse is informational.
struct Theorem1Audit {
    std::uint32_t component = 0;
    bool witness_found = false;
    bool chain_transitive = false;
    bool consistent = true;
    std::string note;
};

Theorem1Audit theorem1_equivalence_audit(std::uint32_t component, const std::optional<HalflineWitness>& witness,
                                         const TransitivityReport& report);

}  // namespace selgrade
