#include "selgrade/poincare.hpp"

#include <algorithm>
#include <cmath>

namespace selgrade {

ConeCellSet cone_cells(const Component& comp, const HemisphereGrid& grid) {
    ConeCellSet out;
    out.component = comp.id;
    out.cells.push_back(HemisphereGrid::pole());
    const SphereGrid& sphere = grid.sphere();
    for (CellId c : comp.cells) {
        const Vector v = sphere.center_vector(c);
        for (int k = 1; k < grid.levels(); ++k) {
            out.cells.push_back(grid.lookup(poincare_project(std::tan(grid.colatitude(k)) * v)));
        }
        out.cells.push_back(grid.equator_cell(c));
    }
    std::sort(out.cells.begin(), out.cells.end());
    out.cells.erase(std::unique(out.cells.begin(), out.cells.end()), out.cells.end());
    return out;
}

TransitivityReport check_chain_transitive(const TransitionGraph& g, const SccResult& scc, const ConeCellSet& cells,
                                          std::size_t witness_samples) {
    TransitivityReport report;
    report.component = cells.component;
    report.cone_size = cells.cells.size();
    if (cells.cells.empty()) {
        return report;
    }
    const CellId root = cells.cells.front();
    const auto root_comp = scc.component_of[root];
    const CellId* stray = nullptr;
    for (const CellId& c : cells.cells) {
        if (scc.component_of[c] != root_comp) {
            stray = &c;
            break;
        }
    }
    if (stray == nullptr && scc.components[root_comp].is_recurrent) {
        report.chain_transitive = true;
        const std::size_t count = std::min(witness_samples, cells.cells.size());
        for (std::size_t i = 0; i < count; ++i) {
            // Spread the samples over the cone, always including the last cell (equator side).
            const std::size_t idx = count == 1 ? 0 : i * (cells.cells.size() - 1) / (count - 1);
            const CellId target = cells.cells[idx];
            auto there = shortest_path(g, root, target, {}, target == root ? 1 : 0);
            auto back = shortest_path(g, target, root, {}, 0);
            if (!there || !back) {
                throw Error(ErrorKind::Degenerate, "strongly connected cells without a path");
            }
            GraphPath loop = std::move(*there);
            loop.cells.insert(loop.cells.end(), back->cells.begin() + 1, back->cells.end());
            loop.controls.insert(loop.controls.end(), back->controls.begin(), back->controls.end());
            report.witness.push_back(std::move(loop));
        }
        return report;
    }
    OneWayPair pair;
    if (stray == nullptr) {
        // A single cell in a trivial component: no path back to itself.
        pair.from = root;
        pair.to = root;
    } else {
        pair.from = root;
        pair.to = *stray;
        pair.forward = shortest_path(g, root, *stray).has_value();
        pair.backward = shortest_path(g, *stray, root).has_value();
    }
    report.counterexample = pair;
    return report;
}

TransitivityReport check_chain_transitive(const TransitionGraph& g, const ConeCellSet& cells) {
    return check_chain_transitive(g, strongly_connected_components(g), cells);
}

bool theorem2_check(const MorseInterval& interval, double delta0) {
    if (!(delta0 > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "delta0 must be positive");
    }
    return interval.lo < -delta0 && interval.hi > delta0;
}

Theorem1Audit theorem1_equivalence_audit(std::uint32_t component, const std::optional<HalflineWitness>& witness,
                                         const TransitivityReport& report) {
    Theorem1Audit audit;
    audit.component = component;
    audit.witness_found = witness.has_value() && witness->success();
    audit.chain_transitive = report.chain_transitive;
    audit.consistent = !audit.witness_found || audit.chain_transitive;
    if (!audit.consistent) {
        audit.note = "half-line witness exists but the cone is not transitive at this grid scale (refinement defect)";
    } else if (audit.witness_found) {
        audit.note = "half-line witness and transitive cone agree";
    } else if (audit.chain_transitive) {
        audit.note = "transitive without a half-line witness (converse not certifiable at grid scale)";
    } else {
        audit.note = "no witness and not transitive";
    }
    return audit;
}

}  // namespace selgrade
