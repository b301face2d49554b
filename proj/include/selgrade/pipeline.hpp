#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selgrade/chain_ops.hpp"
#include "selgrade/components.hpp"
#include "selgrade/config.hpp"
#include "selgrade/hemisphere.hpp"
#include "selgrade/morse.hpp"
#include "selgrade/poincare.hpp"
#include "selgrade/report.hpp"

namespace selgrade {

/// In-memory results of one refinement level.
struct LevelArtifacts {
    int level = 0;
    SphereGrid grid;
    TransitionGraph graph;
    SccResult scc;
    ComponentStructure structure;
    std::vector<Vector> anchors;  ///< per component
    std::vector<MorseInterval> spectra;
    std::optional<HemisphereGrid> hemisphere;
    TransitionGraph hemisphere_graph;  ///< kept for level 0 only unless requested
    std::vector<ConeCellSet> cones;
    std::vector<TransitivityReport> transitivity;
    std::vector<std::optional<HalflineWitness>> witnesses;
};

struct RunOptions {
    std::string command = "run";
    bool stable_output = false;
    bool keep_all_hemisphere_graphs = false;
};

struct RunOutput {
    RunReport report;
    std::vector<LevelArtifacts> levels;
};

/// Runs the requested analyses at levels 0..config.refine, where level k uses
/// (refined_resolution(d, n, k), m 2^k, eps / 2^k), and cross-checks verdicts between levels.
RunOutput run(const RunConfig& config, const RunOptions& options = {});

/// Sphere resolution at a refinement level: 2^k n on the circle; on cube grids each step maps
/// n to 2n + 1 when n is odd, so that the coordinate axes remain cell centers.
[[nodiscard]] int refined_resolution(int dimension, int n, int level);

/// 0 on success, 2 when some verdict differs between refinement levels.
[[nodiscard]] int exit_code(const RunReport& report);

/// Normalized mean of the component's cell centers (first center for balanced sets).
Vector component_anchor(const Component& comp, const SphereGrid& grid);

/// Index of the component at a finer level that corresponds to a base anchor direction.
[[nodiscard]] int match_component(const std::vector<Component>& components, const std::vector<Vector>& anchors,
                                  const SphereGrid& grid, const Vector& anchor);

struct ChainVerification {
    std::size_t steps = 0;
    double total_time = 0.0;
    double exponent = 0.0;
    double max_jump = 0.0;
    bool periodic = false;
    double lemma1_norm_deviation = 0.0;
    double lemma1_image_deviation = 0.0;
    bool hemisphere_contracts = true;  ///< over alpha in 1e-3 .. 1e3
};

ChainVerification verify_chain(const FlowSystem& system, const Chain& chain);

}  // namespace selgrade
