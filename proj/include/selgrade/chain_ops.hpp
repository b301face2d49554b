#pragma once

#include <optional>
#include <vector>

#include "selgrade/chain.hpp"
#include "selgrade/graph.hpp"
#include "selgrade/morse.hpp"
#include "selgrade/sphere_grid.hpp"

namespace selgrade {

/// Chain on R^d: w_i = alpha * C_{i-1} * v_i with C_{-1} = 1, C_i = prod_{j<=i} |Phi(T_j, v_j)|.
struct LiftedChain {
    Chain base;
    double alpha = 1.0;
    std::vector<Vector> points;     ///< w_0 .. w_n
    std::vector<double> scale;      ///< scale[i] = C_{i-1}, i = 0 .. n
    std::vector<double> log_scale;  ///< log C_{i-1}, kept for long chains

    [[nodiscard]] std::size_t size() const { return base.size(); }
};

/// Throws Overflow if any |w_i| exceeds 1e300.
LiftedChain lift_chain(const FlowSystem& system, const Chain& chain, double alpha);

struct Lemma1Report {
    double max_norm_deviation = 0.0;   ///< max_i | |w_i| - alpha C_{i-1} | / (alpha C_{i-1})
    double max_image_deviation = 0.0;  ///< max_i |Phi(T_i, w_i) - alpha C_i S Phi(T_i, v_i)| / (alpha C_i)
};

Lemma1Report verify_lemma1(const FlowSystem& system, const LiftedChain& lc);

/// pi_P of a lifted chain, with per-step jump distances on the hemisphere and on the sphere.
struct PoincareChain {
    std::vector<PoincarePoint> points;
    std::vector<double> hemisphere_jumps;  ///< |pi_P Phi(T_i, w_i) - pi_P(w_{i+1})|
    std::vector<double> sphere_jumps;      ///< |S Phi(T_i, v_i) - v_{i+1}|
    std::vector<double> declared_eps;
    bool contracts = true;    ///< every hemisphere jump <= its sphere jump + 1e-12
    bool within_eps = true;   ///< every hemisphere jump <= eps + 1e-12
    bool replayable = true;   ///< every hemisphere jump <= its declared step eps + 1e-12
};

PoincareChain project_lift_to_poincare(const FlowSystem& system, const LiftedChain& lc, double eps);

struct KroneckerQuery {
    double a = 2.0;
    double b = 3.0;
    double c = 2.0;
    double delta = 0.01;
    long bound = 10000;
};

struct KroneckerPair {
    long k = 0;
    long l = 0;
    double value = 0.0;  ///< a^k b^-l
};

/// Smallest (by k + l, then k) pair with 1 <= k, l <= bound and |a^k b^-l - c| < delta,
/// searched in log space. nullopt when no pair exists within the bound. Requires
/// a, b > 1, c > 0, delta > 0.
[[nodiscard]] std::optional<KroneckerPair> kronecker_search(const KroneckerQuery& q);

/// True when x lies within `tol` of a continued-fraction convergent p/q with q <= max_q.
[[nodiscard]] bool near_rational(double x, long max_q = 10000, double tol = 1e-9);

struct WitnessOptions {
    double delta0 = 0.1;
    long kronecker_bound = 200000;
    /// Force the resonance branch (used by tests; the ratio is treated as rational once).
    bool force_perturbation = false;
};

/// Chain on the hemisphere from pi_P(alpha0 v) to within 2 eps of pi_P(alpha1 v), built from
/// the extremal cycles of the component, where v is the center of the cell of `point`.
struct HalflineWitness {
    CellId base_cell = 0;
    SpherePoint base_point;
    double alpha0 = 1.0;
    double alpha1 = 1.0;
    long k = 0;
    long l = 0;
    double beta_plus = 1.0;
    double beta_minus = 1.0;
    double rate_plus = 0.0;   ///< exponent of the expanding loop
    double rate_minus = 0.0;  ///< exponent of the contracting loop
    bool perturbed = false;
    Chain sphere_chain;
    PoincareChain hemisphere_chain;
    double endpoint_error = 0.0;  ///< |last point - pi_P(alpha1 v)|
    double tolerance = 0.0;       ///< 2 eps

    [[nodiscard]] bool success() const {
        return hemisphere_chain.replayable && hemisphere_chain.contracts && endpoint_error <= tolerance;
    }
};

/// Throws CertificatesAbsent when the spectrum of `comp` does not straddle +-delta0,
/// NotFound when the Kronecker search fails, InvalidArgument when `point` is outside comp.
HalflineWitness halfline_witness(const FlowSystem& system, const TransitionGraph& g, const SphereGrid& grid,
                                 const Component& comp, const SpherePoint& point, double alpha0, double alpha1,
                                 const WitnessOptions& options = {});

/// Chain on cell centers following a closed or open cell path; each step declares the graph's
/// edge tolerance.
Chain cell_path_chain(const std::vector<CellId>& cells, const std::vector<std::uint32_t>& controls,
                      const FlowSystem& system, const SphereGrid& grid, double epsilon, double step_time);

}  // namespace selgrade
