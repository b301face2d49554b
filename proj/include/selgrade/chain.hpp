#pragma once

#include <vector>

#include "selgrade/flow.hpp"

namespace selgrade {

/// One jump of a chain: flow `point` for `time` under constant `control`, then jump by
/// less than `eps` to the next point.
struct ChainStep {
    SpherePoint point;
    double time = 1.0;
    Control control;
    double eps = 0.0;
};

/// (eps, T)-chain on the sphere: steps v_0 .. v_{n-1} plus the terminal point v_n.
struct Chain {
    std::vector<ChainStep> steps;
    SpherePoint end;

    [[nodiscard]] std::size_t size() const { return steps.size(); }
    [[nodiscard]] const SpherePoint& point(std::size_t i) const { return i < steps.size() ? steps[i].point : end; }
    /// sigma = sum of step times.
    [[nodiscard]] double total_time() const;
    [[nodiscard]] bool is_periodic(double tol) const;
};

struct ChainJump {
    double distance = 0.0;  ///< chordal |S Phi(T_i, v_i) - v_{i+1}|
    double log_growth = 0.0;
};

/// Replays every step; throws InvalidChain for an empty chain, a non-positive time, a
/// control outside the box, or a jump larger than the declared eps (+1e-12).
std::vector<ChainJump> replay_chain(const FlowSystem& system, const Chain& chain);

/// lambda = (1/sigma) sum log |Phi(T_i, v_i)|.
[[nodiscard]] double chain_exponent(const FlowSystem& system, const Chain& chain);

/// zeta_plus traversed k times, then zeta_minus l times (k + l >= 1). Both must be periodic
/// with base points within eps of each other (BasePointMismatch otherwise). Steps are copied
/// verbatim, so the result replays cleanly when the base points coincide.
[[nodiscard]] Chain concatenate_power_chains(const Chain& zeta_plus, const Chain& zeta_minus, long k, long l);

/// Appends `b` to `a`; a.end must equal b's first point within the last step's eps.
[[nodiscard]] Chain concatenate(const Chain& a, const Chain& b);

}  // namespace selgrade
