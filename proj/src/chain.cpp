#include "selgrade/chain.hpp"

#include <cmath>
#include <string>

namespace selgrade {

namespace {

constexpr double kJumpSlack = 1e-12;

}  // namespace

double Chain::total_time() const {
    double sigma = 0.0;
    for (const auto& s : steps) {
        sigma += s.time;
    }
    return sigma;
}

bool Chain::is_periodic(double tol) const {
    return !steps.empty() && (steps.front().point.coords() - end.coords()).norm() <= tol;
}

std::vector<ChainJump> replay_chain(const FlowSystem& system, const Chain& chain) {
    if (chain.steps.empty()) {
        throw Error(ErrorKind::InvalidChain, "chain has no steps");
    }
    std::vector<ChainJump> jumps;
    jumps.reserve(chain.size());
    TransitionCache cache(system);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& step = chain.steps[i];
        if (!(step.time > 0.0) || !std::isfinite(step.time)) {
            throw Error(ErrorKind::InvalidChain, "step " + std::to_string(i) + " has non-positive time");
        }
        if (step.point.dim() != system.dimension()) {
            throw Error(ErrorKind::InvalidChain, "step " + std::to_string(i) + " has the wrong dimension");
        }
        if (step.control.size() != system.control_dimension() ||
            (system.control_dimension() > 0 && !system.box().contains(step.control))) {
            throw Error(ErrorKind::InvalidChain, "step " + std::to_string(i) + " control is outside the box");
        }
        const auto img = sphere_image(cache.get(step.time, step.control), step.point.coords());
        const double jump = (img.image.coords() - chain.point(i + 1).coords()).norm();
        if (jump > step.eps + kJumpSlack) {
            throw Error(ErrorKind::InvalidChain, "jump " + std::to_string(i) + " is " + std::to_string(jump) +
                                                     ", above its declared eps " + std::to_string(step.eps));
        }
        jumps.push_back({jump, img.log_growth});
    }
    return jumps;
}

double chain_exponent(const FlowSystem& system, const Chain& chain) {
    const auto jumps = replay_chain(system, chain);
    double sum = 0.0;
    for (const auto& j : jumps) {
        sum += j.log_growth;
    }
    return sum / chain.total_time();
}

Chain concatenate_power_chains(const Chain& zeta_plus, const Chain& zeta_minus, long k, long l) {
    if (k < 0 || l < 0 || k + l < 1) {
        throw Error(ErrorKind::InvalidArgument, "powers must be nonnegative with k + l >= 1");
    }
    if (zeta_plus.steps.empty() || zeta_minus.steps.empty()) {
        throw Error(ErrorKind::InvalidChain, "empty chain");
    }
    const SpherePoint& base = zeta_plus.steps.front().point;
    const double tol_plus = zeta_plus.steps.back().eps;
    const double tol_minus = zeta_minus.steps.back().eps;
    if ((zeta_plus.end.coords() - base.coords()).norm() > tol_plus + kJumpSlack ||
        (zeta_minus.end.coords() - zeta_minus.steps.front().point.coords()).norm() > tol_minus + kJumpSlack) {
        throw Error(ErrorKind::BasePointMismatch, "power chains must be periodic");
    }
    if ((zeta_minus.steps.front().point.coords() - base.coords()).norm() >
        std::min(zeta_plus.steps.front().eps, zeta_minus.steps.front().eps) + kJumpSlack) {
        throw Error(ErrorKind::BasePointMismatch, "base points differ by more than eps");
    }
    Chain out;
    out.steps.reserve(static_cast<std::size_t>(k) * zeta_plus.size() + static_cast<std::size_t>(l) * zeta_minus.size());
    for (long i = 0; i < k; ++i) {
        out.steps.insert(out.steps.end(), zeta_plus.steps.begin(), zeta_plus.steps.end());
    }
    for (long i = 0; i < l; ++i) {
        out.steps.insert(out.steps.end(), zeta_minus.steps.begin(), zeta_minus.steps.end());
    }
    out.end = l > 0 ? zeta_minus.end : zeta_plus.end;
    return out;
}

Chain concatenate(const Chain& a, const Chain& b) {
    if (a.steps.empty()) {
        return b;
    }
    if (b.steps.empty()) {
        return a;
    }
    if ((a.end.coords() - b.steps.front().point.coords()).norm() > kJumpSlack) {
        throw Error(ErrorKind::BasePointMismatch, "chains do not meet");
    }
    Chain out = a;
    out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    out.end = b.end;
    return out;
}

}  // namespace selgrade
