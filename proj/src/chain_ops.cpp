#include "selgrade/chain_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace selgrade {

namespace {

constexpr double kJumpSlack = 1e-12;

struct CellLoop {
    std::vector<CellId> cells;
    std::vector<std::uint32_t> controls;
};

double loop_weight(const TransitionGraph& g, const CellLoop& loop) {
    double sum = 0.0;
    for (std::size_t i = 0; i < loop.controls.size(); ++i) {
        sum += g.weight(loop.cells[i], loop.controls[i]);
    }
    return sum;
}

void append(CellLoop& out, const std::vector<CellId>& cells, const std::vector<std::uint32_t>& controls) {
    if (out.cells.empty()) {
        out.cells = cells;
    } else {
        out.cells.insert(out.cells.end(), cells.begin() + 1, cells.end());
    }
    out.controls.insert(out.controls.end(), controls.begin(), controls.end());
}

// Rotates a certificate cycle so that it starts at `cell` (which must lie on it).
CellLoop rotate_to(const CycleCertificate& cert, CellId cell) {
    const auto it = std::find(cert.cells.begin(), cert.cells.end() - 1, cell);
    const std::size_t start = static_cast<std::size_t>(it - cert.cells.begin());
    CellLoop loop;
    const std::size_t n = cert.length();
    for (std::size_t i = 0; i < n; ++i) {
        loop.cells.push_back(cert.cells[(start + i) % n]);
        loop.controls.push_back(cert.controls[(start + i) % n]);
    }
    loop.cells.push_back(loop.cells.front());
    return loop;
}

// Loop at `base` through the certificate cycle: path to the cycle, j turns, path back,
// with the smallest j whose exponent passes `threshold` in the direction of `sign`.
CellLoop loop_through(const TransitionGraph& g, const std::vector<std::uint8_t>& allowed, CellId base,
                      const CycleCertificate& cert, double threshold, double sign) {
    const CellId anchor = std::find(cert.cells.begin(), cert.cells.end(), base) != cert.cells.end() ? base
                                                                                                    : cert.cells.front();
    const auto there = shortest_path(g, base, anchor, allowed);
    const auto back = shortest_path(g, anchor, base, allowed);
    if (!there || !back) {
        throw Error(ErrorKind::NotFound, "certificate cycle is not reachable inside the component");
    }
    const CellLoop cycle = rotate_to(cert, anchor);
    const double step_time = g.params().step_time;
    const double w_path = loop_weight(g, {there->cells, there->controls}) + loop_weight(g, {back->cells, back->controls});
    const double l_path = static_cast<double>(there->controls.size() + back->controls.size());
    const double w_cycle = loop_weight(g, cycle);
    const double l_cycle = static_cast<double>(cycle.controls.size());
    long turns = 1;
    while (sign * (w_path + turns * w_cycle) / ((l_path + turns * l_cycle) * step_time) <= sign * threshold) {
        if (++turns > 1000000) {
            throw Error(ErrorKind::NotFound, "loop exponent does not pass the threshold");
        }
    }
    CellLoop loop;
    append(loop, there->cells, there->controls);
    for (long j = 0; j < turns; ++j) {
        append(loop, cycle.cells, cycle.controls);
    }
    append(loop, back->cells, back->controls);
    return loop;
}

double log_beta(const FlowSystem& system, const Chain& chain) {
    double sum = 0.0;
    for (const auto& j : replay_chain(system, chain)) {
        sum += j.log_growth;
    }
    return sum;
}

Vector tangent_direction(const Vector& p) {
    Vector e = Vector::Zero(p.size());
    Eigen::Index axis = 0;
    p.cwiseAbs().minCoeff(&axis);
    e[axis] = 1.0;
    Vector t = e - e.dot(p) * p;
    return t / t.norm();
}

// Moves point 1 of the loop inside its slack until log b / log a is non-resonant.
bool perturb_for_irrationality(const FlowSystem& system, Chain& loop, double other_log, bool loop_is_plus,
                               bool force) {
    if (loop.size() < 2) {
        Chain doubled = loop;
        doubled.steps.insert(doubled.steps.end(), loop.steps.begin(), loop.steps.end());
        loop = std::move(doubled);
    }
    const auto jumps = replay_chain(system, loop);
    const double slack = std::min(loop.steps[0].eps - jumps[0].distance, loop.steps[1].eps - jumps[1].distance);
    const Vector p = loop.steps[1].point.coords();
    const Vector t = tangent_direction(p);
    double h = 0.5 * slack * 0.6180339887498949;
    for (int attempt = 0; attempt < 40; ++attempt, h *= 0.5) {
        Chain trial = loop;
        trial.steps[1].point = normalize(p + h * t);
        double lb = 0.0;
        try {
            lb = log_beta(system, trial);
        } catch (const Error&) {
            continue;
        }
        const double la = loop_is_plus ? lb : other_log;
        const double lm = loop_is_plus ? other_log : lb;
        if (!(la > 0.0) || !(lm < 0.0)) {
            continue;
        }
        if (force || !near_rational(-lm / la)) {
            loop = std::move(trial);
            return true;
        }
    }
    return false;
}

}  // namespace

LiftedChain lift_chain(const FlowSystem& system, const Chain& chain, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::InvalidArgument, "lift scale must be positive");
    }
    const auto jumps = replay_chain(system, chain);
    LiftedChain lc;
    lc.base = chain;
    lc.alpha = alpha;
    double log_c = 0.0;
    for (std::size_t i = 0; i <= chain.size(); ++i) {
        const double scale = std::exp(log_c);
        if (!std::isfinite(scale) || alpha * scale > kOverflowThreshold) {
            throw Error(ErrorKind::Overflow, "lifted chain norm exceeds 1e300 at step " + std::to_string(i));
        }
        lc.log_scale.push_back(log_c);
        lc.scale.push_back(scale);
        lc.points.push_back(alpha * (scale * chain.point(i).coords()));
        if (i < chain.size()) {
            log_c += jumps[i].log_growth;
        }
    }
    return lc;
}

Lemma1Report verify_lemma1(const FlowSystem& system, const LiftedChain& lc) {
    Lemma1Report report;
    TransitionCache cache(system);
    for (std::size_t i = 0; i < lc.points.size(); ++i) {
        const double expected = lc.alpha * lc.scale[i];
        report.max_norm_deviation =
            std::max(report.max_norm_deviation, std::abs(lc.points[i].norm() - expected) / expected);
        if (i == lc.size()) {
            break;
        }
        const auto& step = lc.base.steps[i];
        const auto& phi = cache.get(step.time, step.control);
        const Vector lhs = phi * lc.points[i];
        const auto img = sphere_image(phi, step.point.coords());
        const double c_i = lc.alpha * lc.scale[i] * std::exp(img.log_growth);
        const Vector rhs = c_i * img.image.coords();
        report.max_image_deviation = std::max(report.max_image_deviation, (lhs - rhs).norm() / c_i);
    }
    return report;
}

PoincareChain project_lift_to_poincare(const FlowSystem& system, const LiftedChain& lc, double eps) {
    PoincareChain out;
    TransitionCache cache(system);
    for (const auto& w : lc.points) {
        out.points.push_back(poincare_project(w));
    }
    for (std::size_t i = 0; i < lc.size(); ++i) {
        const auto& step = lc.base.steps[i];
        const auto& phi = cache.get(step.time, step.control);
        const auto image = poincare_project(apply_checked(phi, lc.points[i]));
        const double hemi = chordal_distance(image, out.points[i + 1]);
        const double sphere =
            (sphere_image(phi, step.point.coords()).image.coords() - lc.base.point(i + 1).coords()).norm();
        out.hemisphere_jumps.push_back(hemi);
        out.sphere_jumps.push_back(sphere);
        out.declared_eps.push_back(step.eps);
        out.contracts = out.contracts && hemi <= sphere + kJumpSlack;
        out.within_eps = out.within_eps && hemi <= eps + kJumpSlack;
        out.replayable = out.replayable && hemi <= step.eps + kJumpSlack;
    }
    return out;
}

std::optional<KroneckerPair> kronecker_search(const KroneckerQuery& q) {
    if (!(q.a > 1.0) || !(q.b > 1.0) || !(q.c > 0.0) || !(q.delta > 0.0) || q.bound < 1 || !std::isfinite(q.a) ||
        !std::isfinite(q.b) || !std::isfinite(q.c)) {
        throw Error(ErrorKind::InvalidArgument, "Kronecker query needs a, b > 1, c > 0, delta > 0, bound >= 1");
    }
    const double la = std::log(q.a);
    const double lb = std::log(q.b);
    const double lower = q.c - q.delta > 0.0 ? std::log(q.c - q.delta) : -std::numeric_limits<double>::infinity();
    const double upper = std::log(q.c + q.delta);
    auto holds = [&](long k, long l) {
        return std::abs(std::exp(static_cast<double>(k) * la - static_cast<double>(l) * lb) - q.c) < q.delta;
    };
    std::optional<KroneckerPair> best;
    for (long l = 1; l <= q.bound; ++l) {
        if (best && l + 1 > best->k + best->l) {
            break;
        }
        // k log a must fall in (lower + l log b, upper + l log b).
        const double shift = static_cast<double>(l) * lb;
        const double k_lo = (lower + shift) / la;
        const double k_hi = (upper + shift) / la;
        long k = std::isfinite(k_lo) ? std::max(1L, static_cast<long>(std::floor(k_lo)) - 1) : 1L;
        const long k_end = std::min(q.bound, static_cast<long>(std::ceil(k_hi)) + 1);
        for (; k <= k_end; ++k) {
            if (holds(k, l)) {
                if (!best || k + l < best->k + best->l || (k + l == best->k + best->l && k < best->k)) {
                    best = KroneckerPair{k, l, std::exp(static_cast<double>(k) * la - static_cast<double>(l) * lb)};
                }
                break;
            }
        }
    }
    return best;
}

bool near_rational(double x, long max_q, double tol) {
    if (!std::isfinite(x)) {
        return false;
    }
    const double target = std::abs(x);
    double rest = target;
    // Convergents p/q via the standard recurrence.
    long double p_prev = 1, p = std::floor(rest);
    long double q_prev = 0, q = 1;
    for (int i = 0; i < 64; ++i) {
        if (std::abs(target - static_cast<double>(p / q)) < tol) {
            return true;
        }
        const double frac = rest - std::floor(rest);
        if (frac < 1e-15) {
            return true;
        }
        rest = 1.0 / frac;
        const long double a = std::floor(rest);
        const long double p_next = a * p + p_prev;
        const long double q_next = a * q + q_prev;
        if (q_next > static_cast<long double>(max_q)) {
            return false;
        }
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
    return false;
}

Chain cell_path_chain(const std::vector<CellId>& cells, const std::vector<std::uint32_t>& controls,
                      const FlowSystem& system, const SphereGrid& grid, double epsilon, double step_time) {
    if (cells.size() != controls.size() + 1) {
        throw Error(ErrorKind::InvalidArgument, "cell path needs one more cell than controls");
    }
    Chain chain;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        chain.steps.push_back({grid.center(cells[i]), step_time, system.control_samples().at(controls[i]),
                               epsilon + grid.radius(cells[i]) + grid.radius(cells[i + 1])});
    }
    chain.end = grid.center(cells.back());
    return chain;
}

HalflineWitness halfline_witness(const FlowSystem& system, const TransitionGraph& g, const SphereGrid& grid,
                                 const Component& comp, const SpherePoint& point, double alpha0, double alpha1,
                                 const WitnessOptions& options) {
    if (!(alpha0 > 0.0) || !(alpha1 > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "alpha0 and alpha1 must be positive");
    }
    const CellId base = grid.lookup(point.coords());
    if (!std::binary_search(comp.cells.begin(), comp.cells.end(), base)) {
        throw Error(ErrorKind::InvalidArgument, "witness point is not in the component");
    }
    const auto interval = cycle_mean_extremes(g, comp);
    const auto certs = extremal_cycle_certificates(interval, options.delta0);
    if (!certs) {
        throw Error(ErrorKind::CertificatesAbsent, "spectrum does not straddle zero by delta0");
    }
    std::vector<std::uint8_t> allowed(g.node_count(), 0);
    for (CellId c : comp.cells) {
        allowed[c] = 1;
    }
    const double eps = g.params().epsilon;
    const double step_time = g.params().step_time;
    const double half = options.delta0 / 2.0;
    const auto plus_loop = loop_through(g, allowed, base, certs->plus, half, 1.0);
    const auto minus_loop = loop_through(g, allowed, base, certs->minus, -half, -1.0);

    HalflineWitness w;
    w.base_cell = base;
    w.base_point = grid.center(base);
    w.alpha0 = alpha0;
    w.alpha1 = alpha1;
    w.tolerance = 2.0 * eps;
    Chain plus = cell_path_chain(plus_loop.cells, plus_loop.controls, system, grid, eps, step_time);
    Chain minus = cell_path_chain(minus_loop.cells, minus_loop.controls, system, grid, eps, step_time);
    double log_a = log_beta(system, plus);
    double log_m = log_beta(system, minus);
    if (!(log_a > 0.0) || !(log_m < 0.0)) {
        throw Error(ErrorKind::NotFound, "extremal loops do not expand and contract");
    }
    if (options.force_perturbation || near_rational(-log_m / log_a)) {
        if (!perturb_for_irrationality(system, plus, log_m, true, options.force_perturbation)) {
            throw Error(ErrorKind::NotFound, "could not remove resonance between the loop growth factors");
        }
        log_a = log_beta(system, plus);
        w.perturbed = true;
    }
    w.beta_plus = std::exp(log_a);
    w.beta_minus = std::exp(log_m);
    w.rate_plus = log_a / plus.total_time();
    w.rate_minus = log_m / minus.total_time();

    const auto pair = kronecker_search({std::exp(log_a), std::exp(-log_m), alpha1 / alpha0, eps / alpha0,
                                        options.kronecker_bound});
    if (!pair) {
        throw Error(ErrorKind::NotFound, "no (k, l) within the Kronecker bound");
    }
    w.k = pair->k;
    w.l = pair->l;

    // Interleave the loops so that the lifted norm stays near the segment [alpha0, alpha1];
    // all loops share the base point, so any order gives the same endpoint scale.
    const double target = std::log(alpha1);
    double level = std::log(alpha0);
    long left_plus = pair->k;
    long left_minus = pair->l;
    Chain chain;
    while (left_plus + left_minus > 0) {
        const bool take_plus = left_minus == 0 || (left_plus > 0 && level < target);
        const Chain& block = take_plus ? plus : minus;
        chain.steps.insert(chain.steps.end(), block.steps.begin(), block.steps.end());
        chain.end = block.end;
        level += take_plus ? log_a : log_m;
        --(take_plus ? left_plus : left_minus);
    }
    w.sphere_chain = std::move(chain);
    const auto lifted = lift_chain(system, w.sphere_chain, alpha0);
    w.hemisphere_chain = project_lift_to_poincare(system, lifted, eps + 2.0 * grid.max_radius());
    w.endpoint_error =
        chordal_distance(w.hemisphere_chain.points.back(), poincare_project(alpha1 * w.base_point.coords()));
    return w;
}

}  // namespace selgrade
