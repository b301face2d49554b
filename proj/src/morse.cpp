#include "selgrade/morse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace selgrade {

namespace {

CycleCertificate to_certificate(const MeanCycle& cycle, const std::vector<TransitionGraph::EdgeRecord>& origin,
                                const TransitionGraph& g) {
    CycleCertificate cert;
    cert.step_time = g.params().step_time;
    // Start the cycle at its smallest cell so certificates are reproducible.
    std::size_t start = 0;
    for (std::size_t i = 1; i < cycle.edges.size(); ++i) {
        if (origin[cycle.edges[i]].from < origin[cycle.edges[start]].from) {
            start = i;
        }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < cycle.edges.size(); ++i) {
        const auto& e = origin[cycle.edges[(start + i) % cycle.edges.size()]];
        cert.cells.push_back(e.from);
        cert.controls.push_back(e.control);
        sum += g.weight(e.from, e.control);
    }
    cert.cells.push_back(cert.cells.front());
    cert.log_beta = sum;
    cert.mean_weight = sum / static_cast<double>(cert.controls.size());
    return cert;
}

}  // namespace

double CycleCertificate::beta() const { return std::exp(log_beta); }

WeightedDigraph induced_digraph(const TransitionGraph& g, std::span<const CellId> cells,
                                std::vector<TransitionGraph::EdgeRecord>* origin) {
    WeightedDigraph out;
    out.node_count = cells.size();
    if (origin) {
        origin->clear();
    }
    for (std::uint32_t local = 0; local < cells.size(); ++local) {
        const CellId from = cells[local];
        const auto t = g.targets(from);
        const auto ctl = g.edge_controls(from);
        const auto ex = g.edge_exact(from);
        for (std::size_t e = 0; e < t.size(); ++e) {
            const auto it = std::lower_bound(cells.begin(), cells.end(), t[e]);
            if (it == cells.end() || *it != t[e]) {
                continue;
            }
            out.edges.push_back({local, static_cast<std::uint32_t>(it - cells.begin()), g.weight(from, ctl[e])});
            if (origin) {
                origin->push_back({from, t[e], ctl[e], ex[e] != 0});
            }
        }
    }
    return out;
}

MorseInterval cycle_mean_extremes(const TransitionGraph& g, std::span<const CellId> cells, MeanCycleMethod method) {
    if (!std::is_sorted(cells.begin(), cells.end())) {
        throw Error(ErrorKind::InvalidArgument, "cell set must be sorted");
    }
    std::vector<TransitionGraph::EdgeRecord> origin;
    const auto sub = induced_digraph(g, cells, &origin);
    const auto hi = max_mean_cycle(sub, method);
    const auto lo = min_mean_cycle(sub, method);
    if (!hi || !lo) {
        throw Error(ErrorKind::NoCycle, "cell set carries no cycle");
    }
    MorseInterval out;
    out.max_cycle = to_certificate(*hi, origin, g);
    out.min_cycle = to_certificate(*lo, origin, g);
    out.hi = out.max_cycle.rate();
    out.lo = out.min_cycle.rate();
    return out;
}

MorseInterval cycle_mean_extremes(const TransitionGraph& g, const Component& comp, MeanCycleMethod method) {
    auto out = cycle_mean_extremes(g, std::span<const CellId>(comp.cells), method);
    out.component = comp.id;
    return out;
}

Chain certificate_chain(const CycleCertificate& cert, const FlowSystem& system, const SphereGrid& grid, double epsilon) {
    Chain chain;
    for (std::size_t i = 0; i < cert.length(); ++i) {
        const CellId from = cert.cells[i];
        const CellId to = cert.cells[i + 1];
        chain.steps.push_back({grid.center(from), cert.step_time, system.control_samples().at(cert.controls[i]),
                               epsilon + grid.radius(from) + grid.radius(to)});
    }
    chain.end = grid.center(cert.cells.back());
    return chain;
}

std::optional<ExtremalCertificates> extremal_cycle_certificates(const MorseInterval& interval, double delta0) {
    if (!(delta0 > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "delta0 must be positive");
    }
    if (interval.hi > delta0 && interval.lo < -delta0) {
        return ExtremalCertificates{interval.max_cycle, interval.min_cycle};
    }
    return std::nullopt;
}

std::optional<ExtremalCertificates> extremal_cycle_certificates(const TransitionGraph& g, const Component& comp,
                                                                double delta0) {
    return extremal_cycle_certificates(cycle_mean_extremes(g, comp), delta0);
}

std::vector<SpectrumMatch> spectrum_sphere_equals_projective(const ComponentStructure& structure,
                                                             const std::vector<MorseInterval>& sphere_intervals,
                                                             const ProjectiveQuotient& quotient,
                                                             const SphereGrid& grid) {
    if (sphere_intervals.size() != structure.components.size()) {
        throw Error(ErrorKind::InvalidArgument, "one sphere interval per component is required");
    }
    const double tolerance = 2.0 * grid.mesh() / quotient.graph.params().step_time;
    std::vector<SpectrumMatch> out;
    for (const auto& cls : structure.classes) {
        std::vector<CellId> nodes;
        for (auto m : cls.members) {
            for (CellId c : structure.components[m].cells) {
                nodes.push_back(quotient.class_of_cell[c]);
            }
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        const auto proj = cycle_mean_extremes(quotient.graph, std::span<const CellId>(nodes));
        SpectrumMatch match;
        match.class_id = cls.id;
        match.projective_lo = proj.lo;
        match.projective_hi = proj.hi;
        match.tolerance = tolerance;
        for (auto m : cls.members) {
            const auto& iv = sphere_intervals[m];
            match.max_delta = std::max({match.max_delta, std::abs(iv.lo - proj.lo), std::abs(iv.hi - proj.hi)});
        }
        match.equal = match.max_delta <= tolerance;
        out.push_back(match);
    }
    return out;
}

}  // namespace selgrade
