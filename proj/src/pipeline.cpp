#include "selgrade/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>

#include "selgrade/chain_io.hpp"

namespace selgrade {

namespace {

class Stopwatch {
public:
    Stopwatch(std::map<std::string, double>& sink, std::string key)
        : sink_(sink), key_(std::move(key)), start_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        sink_[key_] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    Stopwatch(const Stopwatch&) = delete;
    Stopwatch& operator=(const Stopwatch&) = delete;

private:
    std::map<std::string, double>& sink_;
    std::string key_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Cell of the component closest to a direction; the anchor itself may fall outside.
CellId nearest_cell(const Component& comp, const SphereGrid& grid, const Vector& x) {
    CellId best = comp.cells.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (CellId c : comp.cells) {
        const double dist = (grid.center_vector(c) - x).norm();
        if (dist < best_dist) {
            best_dist = dist;
            best = c;
        }
    }
    return best;
}

std::string prefix(const RunConfig& c, int level) { return c.name + "_L" + std::to_string(level); }

WitnessEntry witness_entry(std::uint32_t component, const HalflineWitness& w) {
    WitnessEntry e;
    e.component = component;
    e.status = w.success() ? "ok" : "failed";
    e.base_cell = w.base_cell;
    e.k = w.k;
    e.l = w.l;
    e.beta_plus = w.beta_plus;
    e.beta_minus = w.beta_minus;
    e.steps = w.sphere_chain.size();
    e.endpoint_error = w.endpoint_error;
    e.tolerance = w.tolerance;
    for (double j : w.hemisphere_chain.hemisphere_jumps) {
        e.max_hemisphere_jump = std::max(e.max_hemisphere_jump, j);
    }
    e.replayable = w.hemisphere_chain.replayable;
    e.contracts = w.hemisphere_chain.contracts;
    e.perturbed = w.perturbed;
    return e;
}

void analyze_level(const RunConfig& config, const FlowSystem& system, int level, LevelArtifacts& art, LevelEntry& entry,
                   std::map<std::string, double>& timings, bool keep_hemisphere) {
    const int scale = 1 << level;
    const int n = refined_resolution(system.dimension(), config.n, level);
    const int m = config.m * scale;
    const GraphParams params{config.step_time, config.epsilon / scale};
    const std::string tag = "level" + std::to_string(level) + ".";
    art.level = level;
    entry.level = level;
    entry.n = n;
    entry.m = m;
    entry.epsilon = params.epsilon;
    entry.step_time = params.step_time;

    {
        Stopwatch sw(timings, tag + "sphere_graph");
        art.grid = build_grid(system.dimension(), n, config.max_dimension);
        art.graph = build_graph(system, art.grid, params);
    }
    {
        Stopwatch sw(timings, tag + "components");
        art.scc = strongly_connected_components(art.graph);
        art.structure = pair_with_projective(recurrent_components(art.scc), art.grid);
    }
    entry.sphere_cells = art.grid.size();
    entry.sphere_edges = art.graph.edge_count();
    entry.strongly_connected = art.scc.components.size();
    entry.counts_consistent = art.structure.counts_consistent(system.dimension());

    const auto& comps = art.structure.components;
    std::vector<std::uint32_t> class_of(comps.size(), 0);
    for (const auto& cls : art.structure.classes) {
        entry.classes.push_back({cls.id, cls.members, cls.asymmetry});
        for (auto mbr : cls.members) {
            class_of[mbr] = cls.id;
        }
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Vector anchor = component_anchor(comps[i], art.grid);
        art.anchors.push_back(anchor);
        ComponentEntry ce;
        ce.id = static_cast<std::uint32_t>(i);
        ce.projective_class = class_of[i];
        ce.cells.assign(comps[i].cells.begin(), comps[i].cells.end());
        ce.anchor = to_std(anchor);
        for (CellId c : comps[i].cells) {
            ce.extent = std::max(ce.extent, (art.grid.center_vector(c) - anchor).norm());
        }
        entry.components.push_back(std::move(ce));
    }

    const bool poincare = config.wants(Analysis::Poincare);
    if (config.wants(Analysis::Spectrum) || poincare) {
        Stopwatch sw(timings, tag + "spectrum");
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto iv = cycle_mean_extremes(art.graph, comps[i]);
            iv.component = static_cast<std::uint32_t>(i);
            entry.spectra.push_back({static_cast<std::uint32_t>(i), iv.lo, iv.hi, iv.min_cycle.length(),
                                     iv.max_cycle.length(), theorem2_check(iv, config.delta0)});
            art.spectra.push_back(std::move(iv));
        }
        const auto quotient = projective_quotient(art.graph, art.grid);
        for (const auto& mt : spectrum_sphere_equals_projective(art.structure, art.spectra, quotient, art.grid)) {
            entry.spectrum_matches.push_back(
                {mt.class_id, mt.projective_lo, mt.projective_hi, mt.max_delta, mt.tolerance, mt.equal});
        }
        if (!config.out_dir.empty()) {
            for (std::size_t i = 0; i < comps.size(); ++i) {
                if (!theorem2_check(art.spectra[i], config.delta0)) {
                    continue;
                }
                for (const auto& [suffix, cert] : {std::pair{"max", &art.spectra[i].max_cycle},
                                                   std::pair{"min", &art.spectra[i].min_cycle}}) {
                    const auto file = prefix(config, level) + "_c" + std::to_string(i) + "_" + suffix + ".chain";
                    write_chain(config.out_dir / file, certificate_chain(*cert, system, art.grid, params.epsilon));
                    entry.certificate_files.push_back(file);
                }
            }
        }
    }

    if (poincare) {
        {
            Stopwatch sw(timings, tag + "hemisphere_graph");
            art.hemisphere = build_hemisphere_grid(system.dimension(), n, m, config.max_dimension);
            art.hemisphere_graph = build_hemisphere_graph(system, *art.hemisphere, params);
        }
        entry.hemisphere_cells = art.hemisphere->size();
        entry.hemisphere_edges = art.hemisphere_graph.edge_count();
        Stopwatch sw(timings, tag + "transitivity");
        const auto hscc = strongly_connected_components(art.hemisphere_graph);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto cone = cone_cells(comps[i], *art.hemisphere);
            cone.component = static_cast<std::uint32_t>(i);
            auto tr = check_chain_transitive(art.hemisphere_graph, hscc, cone);
            tr.component = static_cast<std::uint32_t>(i);
            tr.theorem2_condition = theorem2_check(art.spectra[i], config.delta0);
            TransitivityEntry te;
            te.component = tr.component;
            te.cone_size = tr.cone_size;
            te.chain_transitive = tr.chain_transitive;
            te.theorem2_condition = tr.theorem2_condition;
            for (const auto& p : tr.witness) {
                te.witness_lengths.push_back(p.controls.size());
            }
            if (tr.counterexample) {
                te.has_counterexample = true;
                te.counterexample_from = tr.counterexample->from;
                te.counterexample_to = tr.counterexample->to;
                te.counterexample_forward = tr.counterexample->forward;
                te.counterexample_backward = tr.counterexample->backward;
            }
            entry.transitivity.push_back(std::move(te));
            art.cones.push_back(std::move(cone));
            art.transitivity.push_back(std::move(tr));
        }
        if (level == 0) {
            Stopwatch ws(timings, tag + "witness");
            for (std::size_t i = 0; i < comps.size(); ++i) {
                std::optional<HalflineWitness> witness;
                WitnessEntry we;
                we.component = static_cast<std::uint32_t>(i);
                try {
                    const SpherePoint v = art.grid.center(nearest_cell(comps[i], art.grid, art.anchors[i]));
                    WitnessOptions opts;
                    opts.delta0 = config.delta0;
                    witness = halfline_witness(system, art.graph, art.grid, comps[i], v, config.alpha0, config.alpha1,
                                               opts);
                    we = witness_entry(static_cast<std::uint32_t>(i), *witness);
                    if (!config.out_dir.empty()) {
                        we.chain_file = prefix(config, level) + "_c" + std::to_string(i) + "_witness.chain";
                        write_chain(config.out_dir / we.chain_file, witness->sphere_chain);
                    }
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::CertificatesAbsent) {
                        we.status = "certificates_absent";
                    } else if (e.kind() == ErrorKind::NotFound) {
                        we.status = "not_found";
                    } else {
                        throw;
                    }
                    we.message = e.what();
                }
                entry.witnesses.push_back(std::move(we));
                const auto audit = theorem1_equivalence_audit(static_cast<std::uint32_t>(i), witness, art.transitivity[i]);
                entry.audits.push_back(
                    {audit.component, audit.witness_found, audit.chain_transitive, audit.consistent, audit.note});
                art.witnesses.push_back(std::move(witness));
            }
        }
        if (!keep_hemisphere) {
            art.hemisphere_graph = TransitionGraph();
        }
    }
}

std::string count_verdict(const LevelEntry& e) {
    return "l1=" + std::to_string(e.components.size()) + " l=" + std::to_string(e.classes.size());
}

}  // namespace

int refined_resolution(int dimension, int n, int level) {
    for (int k = 0; k < level; ++k) {
        // Cube grids keep n odd so that the coordinate axes stay cell centers.
        n = dimension == 2 ? 2 * n : 2 * n + (n % 2);
    }
    return n;
}

Vector component_anchor(const Component& comp, const SphereGrid& grid) {
    Vector sum = Vector::Zero(grid.dimension());
    for (CellId c : comp.cells) {
        sum += grid.center_vector(c);
    }
    const double norm = sum.norm();
    if (norm < 1e-9 * static_cast<double>(comp.cells.size())) {
        return grid.center_vector(comp.cells.front());
    }
    return sum / norm;
}

int match_component(const std::vector<Component>& components, const std::vector<Vector>& anchors,
                    const SphereGrid& grid, const Vector& anchor) {
    const int direct = component_containing(components, grid, anchor);
    if (direct >= 0) {
        return direct;
    }
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const double dist = (anchors[i] - anchor).norm();
        if (dist < best_dist) {
            best_dist = dist;
            best = static_cast<int>(i);
        }
    }
    return best;
}

RunOutput run(const RunConfig& config, const RunOptions& options) {
    const FlowSystem system = make_system(config);
    RunOutput out;
    RunReport& report = out.report;
    report.name = config.name;
    report.command = options.command;
    report.config = config_text(config);
    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
    }
    std::map<std::string, double> timings;
    for (int level = 0; level <= config.refine; ++level) {
        out.levels.emplace_back();
        report.levels.emplace_back();
        try {
            analyze_level(config, system, level, out.levels.back(), report.levels.back(), timings,
                          level == 0 || options.keep_all_hemisphere_graphs);
        } catch (const Error& e) {
            throw Error(e.kind(), "level " + std::to_string(level) + ": " + e.what());
        }
    }

    // Cross-level verdicts, keyed by base-level components.
    if (report.levels.size() > 1) {
        StabilityEntry counts{"component count", {}, true};
        for (const auto& lv : report.levels) {
            counts.verdicts.push_back(count_verdict(lv));
        }
        const auto& base = out.levels.front();
        for (std::size_t i = 0; i < base.structure.components.size(); ++i) {
            StabilityEntry theorem2{"theorem2 condition of component " + std::to_string(i), {}, true};
            StabilityEntry trans{"transitivity of component " + std::to_string(i), {}, true};
            for (std::size_t l = 0; l < out.levels.size(); ++l) {
                const auto& art = out.levels[l];
                const int j = l == 0 ? static_cast<int>(i)
                                     : match_component(art.structure.components, art.anchors, art.grid, base.anchors[i]);
                if (!art.spectra.empty()) {
                    theorem2.verdicts.push_back(j < 0 ? "missing"
                                                      : (report.levels[l].spectra[static_cast<std::size_t>(j)].theorem2_condition
                                                             ? "interior"
                                                             : "not interior"));
                }
                if (!art.transitivity.empty()) {
                    trans.verdicts.push_back(
                        j < 0 ? "missing"
                              : (art.transitivity[static_cast<std::size_t>(j)].chain_transitive ? "transitive"
                                                                                                 : "not transitive"));
                }
            }
            for (auto* s : {&theorem2, &trans}) {
                if (s->verdicts.empty()) {
                    continue;
                }
                for (const auto& v : s->verdicts) {
                    s->stable = s->stable && v == s->verdicts.front();
                }
                report.stability.push_back(*s);
            }
            if (!trans.verdicts.empty() && i < report.levels.front().transitivity.size()) {
                report.levels.front().transitivity[i].refinement_stable = trans.stable;
            }
        }
        for (const auto& v : counts.verdicts) {
            counts.stable = counts.stable && v == counts.verdicts.front();
        }
        report.stability.insert(report.stability.begin(), counts);
    }
    for (const auto& s : report.stability) {
        report.stable = report.stable && s.stable;
    }
    if (!options.stable_output) {
        report.timings = timings;
    }
    return out;
}

int exit_code(const RunReport& report) { return report.stable ? 0 : 2; }

ChainVerification verify_chain(const FlowSystem& system, const Chain& chain) {
    ChainVerification v;
    const auto jumps = replay_chain(system, chain);
    v.steps = chain.size();
    v.total_time = chain.total_time();
    double sum = 0.0;
    for (const auto& j : jumps) {
        sum += j.log_growth;
        v.max_jump = std::max(v.max_jump, j.distance);
    }
    v.exponent = sum / v.total_time;
    v.periodic = chain.is_periodic(chain.steps.back().eps);
    const auto lifted = lift_chain(system, chain, 1.0);
    const auto lemma1 = verify_lemma1(system, lifted);
    v.lemma1_norm_deviation = lemma1.max_norm_deviation;
    v.lemma1_image_deviation = lemma1.max_image_deviation;
    for (double alpha : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}) {
        const auto pc = project_lift_to_poincare(system, lift_chain(system, chain, alpha), v.max_jump);
        v.hemisphere_contracts = v.hemisphere_contracts && pc.contracts;
    }
    return v;
}

}  // namespace selgrade
