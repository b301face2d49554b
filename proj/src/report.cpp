#include "selgrade/report.hpp"

#include <fstream>

#include "selgrade/error.hpp"

namespace selgrade {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ComponentEntry, id, projective_class, cells, anchor, extent)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassEntry, id, members, asymmetry)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IntervalEntry, component, lo, hi, min_cycle_length, max_cycle_length,
                                   theorem2_condition)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SpectrumMatchEntry, class_id, projective_lo, projective_hi, max_delta, tolerance,
                                   equal)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TransitivityEntry, component, cone_size, chain_transitive, theorem2_condition,
                                   refinement_stable, witness_lengths, has_counterexample, counterexample_from,
                                   counterexample_to, counterexample_forward, counterexample_backward)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(WitnessEntry, component, status, message, base_cell, k, l, beta_plus, beta_minus,
                                   steps, endpoint_error, tolerance, max_hemisphere_jump, replayable, contracts,
                                   perturbed, chain_file)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AuditEntry, component, witness_found, chain_transitive, consistent, note)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LevelEntry, level, n, m, epsilon, step_time, sphere_cells, sphere_edges,
                                   strongly_connected, hemisphere_cells, hemisphere_edges, counts_consistent,
                                   components, classes, spectra, spectrum_matches, transitivity, witnesses, audits,
                                   certificate_files)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StabilityEntry, subject, verdicts, stable)

void to_json(nlohmann::json& j, const RunReport& r) {
    j = nlohmann::json{{"schema_version", r.schema_version},
                       {"name", r.name},
                       {"command", r.command},
                       {"config", r.config},
                       {"levels", r.levels},
                       {"stability", r.stability},
                       {"stable", r.stable}};
    if (!r.timings.empty()) {
        j["timings"] = r.timings;
    }
}

void from_json(const nlohmann::json& j, RunReport& r) {
    j.at("schema_version").get_to(r.schema_version);
    j.at("name").get_to(r.name);
    j.at("command").get_to(r.command);
    j.at("config").get_to(r.config);
    j.at("levels").get_to(r.levels);
    j.at("stability").get_to(r.stability);
    j.at("stable").get_to(r.stable);
    r.timings.clear();
    if (j.contains("timings")) {
        j.at("timings").get_to(r.timings);
    }
}

std::string serialize(const RunReport& report) { return nlohmann::json(report).dump(2) + "\n"; }

RunReport parse_report(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        RunReport r = j.get<RunReport>();
        if (r.schema_version != kReportSchemaVersion) {
            throw Error(ErrorKind::ParseError, "unsupported report schema version " + std::to_string(r.schema_version));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("report: ") + e.what());
    }
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << serialize(report);
}

}  // namespace selgrade
