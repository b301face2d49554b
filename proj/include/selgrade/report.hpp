#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace selgrade {

inline constexpr int kReportSchemaVersion = 1;

struct ComponentEntry {
    std::uint32_t id = 0;
    std::uint32_t projective_class = 0;
    std::vector<std::uint32_t> cells;
    std::vector<double> anchor;  ///< normalized mean of the cell centers
    double extent = 0.0;         ///< largest distance from the anchor to a cell center
};

struct ClassEntry {
    std::uint32_t id = 0;
    std::vector<std::uint32_t> members;
    double asymmetry = 0.0;
};

struct IntervalEntry {
    std::uint32_t component = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t min_cycle_length = 0;
    std::size_t max_cycle_length = 0;
    bool theorem2_condition = false;
};

struct SpectrumMatchEntry {
    std::uint32_t class_id = 0;
    double projective_lo = 0.0;
    double projective_hi = 0.0;
    double max_delta = 0.0;
    double tolerance = 0.0;
    bool equal = false;
};

struct TransitivityEntry {
    std::uint32_t component = 0;
    std::size_t cone_size = 0;
    bool chain_transitive = false;
    bool theorem2_condition = false;
    bool refinement_stable = false;
    std::vector<std::size_t> witness_lengths;  ///< edges in each sampled round trip
    bool has_counterexample = false;
    std::uint32_t counterexample_from = 0;
    std::uint32_t counterexample_to = 0;
    bool counterexample_forward = false;
    bool counterexample_backward = false;
};

struct WitnessEntry {
    std::uint32_t component = 0;
    std::string status;  ///< ok | failed | certificates_absent | not_found
    std::string message;
    std::uint32_t base_cell = 0;
    long k = 0;
    long l = 0;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
    std::size_t steps = 0;
    double endpoint_error = 0.0;
    double tolerance = 0.0;
    double max_hemisphere_jump = 0.0;
    bool replayable = false;
    bool contracts = false;
    bool perturbed = false;
    std::string chain_file;
};

struct AuditEntry {
    std::uint32_t component = 0;
    bool witness_found = false;
    bool chain_transitive = false;
    bool consistent = true;
    std::string note;
};

struct LevelEntry {
    int level = 0;
    int n = 0;
    int m = 0;
    double epsilon = 0.0;
    double step_time = 0.0;
    std::size_t sphere_cells = 0;
    std::size_t sphere_edges = 0;
    std::size_t strongly_connected = 0;
    std::size_t hemisphere_cells = 0;
    std::size_t hemisphere_edges = 0;
    bool counts_consistent = false;  ///< 1 <= l1 <= 2l <= 2d
    std::vector<ComponentEntry> components;
    std::vector<ClassEntry> classes;
    std::vector<IntervalEntry> spectra;
    std::vector<SpectrumMatchEntry> spectrum_matches;
    std::vector<TransitivityEntry> transitivity;
    std::vector<WitnessEntry> witnesses;
    std::vector<AuditEntry> audits;
    std::vector<std::string> certificate_files;
};

/// One verdict tracked across refinement levels for a base-level component (or the whole run).
struct StabilityEntry {
    std::string subject;  ///< e.g. "component count", "transitivity of component 2"
    std::vector<std::string> verdicts;
    bool stable = true;
};

struct RunReport {
    int schema_version = kReportSchemaVersion;
    std::string name;
    std::string command;
    std::string config;  ///< the effective configuration in config-file syntax
    std::vector<LevelEntry> levels;
    std::vector<StabilityEntry> stability;
    bool stable = true;
    std::map<std::string, double> timings;  ///< seconds; empty with stable output
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// Pretty-printed JSON with a trailing newline.
std::string serialize(const RunReport& report);
/// Throws ParseError for malformed JSON or a schema mismatch.
RunReport parse_report(const std::string& text);

void write_report(const std::filesystem::path& path, const RunReport& report);

}  // namespace selgrade
