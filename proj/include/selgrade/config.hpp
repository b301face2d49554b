#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "selgrade/flow.hpp"
#include "selgrade/sphere_grid.hpp"

namespace selgrade {

enum class Analysis { Components, Spectrum, Poincare };

std::string_view to_string(Analysis a);

struct SystemSpec {
    int dimension = 0;
    /// {A} for autonomous systems, {A0, A1, ..., Am} for bilinear ones.
    std::vector<Eigen::MatrixXd> matrices;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    /// Explicit control samples; empty selects the box vertices plus its center.
    std::vector<Control> samples;

    [[nodiscard]] bool bilinear() const { return matrices.size() > 1; }
};

struct RunConfig {
    std::string name = "custom";
    SystemSpec system;
    int n = 720;  ///< sphere resolution
    int m = 64;   ///< hemisphere radial levels
    double step_time = 1.0;
    double epsilon = 0.02;
    double delta0 = 0.1;
    int refine = 1;  ///< extra levels (n, m, eps) -> (2n, 2m, eps/2)
    int max_dimension = kDefaultMaxDimension;
    std::vector<Analysis> analyses{Analysis::Components, Analysis::Spectrum, Analysis::Poincare};
    double alpha0 = 1.0;  ///< half-line witness scales
    double alpha1 = 3.0;
    std::filesystem::path out_dir;
    bool plot = true;

    [[nodiscard]] bool wants(Analysis a) const;
};

/// Builds the flow system; throws ValidationError through validate() first.
FlowSystem make_system(const RunConfig& config);

/// All violations of a config, empty when it is valid.
std::vector<std::string> violations(const RunConfig& config);
/// Throws ValidationError listing every violation.
void validate(const RunConfig& config);

/// INI-style file: [system] dimension, A0.., lower, upper, samples; [grid] n, m;
/// [params] T, epsilon, delta0, refine, max_dimension; [analysis] run, alpha0, alpha1;
/// [output] dir, plot. Matrices are row-major, comma-separated (';' may separate rows).
/// Throws ParseError for syntax or number errors, ValidationError for invalid content.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

/// Serializes a config in the format accepted by parse_config.
std::string config_text(const RunConfig& config);

std::vector<std::string> demo_names();
/// Throws InvalidArgument for an unknown name.
RunConfig demo_config(const std::string& name);
std::string demo_description(const std::string& name);

}  // namespace selgrade
