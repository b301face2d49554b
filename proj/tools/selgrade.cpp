#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "selgrade/chain_io.hpp"
#include "selgrade/pipeline.hpp"
#include "selgrade/plot.hpp"

namespace {

struct Source {
    std::string config;
    std::string demo;
};

selgrade::RunConfig load(const Source& src) {
    if (!src.config.empty() && !src.demo.empty()) {
        throw selgrade::Error(selgrade::ErrorKind::InvalidArgument, "give either --config or --demo, not both");
    }
    if (!src.config.empty()) {
        return selgrade::parse_config(src.config);
    }
    if (!src.demo.empty()) {
        return selgrade::demo_config(src.demo);
    }
    throw selgrade::Error(selgrade::ErrorKind::InvalidArgument, "one of --config or --demo is required");
}

void add_source(CLI::App* cmd, Source& src) {
    cmd->add_option("--config", src.config, "INI configuration file");
    cmd->add_option("--demo", src.demo, "built-in system (see demo-list)");
}

int analyze(const std::string& command, const Source& src, const std::string& out, int refine, bool stable) {
    using selgrade::Analysis;
    auto config = load(src);
    if (command == "components") {
        config.analyses = {Analysis::Components};
    } else if (command == "spectrum") {
        config.analyses = {Analysis::Components, Analysis::Spectrum};
    } else {
        config.analyses = {Analysis::Components, Analysis::Spectrum, Analysis::Poincare};
    }
    if (refine >= 0) {
        config.refine = refine;
    }
    if (!out.empty()) {
        config.out_dir = out;
    }
    selgrade::validate(config);

    selgrade::RunOptions options;
    options.command = command;
    options.stable_output = stable;
    const auto result = selgrade::run(config, options);
    if (config.out_dir.empty()) {
        std::cout << selgrade::serialize(result.report);
    } else {
        selgrade::write_report(config.out_dir / "report.json", result.report);
        if (config.plot && config.wants(Analysis::Poincare) && config.system.dimension == 2) {
            selgrade::write_poincare_svg(config.out_dir / "plot.svg", result.levels.front());
        }
        std::cerr << "wrote " << (config.out_dir / "report.json").string() << '\n';
    }
    if (!result.report.stable) {
        std::cerr << "verdicts changed under refinement\n";
    }
    return selgrade::exit_code(result.report);
}

int verify(const Source& src, const std::string& chain_path) {
    const auto config = load(src);
    const auto system = selgrade::make_system(config);
    const auto chain = selgrade::read_chain(std::filesystem::path(chain_path));
    const auto v = selgrade::verify_chain(system, chain);
    nlohmann::json j{{"steps", v.steps},
                     {"total_time", v.total_time},
                     {"exponent", v.exponent},
                     {"max_jump", v.max_jump},
                     {"periodic", v.periodic},
                     {"lemma1_norm_deviation", v.lemma1_norm_deviation},
                     {"lemma1_image_deviation", v.lemma1_image_deviation},
                     {"hemisphere_contracts", v.hemisphere_contracts}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"selgrade: Selgrade decompositions, Morse spectra and Poincare sphere chains of linear flows"};
    app.require_subcommand(1);

    Source src;
    std::string out;
    std::string chain_path;
    int refine = -1;
    bool stable = false;

    for (const char* name : {"components", "spectrum", "poincare"}) {
        auto* cmd = app.add_subcommand(name, std::string("run the ") + name + " analysis");
        add_source(cmd, src);
        cmd->add_option("--out", out, "directory for report.json, plot.svg and chain files");
        cmd->add_option("--refine", refine, "number of refinement levels")->check(CLI::Range(0, 4));
        cmd->add_flag("--stable-output", stable, "omit timings from the report");
    }
    auto* verify_cmd = app.add_subcommand("verify-chain", "replay a chain file against a system");
    add_source(verify_cmd, src);
    verify_cmd->add_option("--chain", chain_path, "chain file")->required();
    app.add_subcommand("demo-list", "list the built-in systems");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto* cmd = app.get_subcommands().front();
        const std::string name = cmd->get_name();
        if (name == "demo-list") {
            for (const auto& demo : selgrade::demo_names()) {
                std::cout << demo << "  " << selgrade::demo_description(demo) << '\n';
            }
            return 0;
        }
        if (name == "verify-chain") {
            return verify(src, chain_path);
        }
        return analyze(name, src, out, refine, stable);
    } catch (const std::exception& e) {
        std::cerr << "selgrade: " << e.what() << '\n';
        return 1;
    }
}
