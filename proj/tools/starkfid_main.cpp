#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "starkfid/scenario.hpp"

namespace {

starkfid::Scenario resolve_scenario(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return starkfid::load_scenario_file(arg);
    if (auto bundled = starkfid::load_bundled(arg)) return *bundled;
    throw starkfid::ScenarioError(
        {"$: '" + arg + "' is neither a file nor a bundled scenario name"});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator of Stark-controlled optical free induction decay"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string out_dir;
    int threads = 0;
    bool relaxed = false;
    bool deterministic = false;

    CLI::App* run = app.add_subcommand(
        "run", "Run a scenario file (or a bundled scenario by name)");
    run->add_option("scenario", scenario_arg, "scenario file or bundled name")
        ->required();
    run->add_option("--out", out_dir, "output directory (overrides the scenario)");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");
    run->add_flag("--deterministic", deterministic,
                  "bit-reproducible reduction (default)");
    run->add_flag("--relaxed", relaxed, "faster reduction, not bit-reproducible");

    CLI::App* list = app.add_subcommand("list", "List the bundled scenarios");

    std::string validate_arg;
    CLI::App* validate = app.add_subcommand("validate", "Validate a scenario file");
    validate->add_option("scenario", validate_arg, "scenario file or bundled name")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& b : starkfid::bundled_scenarios())
                std::cout << b.name << "\n    " << b.description << "\n";
            return 0;
        }
        if (validate->parsed()) {
            starkfid::Scenario s = resolve_scenario(validate_arg);
            std::cout << "ok: " << s.name << " (digest " << scenario_digest(s)
                      << ")\n";
            return 0;
        }
        if (run->parsed()) {
            if (relaxed && deterministic) {
                std::cerr << "error: --deterministic and --relaxed are exclusive\n";
                return 1;
            }
            starkfid::Scenario s = resolve_scenario(scenario_arg);
            starkfid::RunOptions options;
            if (!out_dir.empty()) options.out_dir = out_dir;
            options.compute.mode = relaxed ? starkfid::ReductionMode::relaxed
                                           : starkfid::ReductionMode::deterministic;
            options.compute.n_threads = threads;

            starkfid::ScenarioResult result = starkfid::run_scenario(s, options);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            for (std::size_t i = 0; i < result.points.size(); ++i) {
                const auto& p = result.points[i];
                std::cout << "point " << i << ": ";
                if (s.sweep)
                    std::cout << s.sweep->parameter << " = " << p.sweep_value << ", ";
                if (!std::isnan(p.report.fwhm_hz))
                    std::cout << "fwhm = " << p.report.fwhm_hz << " Hz, ";
                if (!std::isnan(p.report.visibility))
                    std::cout << "visibility = " << p.report.visibility << ", ";
                std::cout << p.report.revival_times_s.size() << " revival(s)\n";
            }
            if (result.revival_fit)
                std::cout << "revival slope: " << result.revival_fit->slope << " +/- "
                          << result.revival_fit->slope_err
                          << " (r2 = " << result.revival_fit->r2 << ")\n";
            return 0;
        }
    } catch (const starkfid::ScenarioError& err) {
        for (const auto& m : err.messages()) std::cerr << "error: " << m << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
