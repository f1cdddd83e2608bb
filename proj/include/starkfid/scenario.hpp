#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "starkfid/analysis.hpp"
#include "starkfid/dynamics.hpp"
#include "starkfid/ensemble.hpp"
#include "starkfid/noise.hpp"
#include "starkfid/scenario_types.hpp"

namespace starkfid {

/// Validation failure with one message per offending field path.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

Scenario load_scenario_json(const std::string& json_text);
Scenario load_scenario_file(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

/// Hex digest of the canonical serialized form (FNV-1a).
std::string scenario_digest(const Scenario& scenario);

/// Realize the timeline specification (preset or explicit knots).
VoltageTimeline build_timeline(const TimelineSpec& spec);

struct BundledScenario {
    std::string name;
    std::string description;
    std::string json;
};

/// The six bundled scenarios, one per reproduced observable.
const std::vector<BundledScenario>& bundled_scenarios();

/// nullopt when the name is not bundled.
std::optional<Scenario> load_bundled(const std::string& name);

struct RunOptions {
    std::optional<std::string> out_dir;  // overrides scenario outputs.dir
    ComputeOptions compute;
    bool quiet = false;
};

struct SweepPointResult {
    double sweep_value = 0.0;
    Trace perturbed;
    Trace reference;
    AnalysisReport report;
};

struct ScenarioResult {
    std::vector<SweepPointResult> points;
    std::optional<LinearFit> revival_fit;  // tau sweeps with >= 3 revivals
    std::vector<std::string> warnings;
};

/// Run one sweep point without touching the filesystem.
SweepPointResult run_single(const Scenario& scenario, double sweep_value,
                            bool has_sweep, const ComputeOptions& compute);

/// Full scenario run: every sweep point, analysis, artifact files.
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options);

}  // namespace starkfid
