#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starkfid/dynamics.hpp"
#include "starkfid/ensemble.hpp"
#include "starkfid/noise.hpp"
#include "starkfid/sequence.hpp"
#include "starkfid/stark.hpp"

namespace starkfid {

inline constexpr const char* kScenarioSchema = "starkfid-scenario-v1";

/// Either a named preset with parameters or an explicit knot list.
struct TimelineSpec {
    std::string preset = "constant";  // constant|invert_at|invert_then_off|
                                      // multi_invert|knots
    double v_volts = 0.0;
    double t_on_s = 0.0;
    double tau_s = 0.0;
    int n_flips = 0;
    double t_switch_s = 10e-9;
    std::vector<Knot> knots;
};

struct SweepSpec {
    std::string parameter;  // e.g. "timeline.v_volts"
    std::vector<double> values;
};

struct OutputSpec {
    std::string dir = "out";
    bool write_traces = true;
    bool write_spectra = true;
    bool write_report = true;
    bool write_counts = false;
};

struct Scenario {
    std::string schema = kScenarioSchema;
    std::string name;
    std::string description;
    EnsembleParams ensemble;
    OpticalPulse pulse;
    StarkGeometry geometry;
    TimelineSpec timeline;
    TimeGrid grid;
    DecoherenceParams decoherence;
    std::optional<DetectionParams> detection;
    std::optional<SweepSpec> sweep;
    OutputSpec outputs;
};

}  // namespace starkfid
