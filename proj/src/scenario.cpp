#include "starkfid/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "starkfid/trace_io.hpp"

namespace starkfid {

using nlohmann::json;

namespace {

std::string join_messages(const std::vector<std::string>& messages) {
    std::string all = "scenario validation failed:";
    for (const auto& m : messages) {
        all += "\n  ";
        all += m;
    }
    return all;
}

// Strict object reader: every field must be consumed, leftovers are errors
// with their full path.
class Fields {
public:
    Fields(const json& j, std::string path, std::vector<std::string>& errors)
        : j_(j), path_(std::move(path)), errors_(errors) {
        if (!j_.is_object()) errors_.push_back(path_ + ": expected an object");
    }

    ~Fields() {
        if (!j_.is_object()) return;
        for (const auto& item : j_.items())
            if (!seen_.count(item.key()))
                errors_.push_back(path_ + "." + item.key() + ": unknown field");
    }

    bool has(const std::string& key) {
        return j_.is_object() && j_.contains(key);
    }

    const json* take(const std::string& key, bool required) {
        seen_.insert(key);
        if (!j_.is_object()) return nullptr;
        auto it = j_.find(key);
        if (it == j_.end()) {
            if (required) errors_.push_back(path_ + "." + key + ": missing");
            return nullptr;
        }
        return &*it;
    }

    template <typename T>
    void number(const std::string& key, T& out, bool required = true) {
        const json* v = take(key, required);
        if (!v) return;
        if (!v->is_number()) {
            errors_.push_back(path_ + "." + key + ": expected a number");
            return;
        }
        out = v->get<T>();
    }

    void integer(const std::string& key, std::int64_t& out, bool required = true) {
        const json* v = take(key, required);
        if (!v) return;
        if (!v->is_number_integer()) {
            errors_.push_back(path_ + "." + key + ": expected an integer");
            return;
        }
        out = v->get<std::int64_t>();
    }

    void unsigned64(const std::string& key, std::uint64_t& out, bool required = true) {
        const json* v = take(key, required);
        if (!v) return;
        if (!v->is_number_integer() && !v->is_number_unsigned()) {
            errors_.push_back(path_ + "." + key + ": expected an integer seed");
            return;
        }
        out = v->get<std::uint64_t>();
    }

    void boolean(const std::string& key, bool& out, bool required = true) {
        const json* v = take(key, required);
        if (!v) return;
        if (!v->is_boolean()) {
            errors_.push_back(path_ + "." + key + ": expected a boolean");
            return;
        }
        out = v->get<bool>();
    }

    void text(const std::string& key, std::string& out, bool required = true) {
        const json* v = take(key, required);
        if (!v) return;
        if (!v->is_string()) {
            errors_.push_back(path_ + "." + key + ": expected a string");
            return;
        }
        out = v->get<std::string>();
    }

    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }
    std::vector<std::string>& errors() { return errors_; }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

LineShape parse_line_shape(const std::string& s, const std::string& path,
                           std::vector<std::string>& errors) {
    if (s == "lorentzian") return LineShape::lorentzian;
    if (s == "gaussian") return LineShape::gaussian;
    if (s == "uniform") return LineShape::uniform;
    errors.push_back(path + ": unknown line shape '" + s + "'");
    return LineShape::lorentzian;
}

std::string line_shape_name(LineShape s) {
    switch (s) {
        case LineShape::lorentzian: return "lorentzian";
        case LineShape::gaussian: return "gaussian";
        case LineShape::uniform: return "uniform";
    }
    return "lorentzian";
}

const std::set<std::string> kSweepable = {
    "timeline.v_volts", "timeline.tau_s", "ensemble.gamma_inh_hz",
    "pulse.rabi_rad_per_s", "decoherence.t2_s"};

void apply_sweep_value(Scenario& s, const std::string& parameter, double value) {
    if (parameter == "timeline.v_volts")
        s.timeline.v_volts = value;
    else if (parameter == "timeline.tau_s")
        s.timeline.tau_s = value;
    else if (parameter == "ensemble.gamma_inh_hz")
        s.ensemble.gamma_inh_hz = value;
    else if (parameter == "pulse.rabi_rad_per_s")
        s.pulse.rabi_rad_per_s = value;
    else if (parameter == "decoherence.t2_s")
        s.decoherence.t2_s = value;
    else
        throw ScenarioError({"sweep.parameter: '" + parameter + "' is not sweepable"});
}

void validate_semantics(const Scenario& s, std::vector<std::string>& errors) {
    if (s.schema != kScenarioSchema)
        errors.push_back("$.schema: expected '" + std::string(kScenarioSchema) + "'");
    if (s.name.empty()) errors.push_back("$.name: must not be empty");

    const auto& e = s.ensemble;
    if (e.n_atoms < 1) errors.push_back("$.ensemble.n_atoms: must be >= 1");
    if (e.class_pairing && e.n_atoms % 2 != 0)
        errors.push_back("$.ensemble.n_atoms: pairing requires even count");
    if (!(e.gamma_inh_hz > 0.0))
        errors.push_back("$.ensemble.gamma_inh_hz: must be > 0");
    if (e.sample_window_hz < e.gamma_inh_hz)
        errors.push_back("$.ensemble.sample_window_hz: must be >= gamma_inh_hz");
    if (!(e.l_crystal_m > 0.0)) errors.push_back("$.ensemble.l_crystal_m: must be > 0");
    if (std::abs(e.l_crystal_m - s.geometry.l_crystal) >
        1e-12 * std::abs(s.geometry.l_crystal))
        errors.push_back("$.ensemble.l_crystal_m: differs from geometry.l_crystal_m");

    if (!(s.pulse.tau_p_s > 0.0)) errors.push_back("$.pulse.tau_p_s: must be > 0");

    if (s.geometry.stark_coeff == 0.0 || !std::isfinite(s.geometry.stark_coeff))
        errors.push_back("$.geometry.stark_coeff_rad_per_s_per_v_per_m: must be finite and nonzero");
    if (!(s.geometry.l_crystal > 0.0))
        errors.push_back("$.geometry.l_crystal_m: must be > 0");

    const auto& tl = s.timeline;
    const bool preset_known = tl.preset == "constant" || tl.preset == "invert_at" ||
                              tl.preset == "invert_then_off" ||
                              tl.preset == "multi_invert" || tl.preset == "knots";
    if (!preset_known)
        errors.push_back("$.timeline.preset: unknown preset '" + tl.preset + "'");
    if (tl.t_switch_s < 0.0) errors.push_back("$.timeline.t_switch_s: must be >= 0");
    if (tl.preset == "knots") {
        if (tl.knots.empty()) errors.push_back("$.timeline.knots: must not be empty");
        for (std::size_t i = 1; i < tl.knots.size(); ++i)
            if (tl.knots[i].t_s < tl.knots[i - 1].t_s) {
                errors.push_back("$.timeline.knots: times must be non-decreasing");
                break;
            }
    } else if (tl.preset != "constant") {
        if (!(tl.tau_s > 0.0)) errors.push_back("$.timeline.tau_s: must be > 0");
        if (tl.tau_s > 0.0 && tl.tau_s < 1.5 * tl.t_switch_s)
            errors.push_back("$.timeline.tau_s: shorter than 1.5 x t_switch_s");
    }
    if (tl.preset == "multi_invert" && tl.n_flips < 0)
        errors.push_back("$.timeline.n_flips: must be >= 0");

    if (s.grid.n_points < 2) errors.push_back("$.grid.n_points: must be >= 2");
    if (!(s.grid.t_end_s > s.grid.t_start_s))
        errors.push_back("$.grid.t_end_s: must be > t_start_s");
    if (s.grid.t_start_s < 0.0)
        errors.push_back("$.grid.t_start_s: must be >= 0 (t=0 is the pulse end)");

    if (!(s.decoherence.t2_s > 0.0)) errors.push_back("$.decoherence.t2_s: must be > 0");
    if (s.decoherence.alpha_l < 0.0)
        errors.push_back("$.decoherence.alpha_l: must be >= 0");

    if (s.detection) {
        if (s.detection->mean_total_photons < 0.0)
            errors.push_back("$.detection.mean_total_photons: must be >= 0");
        if (!(s.detection->bin_width_s > 0.0))
            errors.push_back("$.detection.bin_width_s: must be > 0");
    }

    if (s.sweep) {
        if (s.sweep->values.empty())
            errors.push_back("$.sweep.values: must not be empty");
        if (!kSweepable.count(s.sweep->parameter))
            errors.push_back("$.sweep.parameter: '" + s.sweep->parameter +
                             "' is not sweepable");
    }

    if (s.outputs.dir.empty()) errors.push_back("$.outputs.dir: must not be empty");
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> messages)
    : std::runtime_error(join_messages(messages)), messages_(std::move(messages)) {}

VoltageTimeline build_timeline(const TimelineSpec& t) {
    if (t.preset == "constant")
        return preset_constant(t.v_volts, t.t_on_s, t.t_switch_s);
    if (t.preset == "invert_at")
        return preset_invert_at(t.v_volts, t.t_on_s, t.tau_s, t.t_switch_s);
    if (t.preset == "invert_then_off")
        return preset_invert_then_off(t.v_volts, t.t_on_s, t.tau_s, t.t_switch_s);
    if (t.preset == "multi_invert")
        return preset_multi_invert(t.v_volts, t.t_on_s, t.tau_s, t.n_flips,
                                   t.t_switch_s);
    if (t.preset == "knots") return VoltageTimeline(t.knots, t.t_switch_s);
    throw ScenarioError({"$.timeline.preset: unknown preset '" + t.preset + "'"});
}

Scenario load_scenario_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ScenarioError({std::string("$: not valid JSON: ") + err.what()});
    }

    std::vector<std::string> errors;
    Scenario s;
    {
        Fields root(j, "$", errors);
        root.text("schema", s.schema);
        root.text("name", s.name);
        root.text("description", s.description, false);

        if (const json* je = root.take("ensemble", true)) {
            Fields f(*je, "$.ensemble", errors);
            f.integer("n_atoms", s.ensemble.n_atoms);
            std::string shape = "lorentzian";
            f.text("line_shape", shape);
            s.ensemble.line_shape =
                parse_line_shape(shape, "$.ensemble.line_shape", errors);
            f.number("gamma_inh_hz", s.ensemble.gamma_inh_hz);
            if (f.has("sample_window_hz")) {
                f.number("sample_window_hz", s.ensemble.sample_window_hz);
            } else {
                f.take("sample_window_hz", false);
                s.ensemble.sample_window_hz = -1.0;  // resolved after the pulse loads
            }
            f.number("l_crystal_m", s.ensemble.l_crystal_m, false);
            f.boolean("class_pairing", s.ensemble.class_pairing, false);
            f.unsigned64("rng_seed", s.ensemble.rng_seed);
        }
        if (const json* jp = root.take("pulse", true)) {
            Fields f(*jp, "$.pulse", errors);
            f.number("t0_s", s.pulse.t0_s, false);
            f.number("tau_p_s", s.pulse.tau_p_s);
            f.number("rabi_rad_per_s", s.pulse.rabi_rad_per_s);
            f.number("carrier_detuning_rad_per_s", s.pulse.carrier_detuning_rad_per_s,
                     false);
        }
        if (const json* jg = root.take("geometry", true)) {
            Fields f(*jg, "$.geometry", errors);
            f.number("stark_coeff_rad_per_s_per_v_per_m", s.geometry.stark_coeff);
            f.number("lorentz_eps", s.geometry.lorentz_eps, false);
            f.number("gradient_norm_per_m2", s.geometry.gradient_norm);
            f.number("l_crystal_m", s.geometry.l_crystal, false);
        }
        if (const json* jt = root.take("timeline", true)) {
            Fields f(*jt, "$.timeline", errors);
            f.text("preset", s.timeline.preset);
            f.number("v_volts", s.timeline.v_volts, false);
            f.number("t_on_s", s.timeline.t_on_s, false);
            f.number("tau_s", s.timeline.tau_s, false);
            std::int64_t flips = 0;
            if (f.has("n_flips")) {
                f.integer("n_flips", flips, false);
                s.timeline.n_flips = static_cast<int>(flips);
            } else {
                f.take("n_flips", false);
            }
            f.number("t_switch_s", s.timeline.t_switch_s, false);
            if (const json* jk = f.take("knots", false)) {
                if (!jk->is_array()) {
                    errors.push_back("$.timeline.knots: expected an array");
                } else {
                    for (const auto& item : *jk) {
                        if (!item.is_array() || item.size() != 2 ||
                            !item[0].is_number() || !item[1].is_number()) {
                            errors.push_back(
                                "$.timeline.knots: entries must be [t_s, v_volts]");
                            break;
                        }
                        s.timeline.knots.push_back(
                            {item[0].get<double>(), item[1].get<double>()});
                    }
                }
                if (s.timeline.preset != "knots")
                    errors.push_back(
                        "$.timeline.knots: only allowed with preset 'knots'");
            }
        }
        if (const json* jg = root.take("grid", true)) {
            Fields f(*jg, "$.grid", errors);
            f.number("t_start_s", s.grid.t_start_s);
            f.number("t_end_s", s.grid.t_end_s);
            std::int64_t n = 0;
            f.integer("n_points", n);
            s.grid.n_points = static_cast<int>(n);
        }
        if (const json* jd = root.take("decoherence", false)) {
            Fields f(*jd, "$.decoherence", errors);
            if (const json* jt2 = f.take("t2_s", false)) {
                if (jt2->is_null())
                    s.decoherence.t2_s = std::numeric_limits<double>::infinity();
                else if (jt2->is_number())
                    s.decoherence.t2_s = jt2->get<double>();
                else
                    errors.push_back("$.decoherence.t2_s: expected a number or null");
            }
            f.boolean("beer_lambert", s.decoherence.beer_lambert, false);
            f.number("alpha_l", s.decoherence.alpha_l, false);
        }
        if (const json* jn = root.take("detection", false)) {
            DetectionParams det;
            Fields f(*jn, "$.detection", errors);
            f.number("mean_total_photons", det.mean_total_photons);
            f.number("bin_width_s", det.bin_width_s);
            f.unsigned64("rng_seed", det.rng_seed);
            s.detection = det;
        }
        if (const json* js = root.take("sweep", false)) {
            SweepSpec sweep;
            Fields f(*js, "$.sweep", errors);
            f.text("parameter", sweep.parameter);
            if (const json* jv = f.take("values", true)) {
                if (!jv->is_array())
                    errors.push_back("$.sweep.values: expected an array");
                else
                    for (const auto& item : *jv) {
                        if (!item.is_number()) {
                            errors.push_back("$.sweep.values: entries must be numbers");
                            break;
                        }
                        sweep.values.push_back(item.get<double>());
                    }
            }
            s.sweep = sweep;
        }
        if (const json* jo = root.take("outputs", false)) {
            Fields f(*jo, "$.outputs", errors);
            f.text("dir", s.outputs.dir, false);
            f.boolean("write_traces", s.outputs.write_traces, false);
            f.boolean("write_spectra", s.outputs.write_spectra, false);
            f.boolean("write_report", s.outputs.write_report, false);
            f.boolean("write_counts", s.outputs.write_counts, false);
        }
    }

    // default truncation window: 10x the excitation pulse bandwidth
    if (s.ensemble.sample_window_hz < 0.0 && s.pulse.tau_p_s > 0.0)
        s.ensemble.sample_window_hz =
            std::max(10.0 / s.pulse.tau_p_s, s.ensemble.gamma_inh_hz);

    validate_semantics(s, errors);
    if (!errors.empty()) throw ScenarioError(std::move(errors));
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError({"$: cannot open file '" + path.string() + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario_json(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["schema"] = s.schema;
    j["name"] = s.name;
    if (!s.description.empty()) j["description"] = s.description;
    j["ensemble"] = {{"n_atoms", s.ensemble.n_atoms},
                     {"line_shape", line_shape_name(s.ensemble.line_shape)},
                     {"gamma_inh_hz", s.ensemble.gamma_inh_hz},
                     {"sample_window_hz", s.ensemble.sample_window_hz},
                     {"l_crystal_m", s.ensemble.l_crystal_m},
                     {"class_pairing", s.ensemble.class_pairing},
                     {"rng_seed", s.ensemble.rng_seed}};
    j["pulse"] = {{"t0_s", s.pulse.t0_s},
                  {"tau_p_s", s.pulse.tau_p_s},
                  {"rabi_rad_per_s", s.pulse.rabi_rad_per_s},
                  {"carrier_detuning_rad_per_s", s.pulse.carrier_detuning_rad_per_s}};
    j["geometry"] = {{"stark_coeff_rad_per_s_per_v_per_m", s.geometry.stark_coeff},
                     {"lorentz_eps", s.geometry.lorentz_eps},
                     {"gradient_norm_per_m2", s.geometry.gradient_norm},
                     {"l_crystal_m", s.geometry.l_crystal}};
    json jt = {{"preset", s.timeline.preset}, {"t_switch_s", s.timeline.t_switch_s}};
    if (s.timeline.preset == "knots") {
        json arr = json::array();
        for (const Knot& k : s.timeline.knots) arr.push_back({k.t_s, k.v_volts});
        jt["knots"] = arr;
    } else {
        jt["v_volts"] = s.timeline.v_volts;
        jt["t_on_s"] = s.timeline.t_on_s;
        if (s.timeline.preset != "constant") jt["tau_s"] = s.timeline.tau_s;
        if (s.timeline.preset == "multi_invert") jt["n_flips"] = s.timeline.n_flips;
    }
    j["timeline"] = jt;
    j["grid"] = {{"t_start_s", s.grid.t_start_s},
                 {"t_end_s", s.grid.t_end_s},
                 {"n_points", s.grid.n_points}};
    j["decoherence"] = {
        {"t2_s", std::isfinite(s.decoherence.t2_s) ? json(s.decoherence.t2_s)
                                                   : json(nullptr)},
        {"beer_lambert", s.decoherence.beer_lambert},
        {"alpha_l", s.decoherence.alpha_l}};
    if (s.detection)
        j["detection"] = {{"mean_total_photons", s.detection->mean_total_photons},
                          {"bin_width_s", s.detection->bin_width_s},
                          {"rng_seed", s.detection->rng_seed}};
    if (s.sweep)
        j["sweep"] = {{"parameter", s.sweep->parameter}, {"values", s.sweep->values}};
    j["outputs"] = {{"dir", s.outputs.dir},
                    {"write_traces", s.outputs.write_traces},
                    {"write_spectra", s.outputs.write_spectra},
                    {"write_report", s.outputs.write_report},
                    {"write_counts", s.outputs.write_counts}};
    return j.dump(2);
}

std::string scenario_digest(const Scenario& s) {
    const std::string text = scenario_to_json(s);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepPointResult run_single(const Scenario& base, double sweep_value, bool has_sweep,
                            const ComputeOptions& compute) {
    Scenario s = base;
    if (has_sweep) apply_sweep_value(s, s.sweep->parameter, sweep_value);

    std::vector<Atom> atoms = sample_ensemble(s.ensemble);
    excite(atoms, s.pulse);
    const VoltageTimeline timeline = build_timeline(s.timeline);

    SweepPointResult result;
    result.sweep_value = sweep_value;
    TracePair pair = run_with_reference(atoms, s.geometry, timeline, s.grid,
                                        s.decoherence, compute);
    result.perturbed = std::move(pair.perturbed);
    result.reference = std::move(pair.reference);

    const std::string digest = scenario_digest(s);
    for (Trace* t : {&result.perturbed, &result.reference}) {
        t->metadata.scenario = s.name;
        t->metadata.seed = s.ensemble.rng_seed;
        t->metadata.params_digest = digest;
    }

    AnalysisReport report;
    const Spectrum spec = spectrum_of_decay(result.perturbed, SpectrumMode::field);
    report.spectrum_short_trace = spec.short_trace;
    try {
        const FwhmResult fw = fwhm(spec);
        report.fwhm_hz = fw.fwhm_hz;
        report.spectrum_multimodal = fw.multimodal;
    } catch (const std::exception&) {
        // leave NaN when the spectrum has no usable peak
    }

    report.revival_times_s = detect_revivals(result.perturbed, result.reference);

    const bool has_tau = s.timeline.preset == "invert_at" ||
                         s.timeline.preset == "invert_then_off" ||
                         (s.timeline.preset == "multi_invert" && s.timeline.n_flips > 0);
    if (has_tau) {
        TimeWindow window{s.timeline.t_on_s + 1.5 * s.timeline.tau_s,
                          s.timeline.t_on_s + 2.5 * s.timeline.tau_s};
        window.lo_s = std::max(window.lo_s, s.grid.t_start_s);
        window.hi_s = std::min(window.hi_s, s.grid.t_end_s);
        if (window.hi_s > window.lo_s) {
            try {
                report.visibility =
                    visibility(result.perturbed, result.reference, window);
            } catch (const std::exception&) {
            }
        }
    }
    result.report = report;
    return result;
}

namespace {

std::string csv_cell(double v) { return std::isnan(v) ? "" : format_full(v); }

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options) {
    namespace fs = std::filesystem;
    ScenarioResult result;

    const bool has_sweep = scenario.sweep.has_value();
    const std::vector<double> values =
        has_sweep ? scenario.sweep->values : std::vector<double>{0.0};
    const std::string sweep_name = has_sweep ? scenario.sweep->parameter : "";

    const fs::path out_dir =
        options.out_dir ? fs::path(*options.out_dir) / scenario.name
                        : fs::path(scenario.outputs.dir);
    const bool writes = scenario.outputs.write_traces ||
                        scenario.outputs.write_spectra ||
                        scenario.outputs.write_report ||
                        (scenario.outputs.write_counts && scenario.detection);
    if (writes) fs::create_directories(out_dir);

    std::string summary = "sweep_parameter, sweep_value, fwhm_hz, visibility, "
                          "n_revivals, t_revival_1_s, t_revival_2_s\n";

    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepPointResult point =
            run_single(scenario, values[i], has_sweep, options.compute);
        for (const std::string& w : point.perturbed.warnings)
            result.warnings.push_back(w);

        char tag[32];
        std::snprintf(tag, sizeof(tag), "sweep_%03zu", i);
        const fs::path point_dir = has_sweep ? out_dir / tag : out_dir;
        if (scenario.outputs.write_traces) {
            write_trace_csv(point.perturbed, point_dir / "trace_perturbed.csv");
            write_trace_csv(point.reference, point_dir / "trace_reference.csv");
        }
        if (scenario.outputs.write_spectra) {
            const Spectrum spec = spectrum_of_decay(point.perturbed);
            write_spectrum_csv(spec, point_dir / "spectrum.csv");
        }
        if (scenario.outputs.write_counts && scenario.detection) {
            const CountsTrace counts =
                add_shot_noise(point.perturbed, *scenario.detection);
            write_counts_csv(counts, point_dir / "counts.csv");
        }

        const auto& rts = point.report.revival_times_s;
        summary += sweep_name + ", " + format_full(point.sweep_value) + ", " +
                   csv_cell(point.report.fwhm_hz) + ", " +
                   csv_cell(point.report.visibility) + ", " +
                   std::to_string(rts.size()) + ", " +
                   (rts.size() > 0 ? format_full(rts[0]) : "") + ", " +
                   (rts.size() > 1 ? format_full(rts[1]) : "") + "\n";
        result.points.push_back(std::move(point));
    }

    // revival-time regression for delay sweeps
    if (has_sweep && sweep_name == "timeline.tau_s") {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& p : result.points)
            if (!p.report.revival_times_s.empty())
                pairs.emplace_back(p.sweep_value, p.report.revival_times_s.front());
        if (pairs.size() >= 3) result.revival_fit = fit_revival_slope(pairs);
    }

    if (writes) write_file_atomic(out_dir / "summary.csv", summary);

    if (scenario.outputs.write_report) {
        std::ostringstream rep;
        rep << "scenario: " << scenario.name << "\n";
        if (!scenario.description.empty())
            rep << "description: " << scenario.description << "\n";
        rep << "digest: " << scenario_digest(scenario) << "\n";
        rep << "seed: " << scenario.ensemble.rng_seed << "\n\n";
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            const auto& p = result.points[i];
            rep << "point " << i;
            if (has_sweep)
                rep << " (" << sweep_name << " = " << format_full(p.sweep_value) << ")";
            rep << ":\n";
            if (!std::isnan(p.report.fwhm_hz))
                rep << "  fwhm_hz: " << format_full(p.report.fwhm_hz)
                    << (p.report.spectrum_multimodal ? "  [multimodal]" : "") << "\n";
            if (p.report.spectrum_short_trace)
                rep << "  warning: trace does not decay below 1% of I(0)\n";
            if (!std::isnan(p.report.visibility))
                rep << "  visibility: " << format_full(p.report.visibility) << "\n";
            if (!p.report.revival_times_s.empty()) {
                rep << "  revivals_s:";
                for (double t : p.report.revival_times_s)
                    rep << " " << format_full(t);
                rep << "\n";
            }
        }
        if (result.revival_fit) {
            rep << "\nrevival time vs tau: slope = "
                << format_full(result.revival_fit->slope)
                << " +/- " << format_full(result.revival_fit->slope_err)
                << ", r2 = " << format_full(result.revival_fit->r2) << "\n";
        }
        if (!result.warnings.empty()) {
            rep << "\nwarnings:\n";
            for (const auto& w : result.warnings) rep << "  " << w << "\n";
        }
        write_file_atomic(out_dir / "report.txt", rep.str());
    }
    return result;
}

}  // namespace starkfid
