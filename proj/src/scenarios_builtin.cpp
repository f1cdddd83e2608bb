#include "starkfid/scenario.hpp"

namespace starkfid {

// The six bundled configurations, one per reproduced observable. Stark
// coefficients and gradients are illustrative (chosen so 95 V broadens the
// line by 1-3 MHz); they are not calibrated to a real crystal.

namespace {

const char* kFig2Decay = R"json({
  "schema": "starkfid-scenario-v1",
  "name": "fig2_decay",
  "description": "Constant-field decay sweep (fig. 2 sequence): FID decays faster as the voltage grows; summary holds FWHM vs voltage.",
  "ensemble": {
    "n_atoms": 100000,
    "line_shape": "lorentzian",
    "gamma_inh_hz": 1.3e5,
    "sample_window_hz": 3.3e6,
    "l_crystal_m": 6e-3,
    "class_pairing": true,
    "rng_seed": 20260801
  },
  "pulse": {"t0_s": -3e-6, "tau_p_s": 3e-6, "rabi_rad_per_s": 1e5},
  "geometry": {
    "stark_coeff_rad_per_s_per_v_per_m": 50.0,
    "lorentz_eps": 10.0,
    "gradient_norm_per_m2": 4.4e5,
    "l_crystal_m": 6e-3
  },
  "timeline": {"preset": "constant", "v_volts": 95.0, "t_on_s": 0.0, "t_switch_s": 1e-8},
  "grid": {"t_start_s": 0.0, "t_end_s": 1e-5, "n_points": 8192},
  "decoherence": {"t2_s": null},
  "sweep": {"parameter": "timeline.v_volts", "values": [0.0, 15.0, 25.0, 40.0, 55.0, 75.0, 95.0]},
  "outputs": {"dir": "out/fig2_decay"}
})json";

const char* kFig2Sidelobe = R"json({
  "schema": "starkfid-scenario-v1",
  "name": "fig2_sidelobe",
  "description": "Large constant field on a uniform line (fig. 2a, highest trace): the excited distribution approaches a square, so the decay shows a sinc sidelobe.",
  "ensemble": {
    "n_atoms": 100000,
    "line_shape": "uniform",
    "gamma_inh_hz": 1e5,
    "sample_window_hz": 3.3e6,
    "l_crystal_m": 6e-3,
    "class_pairing": true,
    "rng_seed": 20260802
  },
  "pulse": {"t0_s": -3e-6, "tau_p_s": 3e-6, "rabi_rad_per_s": 1e5},
  "geometry": {
    "stark_coeff_rad_per_s_per_v_per_m": 50.0,
    "lorentz_eps": 10.0,
    "gradient_norm_per_m2": 2.2e5,
    "l_crystal_m": 6e-3
  },
  "timeline": {"preset": "constant", "v_volts": 95.0, "t_on_s": 0.0, "t_switch_s": 1e-8},
  "grid": {"t_start_s": 0.0, "t_end_s": 3e-6, "n_points": 2048},
  "decoherence": {"t2_s": null},
  "outputs": {"dir": "out/fig2_sidelobe"}
})json";

const char* kFig3aInvert = R"json({
  "schema": "starkfid-scenario-v1",
  "name": "fig3a_invert",
  "description": "Polarity reversal at tau with the field kept on (fig. 3a): collapse, temporary revival at 2*tau, renewed collapse.",
  "ensemble": {
    "n_atoms": 100000,
    "line_shape": "lorentzian",
    "gamma_inh_hz": 1.5e5,
    "sample_window_hz": 3.3e6,
    "l_crystal_m": 6e-3,
    "class_pairing": true,
    "rng_seed": 20260803
  },
  "pulse": {"t0_s": -3e-6, "tau_p_s": 3e-6, "rabi_rad_per_s": 1e5},
  "geometry": {
    "stark_coeff_rad_per_s_per_v_per_m": 50.0,
    "lorentz_eps": 10.0,
    "gradient_norm_per_m2": 6.6e5,
    "l_crystal_m": 6e-3
  },
  "timeline": {"preset": "invert_at", "v_volts": 95.0, "t_on_s": 0.0, "tau_s": 1e-6, "t_switch_s": 1e-8},
  "grid": {"t_start_s": 0.0, "t_end_s": 5e-6, "n_points": 4096},
  "decoherence": {"t2_s": null},
  "detection": {"mean_total_photons": 50.0, "bin_width_s": 5e-8, "rng_seed": 7},
  "outputs": {"dir": "out/fig3a_invert", "write_counts": true}
})json";

const char* kFig3bFreeze = R"json({
  "schema": "starkfid-scenario-v1",
  "name": "fig3b_freeze",
  "description": "Polarity reversal at tau, field off at 2*tau (fig. 3b): after the revival the signal follows the unperturbed FID.",
  "ensemble": {
    "n_atoms": 100000,
    "line_shape": "lorentzian",
    "gamma_inh_hz": 3e5,
    "sample_window_hz": 3.3e6,
    "l_crystal_m": 6e-3,
    "class_pairing": true,
    "rng_seed": 20260804
  },
  "pulse": {"t0_s": -3e-6, "tau_p_s": 3e-6, "rabi_rad_per_s": 1e5},
  "geometry": {
    "stark_coeff_rad_per_s_per_v_per_m": 50.0,
    "lorentz_eps": 10.0,
    "gradient_norm_per_m2": 6.6e5,
    "l_crystal_m": 6e-3
  },
  "timeline": {"preset": "invert_then_off", "v_volts": 95.0, "t_on_s": 0.0, "tau_s": 8e-7, "t_switch_s": 1e-8},
  "grid": {"t_start_s": 0.0, "t_end_s": 2.8e-6, "n_points": 2048},
  "decoherence": {"t2_s": null},
  "outputs": {"dir": "out/fig3b_freeze"}
})json";

const char* kFig4Multi = R"json({
  "schema": "starkfid-scenario-v1",
  "name": "fig4_multi",
  "description": "Repeated polarity reversals (fig. 4): revivals at 2*tau and 4*tau.",
  "ensemble": {
    "n_atoms": 100000,
    "line_shape": "lorentzian",
    "gamma_inh_hz": 1.5e5,
    "sample_window_hz": 2.5e6,
    "l_crystal_m": 6e-3,
    "class_pairing": true,
    "rng_seed": 20260805
  },
  "pulse": {"t0_s": -3e-6, "tau_p_s": 3e-6, "rabi_rad_per_s": 1e5},
  "geometry": {
    "stark_coeff_rad_per_s_per_v_per_m": 50.0,
    "lorentz_eps": 10.0,
    "gradient_norm_per_m2": 6.6e5,
    "l_crystal_m": 6e-3
  },
  "timeline": {"preset": "multi_invert", "v_volts": 95.0, "t_on_s": 0.0, "tau_s": 1e-6, "n_flips": 3, "t_switch_s": 1e-8},
  "grid": {"t_start_s": 0.0, "t_end_s": 5.5e-6, "n_points": 512},
  "decoherence": {"t2_s": null},
  "outputs": {"dir": "out/fig4_multi"}
})json";

const char* kFig5Visibility = R"json({
  "schema": "starkfid-scenario-v1",
  "name": "fig5_visibility",
  "description": "Reversal-delay sweep (fig. 5): revival time vs tau (slope 2) and revival visibility against the unperturbed reference.",
  "ensemble": {
    "n_atoms": 100000,
    "line_shape": "lorentzian",
    "gamma_inh_hz": 1.5e5,
    "sample_window_hz": 3.3e6,
    "l_crystal_m": 6e-3,
    "class_pairing": true,
    "rng_seed": 20260806
  },
  "pulse": {"t0_s": -3e-6, "tau_p_s": 3e-6, "rabi_rad_per_s": 1e5},
  "geometry": {
    "stark_coeff_rad_per_s_per_v_per_m": 50.0,
    "lorentz_eps": 10.0,
    "gradient_norm_per_m2": 6.6e5,
    "l_crystal_m": 6e-3
  },
  "timeline": {"preset": "invert_at", "v_volts": 95.0, "t_on_s": 0.0, "tau_s": 1e-6, "t_switch_s": 1e-8},
  "grid": {"t_start_s": 0.0, "t_end_s": 7e-6, "n_points": 4096},
  "decoherence": {"t2_s": null},
  "sweep": {"parameter": "timeline.tau_s", "values": [5e-7, 1e-6, 1.5e-6, 2e-6, 2.5e-6, 3e-6]},
  "outputs": {"dir": "out/fig5_visibility"}
})json";

std::vector<BundledScenario> make_bundled() {
    std::vector<BundledScenario> list;
    for (const char* text : {kFig2Decay, kFig2Sidelobe, kFig3aInvert, kFig3bFreeze,
                             kFig4Multi, kFig5Visibility}) {
        Scenario s = load_scenario_json(text);
        list.push_back({s.name, s.description, text});
    }
    return list;
}

}  // namespace

const std::vector<BundledScenario>& bundled_scenarios() {
    static const std::vector<BundledScenario> list = make_bundled();
    return list;
}

std::optional<Scenario> load_bundled(const std::string& name) {
    for (const BundledScenario& b : bundled_scenarios())
        if (b.name == name) return load_scenario_json(b.json);
    return std::nullopt;
}

}  // namespace starkfid
