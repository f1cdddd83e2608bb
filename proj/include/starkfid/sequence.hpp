#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace starkfid {

struct Knot {
    double t_s = 0.0;
    double v_volts = 0.0;
};

/// Applied electrode voltage as a continuous piecewise-linear function of
/// time. Knot times are non-decreasing; a commanded step is realized as a
/// linear ramp of duration t_switch. t_switch == 0 is the idealized limit
/// and is represented by two coincident knots (voltage_at evaluates
/// right-continuously there; integrals are unaffected).
class VoltageTimeline {
public:
    VoltageTimeline() = default;
    VoltageTimeline(std::vector<Knot> knots, double t_switch_s);

    double voltage_at(double t_s) const;

    // one-sided limits, used by the step planner in dynamics
    double voltage_after(double t_s) const;
    double voltage_before(double t_s) const;

    /// Exact integral of V(t) over [t1, t2] (sum of trapezoids).
    double integral(double t1_s, double t2_s) const;

    double max_abs_voltage() const;
    bool has_knot_strictly_inside(double t1_s, double t2_s) const;

    const std::vector<Knot>& knots() const { return knots_; }
    double t_switch() const { return t_switch_; }

private:
    std::vector<Knot> knots_;
    double t_switch_ = 10e-9;
};

// Preset builders for the canonical field sequences. Times are on the shared
// clock where t = 0 is the end of the optical excitation pulse.

/// 0 until t_on, ramp to v, constant afterwards.
VoltageTimeline preset_constant(double v, double t_on, double t_switch = 10e-9);

/// +v from t_on, polarity reversal ramp centered at t_on + tau, -v afterwards.
VoltageTimeline preset_invert_at(double v, double t_on, double tau,
                                 double t_switch = 10e-9);

/// Like preset_invert_at, but the field is ramped back to 0 at t_on + 2*tau.
VoltageTimeline preset_invert_then_off(double v, double t_on, double tau,
                                       double t_switch = 10e-9);

/// Polarity flips at t_on + tau, 3*tau, 5*tau, ... (n_flips of them), so the
/// accumulated voltage integral returns to zero at t_on + 2*tau, 4*tau, ...
VoltageTimeline preset_multi_invert(double v, double t_on, double tau,
                                    int n_flips, double t_switch = 10e-9);

/// Hardware range check (±100 V switch). Returns warnings, never clamps.
std::vector<std::string> check_voltage_range(const VoltageTimeline& tl,
                                             double limit_volts = 100.0);

}  // namespace starkfid
