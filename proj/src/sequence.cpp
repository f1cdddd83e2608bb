#include "starkfid/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starkfid {

VoltageTimeline::VoltageTimeline(std::vector<Knot> knots, double t_switch_s)
    : knots_(std::move(knots)), t_switch_(t_switch_s) {
    if (knots_.empty()) throw std::invalid_argument("timeline needs at least one knot");
    if (t_switch_ < 0.0) throw std::invalid_argument("t_switch must be >= 0");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (knots_[i].t_s < knots_[i - 1].t_s)
            throw std::invalid_argument("knot times must be non-decreasing");
        if (knots_[i].t_s == knots_[i - 1].t_s && t_switch_ > 0.0 &&
            knots_[i].v_volts != knots_[i - 1].v_volts)
            throw std::invalid_argument(
                "coincident knots with different voltages require t_switch == 0");
    }
}

double VoltageTimeline::voltage_after(double t) const {
    // anchor on the last knot with time <= t: right-continuous at jumps
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double x, const Knot& k) { return x < k.t_s; });
    if (it == knots_.begin()) return knots_.front().v_volts;
    if (it == knots_.end()) return knots_.back().v_volts;
    const Knot& a = *(it - 1);
    const Knot& b = *it;
    if (b.t_s == a.t_s) return b.v_volts;
    return a.v_volts + (b.v_volts - a.v_volts) * ((t - a.t_s) / (b.t_s - a.t_s));
}

double VoltageTimeline::voltage_before(double t) const {
    // anchor on the first knot with time >= t: left-continuous at jumps
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const Knot& k, double x) { return k.t_s < x; });
    if (it == knots_.end()) return knots_.back().v_volts;
    if (it->t_s == t) return it->v_volts;
    if (it == knots_.begin()) return knots_.front().v_volts;
    const Knot& a = *(it - 1);
    const Knot& b = *it;
    if (b.t_s == a.t_s) return b.v_volts;
    return a.v_volts + (b.v_volts - a.v_volts) * ((t - a.t_s) / (b.t_s - a.t_s));
}

double VoltageTimeline::voltage_at(double t) const { return voltage_after(t); }

double VoltageTimeline::integral(double t1, double t2) const {
    if (t1 > t2) throw std::invalid_argument("voltage integral requires t1 <= t2");
    if (t1 == t2) return 0.0;

    double acc = 0.0;
    const double first_t = knots_.front().t_s;
    const double last_t = knots_.back().t_s;

    // constant extension before the first knot
    if (t1 < first_t) {
        const double hi = std::min(t2, first_t);
        acc += knots_.front().v_volts * (hi - t1);
    }
    // interior segments, trapezoid each (exact for piecewise-linear V)
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double a = knots_[i].t_s;
        const double b = knots_[i + 1].t_s;
        if (b <= a) continue;  // zero-width step, no area
        const double lo = std::max(t1, a);
        const double hi = std::min(t2, b);
        if (hi <= lo) continue;
        const double inv = 1.0 / (b - a);
        const double va = knots_[i].v_volts +
                          (knots_[i + 1].v_volts - knots_[i].v_volts) * ((lo - a) * inv);
        const double vb = knots_[i].v_volts +
                          (knots_[i + 1].v_volts - knots_[i].v_volts) * ((hi - a) * inv);
        acc += (va + vb) * 0.5 * (hi - lo);
    }
    // constant extension after the last knot
    if (t2 > last_t) {
        const double lo = std::max(t1, last_t);
        acc += knots_.back().v_volts * (t2 - lo);
    }
    return acc;
}

double VoltageTimeline::max_abs_voltage() const {
    double m = 0.0;
    for (const Knot& k : knots_) m = std::max(m, std::abs(k.v_volts));
    return m;
}

bool VoltageTimeline::has_knot_strictly_inside(double t1, double t2) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t1,
                               [](double x, const Knot& k) { return x < k.t_s; });
    return it != knots_.end() && it->t_s < t2;
}

VoltageTimeline preset_constant(double v, double t_on, double t_switch) {
    return VoltageTimeline({{t_on, 0.0}, {t_on + t_switch, v}}, t_switch);
}

VoltageTimeline preset_multi_invert(double v, double t_on, double tau, int n_flips,
                                    double t_switch) {
    if (n_flips < 0) throw std::invalid_argument("n_flips must be >= 0");
    if (n_flips > 0 && tau < 1.5 * t_switch)
        throw std::invalid_argument("tau too short for the switching time");
    std::vector<Knot> knots{{t_on, 0.0}, {t_on + t_switch, v}};
    double cur = v;
    for (int k = 1; k <= n_flips; ++k) {
        const double t_flip = t_on + (2 * k - 1) * tau;
        knots.push_back({t_flip - 0.5 * t_switch, cur});
        cur = -cur;
        knots.push_back({t_flip + 0.5 * t_switch, cur});
    }
    return VoltageTimeline(std::move(knots), t_switch);
}

VoltageTimeline preset_invert_at(double v, double t_on, double tau, double t_switch) {
    return preset_multi_invert(v, t_on, tau, 1, t_switch);
}

VoltageTimeline preset_invert_then_off(double v, double t_on, double tau,
                                       double t_switch) {
    VoltageTimeline base = preset_invert_at(v, t_on, tau, t_switch);
    std::vector<Knot> knots = base.knots();
    knots.push_back({t_on + 2.0 * tau, -v});
    knots.push_back({t_on + 2.0 * tau + t_switch, 0.0});
    return VoltageTimeline(std::move(knots), t_switch);
}

std::vector<std::string> check_voltage_range(const VoltageTimeline& tl,
                                             double limit_volts) {
    std::vector<std::string> warnings;
    const double m = tl.max_abs_voltage();
    if (m > limit_volts)
        warnings.push_back("timeline commands " + std::to_string(m) +
                           " V, beyond the +/-" + std::to_string(limit_volts) +
                           " V switch range");
    return warnings;
}

}  // namespace starkfid
