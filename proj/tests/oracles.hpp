#pragma once

// Independent numerical oracles used by the test suites. These deliberately
// avoid the library's analytic paths: the excitation weight is checked
// against a fixed-step integration of the two-level Schroedinger equation,
// Stark phases against pointwise quadrature of the voltage waveform, and
// sampled line shapes against quadrature of their truncated densities.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "starkfid/sequence.hpp"

namespace oracles {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// State (a_e, c_g) in the drive rotating frame: i a_e' = delta*a_e + (W/2) c_g,
// i c_g' = (W/2) a_e. Returns rho_eg = a_e * conj(c_g) after a rectangular
// pulse, integrated with classic RK4 at fixed step.
inline std::complex<double> bloch_ode_weight(double delta, double rabi, double tau_p,
                                             double step = 1e-9) {
    using cd = std::complex<double>;
    const cd I(0.0, 1.0);
    std::array<cd, 2> y{cd(0.0), cd(1.0)};

    auto deriv = [&](const std::array<cd, 2>& s) {
        return std::array<cd, 2>{-I * (delta * s[0] + 0.5 * rabi * s[1]),
                                 -I * (0.5 * rabi * s[0])};
    };

    const long n_steps = std::max<long>(1, std::lround(std::ceil(tau_p / step)));
    const double h = tau_p / static_cast<double>(n_steps);
    for (long i = 0; i < n_steps; ++i) {
        const auto k1 = deriv(y);
        const auto k2 = deriv({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        const auto k3 = deriv({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        const auto k4 = deriv({y[0] + h * k3[0], y[1] + h * k3[1]});
        y[0] += (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
    return y[0] * std::conj(y[1]);
}

// Trapezoid quadrature of V(t) via pointwise evaluation only, with steps
// aligned to the knots so the rule is exact on each linear piece.
inline double quadrature_voltage_integral(const starkfid::VoltageTimeline& tl,
                                          double t1, double t2, double max_step) {
    std::vector<double> cuts{t1, t2};
    for (const auto& k : tl.knots())
        if (k.t_s > t1 && k.t_s < t2) cuts.push_back(k.t_s);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (b <= a) continue;
        const long n = std::max<long>(1, std::lround(std::ceil((b - a) / max_step)));
        const double h = (b - a) / static_cast<double>(n);
        double acc = 0.5 * (tl.voltage_at(a) + tl.voltage_before(b));
        for (long k = 1; k < n; ++k) acc += tl.voltage_at(a + k * h);
        total += acc * h;
    }
    return total;
}

// Adaptive Simpson on a callable, for the timeline-vs-quadrature property.
template <typename F>
double adaptive_simpson(F f, double a, double b, double tol, int depth = 24) {
    auto simpson = [&](double x0, double x2) {
        const double x1 = 0.5 * (x0 + x2);
        return (x2 - x0) / 6.0 * (f(x0) + 4.0 * f(x1) + f(x2));
    };
    struct Rec {
        double a, b, whole;
        int depth;
    };
    const double whole = simpson(a, b);
    std::vector<Rec> stack{{a, b, whole, depth}};
    double total = 0.0;
    while (!stack.empty()) {
        const Rec r = stack.back();
        stack.pop_back();
        const double m = 0.5 * (r.a + r.b);
        const double left = simpson(r.a, m);
        const double right = simpson(m, r.b);
        if (r.depth <= 0 || std::abs(left + right - r.whole) < 15.0 * tol) {
            total += left + right + (left + right - r.whole) / 15.0;
        } else {
            stack.push_back({r.a, m, left, r.depth - 1});
            stack.push_back({m, r.b, right, r.depth - 1});
        }
    }
    return total;
}

// Median of |x| under the window-truncated Cauchy density, found by Simpson
// quadrature of the density plus bisection on the mass.
inline double truncated_lorentzian_abs_median(double fwhm, double window) {
    const double hwhm = 0.5 * fwhm;
    auto density = [&](double x) {
        return 1.0 / (1.0 + (x / hwhm) * (x / hwhm));
    };
    auto mass = [&](double upper) {
        return adaptive_simpson(density, 0.0, upper, 1e-13 * window);
    };
    const double total = mass(window);
    double lo = 0.0, hi = window;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mass(mid) < 0.5 * total)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles
