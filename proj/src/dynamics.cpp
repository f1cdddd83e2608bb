#include "starkfid/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace starkfid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fixed reduction granularity; even so dipole-class pairs never straddle a
// block boundary, which keeps the pair-sum commutativity argument intact.
constexpr std::size_t kBlockAtoms = 8192;

// One grid step with a fixed per-atom rotor phase delta*dt + rate*vdt.
// Consecutive steps inside a constant-voltage stretch share one Run, so the
// rotor is recomputed only where the waveform actually changes.
struct Run {
    int len = 0;
    double vdt = 0.0;  // integral of V over one grid step (V*s)
};

struct StepPlan {
    double q0 = 0.0;  // integral of V over [0, t_start]
    std::vector<Run> runs;
};

StepPlan build_step_plan(const VoltageTimeline& tl, const TimeGrid& grid) {
    StepPlan plan;
    plan.q0 = tl.integral(0.0, grid.t_start_s);
    const double dt = grid.dt();
    plan.runs.reserve(16);
    for (int m = 0; m + 1 < grid.n_points; ++m) {
        const double a = grid.time(m);
        const double b = grid.time(m + 1);
        double vdt;
        bool mergeable = false;
        if (!tl.has_knot_strictly_inside(a, b)) {
            const double va = tl.voltage_after(a);
            const double vb = tl.voltage_before(b);
            // idealized step width keeps vdt bitwise stable across the run
            vdt = (va + vb) * 0.5 * dt;
            mergeable = (va == vb);
        } else {
            vdt = tl.integral(a, b);
        }
        if (mergeable && !plan.runs.empty() && plan.runs.back().vdt == vdt &&
            plan.runs.back().len > 0) {
            ++plan.runs.back().len;
        } else {
            plan.runs.push_back({1, vdt});
        }
    }
    return plan;
}

inline std::complex<double> unit_phasor(double phase) {
    return {std::cos(phase), -std::sin(phase)};  // exp(-i*phase)
}

// Phasor sum of atoms [i0, i1) into acc (size n_points), raw re/im pairs to
// keep the rotor recurrence branch-free. Atoms advance in pairs whose
// partial sums commute, so a paired ensemble under a polarity flip
// reproduces the trace bit for bit.
void accumulate_range(const std::vector<Atom>& atoms, std::size_t i0, std::size_t i1,
                      const std::vector<double>& rate,
                      const std::vector<std::complex<double>>& amp,
                      const StepPlan& plan, const TimeGrid& grid,
                      std::complex<double>* acc) {
    const double dt = grid.dt();
    const double t0 = grid.t_start_s;
    const int n = grid.n_points;
    double* out = reinterpret_cast<double*>(acc);  // interleaved re, im

    std::size_t j = i0;
    for (; j + 1 < i1; j += 2) {
        const double da = atoms[j].delta_nat;
        const double db = atoms[j + 1].delta_nat;
        const double ca = rate[j];
        const double cb = rate[j + 1];
        const std::complex<double> sa0 = amp[j] * unit_phasor(da * t0 + ca * plan.q0);
        const std::complex<double> sb0 =
            amp[j + 1] * unit_phasor(db * t0 + cb * plan.q0);
        double sar = sa0.real(), sai = sa0.imag();
        double sbr = sb0.real(), sbi = sb0.imag();
        int m = 0;
        for (const Run& run : plan.runs) {
            const double pa = da * dt + ca * run.vdt;
            const double pb = db * dt + cb * run.vdt;
            const double rar = std::cos(pa), rai = -std::sin(pa);
            const double rbr = std::cos(pb), rbi = -std::sin(pb);
            for (int k = 0; k < run.len; ++k, ++m) {
                out[2 * m] += sar + sbr;
                out[2 * m + 1] += sai + sbi;
                const double nar = sar * rar - sai * rai;
                sai = sar * rai + sai * rar;
                sar = nar;
                const double nbr = sbr * rbr - sbi * rbi;
                sbi = sbr * rbi + sbi * rbr;
                sbr = nbr;
            }
        }
        out[2 * (n - 1)] += sar + sbr;
        out[2 * (n - 1) + 1] += sai + sbi;
    }
    if (j < i1) {  // odd tail
        const double da = atoms[j].delta_nat;
        const double ca = rate[j];
        const std::complex<double> sa0 = amp[j] * unit_phasor(da * t0 + ca * plan.q0);
        double sar = sa0.real(), sai = sa0.imag();
        int m = 0;
        for (const Run& run : plan.runs) {
            const double pa = da * dt + ca * run.vdt;
            const double rar = std::cos(pa), rai = -std::sin(pa);
            for (int k = 0; k < run.len; ++k, ++m) {
                out[2 * m] += sar;
                out[2 * m + 1] += sai;
                const double nar = sar * rar - sai * rai;
                sai = sar * rai + sai * rar;
                sar = nar;
            }
        }
        out[2 * (n - 1)] += sar;
        out[2 * (n - 1) + 1] += sai;
    }
}

int resolve_threads(int requested, std::size_t n_jobs) {
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(n_jobs, 1)));
}

}  // namespace

double stark_phase(const Atom& atom, const StarkGeometry& geom,
                   const VoltageTimeline& tl, double t_s) {
    if (t_s < 0.0) throw std::invalid_argument("stark_phase requires t >= 0");
    return geom.detuning_rate_per_volt(atom) * tl.integral(0.0, t_s);
}

Trace fid_trace(const std::vector<Atom>& atoms, const StarkGeometry& geom,
                const VoltageTimeline& tl, const TimeGrid& grid,
                const DecoherenceParams& dec, const ComputeOptions& opts) {
    if (atoms.empty()) throw std::invalid_argument("empty ensemble");
    if (grid.n_points < 2) throw std::invalid_argument("grid needs >= 2 points");
    if (!(grid.t_end_s > grid.t_start_s))
        throw std::invalid_argument("grid must have t_end > t_start");
    if (grid.t_start_s < 0.0)
        throw std::invalid_argument("grid starts before the end of the pulse");
    if (!(dec.t2_s > 0.0)) throw std::invalid_argument("t2_s must be > 0");

    bool any_weight = false;
    for (const Atom& a : atoms)
        if (a.weight != std::complex<double>(0.0, 0.0)) {
            any_weight = true;
            break;
        }
    if (!any_weight)
        throw std::invalid_argument("ensemble has no excitation weights; call excite first");

    Trace trace;
    trace.grid = grid;

    // per-atom Stark rate (rad/s/V) and effective amplitude
    const std::size_t n_atoms = atoms.size();
    std::vector<double> rate(n_atoms);
    std::vector<std::complex<double>> amp(n_atoms);
    double max_abs_delta = 0.0;
    double max_abs_rate = 0.0;
    for (std::size_t j = 0; j < n_atoms; ++j) {
        rate[j] = geom.detuning_rate_per_volt(atoms[j]);
        double b = 1.0;
        if (dec.beer_lambert)
            b = std::exp(-dec.alpha_l * atoms[j].z / (2.0 * geom.l_crystal));
        amp[j] = atoms[j].weight * b;
        max_abs_delta = std::max(max_abs_delta, std::abs(atoms[j].delta_nat));
        max_abs_rate = std::max(max_abs_rate, std::abs(rate[j]));
    }

    // aliasing guard for the analysis-side FFT (heuristic, warn only)
    const double f_max =
        (max_abs_delta + max_abs_rate * tl.max_abs_voltage()) / kTwoPi;
    const double needed = 20.0 * f_max * (grid.t_end_s - grid.t_start_s);
    if (grid.n_points < needed)
        trace.warnings.push_back(
            "grid resolution below 20 x max detuning x duration (" +
            std::to_string(grid.n_points) + " < " + std::to_string(needed) + ")");

    const StepPlan plan = build_step_plan(tl, grid);
    const std::size_t n_pts = static_cast<std::size_t>(grid.n_points);
    std::vector<std::complex<double>> total(n_pts, std::complex<double>(0.0));

    if (opts.mode == ReductionMode::deterministic) {
        const std::size_t n_blocks = (n_atoms + kBlockAtoms - 1) / kBlockAtoms;
        std::vector<std::vector<std::complex<double>>> partial(n_blocks);
        const int n_threads = resolve_threads(opts.n_threads, n_blocks);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= n_blocks) return;
                partial[b].assign(n_pts, std::complex<double>(0.0));
                const std::size_t i0 = b * kBlockAtoms;
                const std::size_t i1 = std::min(i0 + kBlockAtoms, n_atoms);
                accumulate_range(atoms, i0, i1, rate, amp, plan, grid,
                                 partial[b].data());
            }
        };
        if (n_threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(n_threads);
            for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        // fixed combine order: block index
        for (std::size_t b = 0; b < n_blocks; ++b)
            for (std::size_t m = 0; m < n_pts; ++m) total[m] += partial[b][m];
        trace.metadata.mode = "deterministic";
    } else {
        const std::size_t n_pairs = (n_atoms + 1) / 2;
        const int n_threads = resolve_threads(opts.n_threads, n_pairs);
        const std::size_t pairs_per_chunk = (n_pairs + n_threads - 1) / n_threads;
        std::vector<std::vector<std::complex<double>>> partial(n_threads);
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t]() {
                partial[t].assign(n_pts, std::complex<double>(0.0));
                const std::size_t i0 =
                    std::min(2 * pairs_per_chunk * static_cast<std::size_t>(t), n_atoms);
                const std::size_t i1 =
                    std::min(i0 + 2 * pairs_per_chunk, n_atoms);
                if (i0 < i1)
                    accumulate_range(atoms, i0, i1, rate, amp, plan, grid,
                                     partial[t].data());
            });
        }
        for (auto& th : pool) th.join();
        for (int t = 0; t < n_threads; ++t)
            for (std::size_t m = 0; m < n_pts; ++m) total[m] += partial[t][m];
        trace.metadata.mode = "relaxed";
    }

    if (std::isfinite(dec.t2_s))
        for (std::size_t m = 0; m < n_pts; ++m)
            total[m] *= std::exp(-grid.time(static_cast<int>(m)) / dec.t2_s);

    trace.amplitude = std::move(total);
    trace.intensity.resize(n_pts);
    for (std::size_t m = 0; m < n_pts; ++m)
        trace.intensity[m] = std::norm(trace.amplitude[m]);
    return trace;
}

TracePair run_with_reference(const std::vector<Atom>& atoms,
                             const StarkGeometry& geom, const VoltageTimeline& tl,
                             const TimeGrid& grid, const DecoherenceParams& dec,
                             const ComputeOptions& opts) {
    TracePair pair;
    pair.perturbed = fid_trace(atoms, geom, tl, grid, dec, opts);
    const VoltageTimeline zero({{0.0, 0.0}}, tl.t_switch());
    pair.reference = fid_trace(atoms, geom, zero, grid, dec, opts);
    return pair;
}

}  // namespace starkfid
