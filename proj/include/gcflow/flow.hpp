#pragma once

// Explicit time stepping of the anisotropic Gauss curvature flow in support
// function form, normalized (u_t = -f r^alpha K + u) or raw (u_t = -f r^alpha K).

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gcflow/anisotropy.hpp"
#include "gcflow/bodies.hpp"
#include "gcflow/convex_geometry.hpp"
#include "gcflow/measures.hpp"

namespace gcflow {

enum class FlowMode { normalized, raw };

/// How the initial body is dilated before a normalized run.
enum class Phi0Rule {
    aleksandrov,   ///< exp(mean of log r0); alpha = n+1
    bracket,       ///< sqrt(min r0 max r0); alpha > n+1
    iq_matching,   ///< (int r0^q / int f)^(1/q); alpha != n+1
    volume,        ///< volume (support form) equal to that of the unit ball
    explicit_value
};

struct FlowConfig {
    double alpha = 0.0;
    AnisotropyF f = AnisotropyF::constant(1.0);
    FlowMode mode = FlowMode::normalized;
    Phi0Rule phi0_rule = Phi0Rule::aleksandrov;
    double phi0_value = 1.0;
    double cfl = 0.2;
    double t_max = 20.0;
    double residual_tol = 1e-6;
    double blowup_ratio = 1e3;
    double min_u_floor = 1e-6;
    std::size_t record_every = 100;
    bool track_functional = true;
    int max_halvings = 40;

    void validate() const {
        require(cfl > 0.0 && cfl <= 1.0, "FlowConfig: cfl must lie in (0, 1]");
        require(t_max > 0.0, "FlowConfig: t_max must be positive");
        require(residual_tol > 0.0 && blowup_ratio > 0.0 && min_u_floor > 0.0,
                "FlowConfig: tolerances must be positive");
        require(record_every >= 1, "FlowConfig: record_every must be >= 1");
        require(phi0_rule != Phi0Rule::explicit_value || phi0_value > 0.0, "FlowConfig: phi0 must be positive");
    }
};

struct DiagnosticsRecord {
    std::size_t step = 0;
    double t = 0.0;
    double J_alpha = 0.0;
    double J_log = 0.0;          ///< the alpha = n+1 functional, tracked for every alpha
    double I_q = 0.0;
    double log_r_integral = 0.0;
    double volume = 0.0;         ///< (1/(n+1)) int u/K dx
    double u_min = 0.0, u_max = 0.0;
    double r_min = 0.0, r_max = 0.0;
    double ratio_R = 1.0;
    double residual_max = 0.0;
    double kappa_min = 0.0, kappa_max = 0.0;
    double dt = 0.0;
};

/// Largest per-unit-time increase of the functionals seen over accepted steps:
/// max_k (J(t_{k+1}) - J(t_k)) / dt_k. Non-positive means monotone descent.
struct MonotonicityLog {
    double max_J_alpha_rise_rate = -std::numeric_limits<double>::infinity();
    double max_J_log_rise_rate = -std::numeric_limits<double>::infinity();
    std::size_t steps_checked = 0;
};

struct FlowState {
    double t = 0.0;
    SupportFn u;
    std::size_t step_index = 0;
    double dt_last = 0.0;
    std::vector<DiagnosticsRecord> history;
    double phi0 = 1.0;
    MonotonicityLog monotonicity;
};

enum class Outcome { Converged, TimeOut, Blowup, Extinct };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Converged: return "Converged";
        case Outcome::TimeOut: return "TimeOut";
        case Outcome::Blowup: return "Blowup";
        case Outcome::Extinct: return "Extinct";
    }
    return "?";
}

struct RunResult {
    FlowState final;
    Outcome outcome = Outcome::TimeOut;
    bool step_collapse = false;
    std::string message;
};

// ---------------------------------------------------------------------------

inline Phi0Rule default_phi0_rule(int n, double alpha) {
    if (is_log_case(n, alpha)) return Phi0Rule::aleksandrov;
    return alpha > n + 1 ? Phi0Rule::bracket : Phi0Rule::iq_matching;
}

inline double select_phi0(const RadialFn& r0, std::span<const double> f_values, double alpha, Phi0Rule rule,
                          double explicit_value = 1.0) {
    const auto& grid = r0.grid();
    const int n = grid.dimension();
    switch (rule) {
        case Phi0Rule::aleksandrov: {
            Values g(r0.values());
            for (auto& v : g) v = std::log(v);
            return std::exp(integrate(g, grid) / grid.sphere_measure());
        }
        case Phi0Rule::bracket: {
            const auto [lo, hi] = std::minmax_element(r0.values().begin(), r0.values().end());
            return std::sqrt(*lo * *hi);
        }
        case Phi0Rule::iq_matching: {
            const double q = dual_exponent(n, alpha);
            if (std::abs(q) < 1e-14) throw ContractViolation("iq_matching requires alpha != n+1");
            Values g(r0.values());
            for (auto& v : g) v = std::pow(v, q);
            return std::pow(integrate(g, grid) / integrate(f_values, grid), 1.0 / q);
        }
        case Phi0Rule::explicit_value:
            return explicit_value;
        case Phi0Rule::volume:
            throw ContractViolation("volume rule needs the full body snapshot");
    }
    return 1.0;
}

inline double select_phi0(const RadialFn& r0, const AnisotropyF& f, const FlowConfig& config) {
    return select_phi0(r0, f.on(r0.grid()), config.alpha, config.phi0_rule, config.phi0_value);
}

inline double select_phi0(const BodySnapshot& body0, const AnisotropyF& f, const FlowConfig& config) {
    if (config.phi0_rule == Phi0Rule::volume) {
        const int n = body0.dimension();
        const double unit_ball = body0.grid().sphere_measure() / (n + 1);
        return std::pow(volume(body0) / unit_ball, 1.0 / (n + 1));
    }
    return select_phi0(body0.r, f, config);
}

/// Rescaling factor and original time for a normalized time tau:
/// phi = phi0 e^{-tau}; t = tau (alpha = n+1) or phi0^q (1 - e^{-q tau}) / q.
struct UnnormalizedTime {
    double t;
    double phi;
};

inline UnnormalizedTime to_unnormalized(double tau, double phi0, double alpha, int n) {
    const double phi = phi0 * std::exp(-tau);
    if (is_log_case(n, alpha)) return {tau, phi};
    const double q = dual_exponent(n, alpha);
    return {std::pow(phi0, q) * (1.0 - std::exp(-q * tau)) / q, phi};
}

// ---------------------------------------------------------------------------

namespace detail {

/// x^a with cheap paths for the small integer exponents that dominate in practice.
inline double power(double x, double a) {
    if (a == 0.0) return 1.0;
    if (a == 1.0) return x;
    if (a == 2.0) return x * x;
    if (a == 3.0) return x * x * x;
    if (a == 4.0) {
        const double x2 = x * x;
        return x2 * x2;
    }
    return std::pow(x, a);
}

struct TrackedFunctionals {
    double J_alpha;
    double J_log;
};

/// J_alpha and J_{n+1} from a single resampling of r; same quadrature as functional_J.
inline TrackedFunctionals tracked_functionals(const SupportFn& u, std::span<const double> f_values, double alpha) {
    const auto& grid = u.grid();
    check_radii(raw_principal_radii(u.values(), deriv1(u.values(), grid), grid));
    const auto du = deriv1_fourth(u.values(), grid);
    const auto r_x = radial_at_normals(u.values(), du);
    const auto xi = direction_angles(u.values(), du, grid);
    const auto r = resample_radial(u, du, r_x, xi);
    const int n = grid.dimension();
    const bool log_case = is_log_case(n, alpha);
    const double q = dual_exponent(n, alpha);
    const auto& w = grid.weights();
    double flog = 0.0, logr = 0.0, rq = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        flog += w[i] * f_values[i] * std::log(u[i]);
        const double lr = std::log(r[i]);
        logr += w[i] * lr;
        if (!log_case) rq += w[i] * std::exp(q * lr);
    }
    return {flog - (log_case ? logr : rq / q), flog - logr};
}

}  // namespace detail

/// Pointwise quantities the step needs, from one pass over u.
struct LocalEvaluation {
    Values rhs;
    Values r_x;
    PrincipalRadii radii;
    double residual_max = 0.0;
    double stable_dt_over_h2 = std::numeric_limits<double>::infinity();  ///< min b_min / (f r^alpha K)
    double u_min = 0.0, u_max = 0.0, r_min = 0.0, r_max = 0.0;
};

inline LocalEvaluation evaluate_local(const SupportFn& u, std::span<const double> f_values, double alpha, FlowMode mode) {
    const auto& grid = u.grid();
    check_size(f_values, grid);
    const auto du = deriv1(u.values(), grid);
    LocalEvaluation ev;
    ev.radii = raw_principal_radii(u.values(), du, grid);
    check_radii(ev.radii);
    ev.r_x = radial_at_normals(u.values(), du);
    const std::size_t N = grid.size();
    ev.rhs.resize(N);
    ev.u_min = ev.r_min = std::numeric_limits<double>::infinity();
    ev.u_max = ev.r_max = 0.0;
    const bool curve = grid.dimension() == 1;
    for (std::size_t i = 0; i < N; ++i) {
        const double det = curve ? ev.radii.first[i] : ev.radii.first[i] * ev.radii.second[i];
        const double speed = f_values[i] * detail::power(ev.r_x[i], alpha) / det;  // f r^alpha K
        const double residual = speed - u[i];
        ev.rhs[i] = mode == FlowMode::normalized ? -residual : -speed;
        ev.residual_max = std::max(ev.residual_max, std::abs(residual));
        ev.stable_dt_over_h2 = std::min(ev.stable_dt_over_h2, ev.radii.smallest_at(i) / speed);
        ev.u_min = std::min(ev.u_min, u[i]);
        ev.u_max = std::max(ev.u_max, u[i]);
        ev.r_min = std::min(ev.r_min, ev.r_x[i]);
        ev.r_max = std::max(ev.r_max, ev.r_x[i]);
    }
    return ev;
}

/// Right-hand side: -f r^alpha K + u (normalized) or -f r^alpha K (raw).
inline Values rhs(const SupportFn& u, const AnisotropyF& f, double alpha, FlowMode mode) {
    return evaluate_local(u, f.on(u.grid()), alpha, mode).rhs;
}

struct Advance {
    SupportFn u;
    double dt;
    int halvings;
};

/// One forward-Euler step with adaptive dt and reject-and-halve guard.
inline Advance advance(const SupportFn& u, const LocalEvaluation& ev, const FlowConfig& config, double dt_cap) {
    const auto& grid = u.grid();
    const double h = grid.spacing();
    double dt = config.cfl * h * h * ev.stable_dt_over_h2;
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);
    const std::size_t N = grid.size();
    Values trial(N);
    for (int halving = 0; halving <= config.max_halvings; ++halving) {
        bool ok = true;
        for (std::size_t i = 0; i < N; ++i) {
            trial[i] = u[i] + dt * ev.rhs[i];
            if (!(trial[i] > 0.0)) ok = false;
        }
        if (ok) {
            const auto du = deriv1(trial, grid);
            const auto b = raw_principal_radii(trial, du, grid);
            for (std::size_t i = 0; i < N && ok; ++i) ok = b.smallest_at(i) > 0.0 && std::isfinite(b.smallest_at(i));
        }
        if (ok) return Advance{SupportFn(u.grid_ptr(), trial), dt, halving};
        dt *= 0.5;
    }
    throw StepCollapse("step rejected " + std::to_string(config.max_halvings) + " times at dt=" + std::to_string(dt));
}

inline DiagnosticsRecord diagnose(const FlowState& state, std::span<const double> f_values, const FlowConfig& config) {
    DiagnosticsRecord rec;
    rec.step = state.step_index;
    rec.t = state.t;
    rec.dt = state.dt_last;
    const int n = state.u.grid().dimension();
    const auto ev = evaluate_local(state.u, f_values, config.alpha, config.mode);
    rec.u_min = ev.u_min;
    rec.u_max = ev.u_max;
    rec.r_min = ev.r_min;
    rec.r_max = ev.r_max;
    rec.ratio_R = ev.r_max / ev.r_min;
    rec.residual_max = ev.residual_max;
    rec.kappa_min = 1.0 / ev.radii.max();
    rec.kappa_max = 1.0 / ev.radii.min();
    try {
        const auto body = make_snapshot(state.u);
        rec.J_alpha = functional_J(body, f_values, config.alpha);
        rec.J_log = functional_J(body, f_values, n + 1.0);
        rec.I_q = integral_I_q(body, dual_exponent(n, config.alpha));
        rec.log_r_integral = log_r_integral(body);
        rec.volume = volume(body);
    } catch (const ConvexityLost&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rec.J_alpha = rec.J_log = rec.I_q = rec.log_r_integral = rec.volume = nan;
    }
    return rec;
}

/// Advances a state by one accepted step. Takes the state by value; move it in
/// to avoid copying the history.
inline FlowState step(FlowState state, const FlowConfig& config) {
    const auto fv = config.f.on(state.u.grid());
    const auto ev = evaluate_local(state.u, fv, config.alpha, config.mode);
    auto adv = advance(state.u, ev, config, 0.0);
    state.u = std::move(adv.u);
    state.t += adv.dt;
    state.dt_last = adv.dt;
    ++state.step_index;
    if (state.step_index % config.record_every == 0) state.history.push_back(diagnose(state, fv, config));
    return state;
}

/// Receives every recorded snapshot: (body, t, record index).
using SnapshotSink = std::function<void(const BodySnapshot&, double, std::size_t)>;

inline RunResult run(const SupportFn& u0, const FlowConfig& config, const SnapshotSink& sink = {}) {
    config.validate();
    const auto& grid = u0.grid();
    const auto fv = config.f.on(grid);

    double phi0 = 1.0;
    SupportFn start = u0;
    if (config.mode == FlowMode::normalized) {
        phi0 = select_phi0(make_snapshot(u0), config.f, config);
        start = bodies::scaled(u0, 1.0 / phi0);
    }
    RunResult result{FlowState{0.0, start, 0, 0.0, {}, phi0, {}}, Outcome::TimeOut, false, {}};
    FlowState& s = result.final;

    auto record = [&]() {
        s.history.push_back(diagnose(s, fv, config));
        if (sink) {
            try {
                sink(make_snapshot(s.u), s.t, s.history.size() - 1);
            } catch (const ConvexityLost&) {
            }
        }
    };

    const bool track = config.track_functional && config.mode == FlowMode::normalized;
    double J_alpha_prev = 0.0, J_log_prev = 0.0;
    if (track) {
        const auto J = detail::tracked_functionals(s.u, fv, config.alpha);
        J_alpha_prev = J.J_alpha;
        J_log_prev = J.J_log;
    }

    record();
    std::size_t last_recorded = 0;
    for (;;) {
        const auto ev = evaluate_local(s.u, fv, config.alpha, config.mode);
        const double ratio = ev.r_max / ev.r_min;
        if (config.mode == FlowMode::normalized && ev.residual_max < config.residual_tol) {
            result.outcome = Outcome::Converged;
            break;
        }
        if (ratio > config.blowup_ratio || (config.mode == FlowMode::raw && ev.u_min < config.min_u_floor)) {
            result.outcome = Outcome::Blowup;
            break;
        }
        if (ev.u_max < config.min_u_floor) {
            result.outcome = Outcome::Extinct;
            break;
        }
        const double remaining = config.t_max - s.t;
        if (remaining <= 1e-12 * std::max(1.0, config.t_max)) {
            result.outcome = Outcome::TimeOut;
            break;
        }
        Advance adv{s.u, 0.0, 0};
        try {
            adv = advance(s.u, ev, config, remaining);
        } catch (const StepCollapse& e) {
            result.outcome = Outcome::Blowup;
            result.step_collapse = true;
            result.message = e.what();
            break;
        }
        s.u = std::move(adv.u);
        s.t += adv.dt;
        s.dt_last = adv.dt;
        ++s.step_index;

        if (track) {
            try {
                const auto J = detail::tracked_functionals(s.u, fv, config.alpha);
                const double Ja = J.J_alpha, Jl = J.J_log;
                auto& mono = s.monotonicity;
                mono.max_J_alpha_rise_rate = std::max(mono.max_J_alpha_rise_rate, (Ja - J_alpha_prev) / adv.dt);
                mono.max_J_log_rise_rate = std::max(mono.max_J_log_rise_rate, (Jl - J_log_prev) / adv.dt);
                ++mono.steps_checked;
                J_alpha_prev = Ja;
                J_log_prev = Jl;
            } catch (const ConvexityLost&) {
            }
        }
        if (s.step_index % config.record_every == 0) {
            record();
            last_recorded = s.step_index;
        }
    }
    if (last_recorded != s.step_index) record();
    return result;
}

// ---------------------------------------------------------------------------

/// Radii of the two spherical barriers: [1 - (1 - a^q) e^{qt}]^{1/q}, q < 0.
inline std::pair<double, double> barrier_envelope(double a, double b, double q, double t) {
    require(q < 0.0, "barrier_envelope: q must be negative");
    require(a > 0.0 && a <= 1.0 && b >= 1.0, "barrier_envelope: need 0 < a <= 1 <= b");
    auto radius = [&](double c) { return std::pow(1.0 - (1.0 - std::pow(c, q)) * std::exp(q * t), 1.0 / q); };
    return {radius(a), radius(b)};
}

// ---------------------------------------------------------------------------

inline void write_diagnostics_header(std::ostream& os) {
    os << "step,t,J_alpha,J_log,I_q,log_r_integral,volume,u_min,u_max,r_min,r_max,ratio_R,residual_max,"
          "kappa_min,kappa_max,dt\n";
}

inline void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& d) {
    os << std::setprecision(17) << d.step << ',' << d.t << ',' << d.J_alpha << ',' << d.J_log << ',' << d.I_q << ','
       << d.log_r_integral << ',' << d.volume << ',' << d.u_min << ',' << d.u_max << ',' << d.r_min << ',' << d.r_max
       << ',' << d.ratio_R << ',' << d.residual_max << ',' << d.kappa_min << ',' << d.kappa_max << ',' << d.dt << '\n';
}

}  // namespace gcflow
