#pragma once

// Scenario documents: a small key = value format with [scenario], [flow] and
// [output] sections, a runner that writes CSV diagnostics and snapshots, and
// the built-in catalog.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gcflow/anisotropy.hpp"
#include "gcflow/bodies.hpp"
#include "gcflow/convex_geometry.hpp"
#include "gcflow/flow.hpp"
#include "gcflow/measures.hpp"

namespace gcflow {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class ScenarioTask { flow, duality, aleksandrov };

/// What counts as success. For flow tasks one of the run outcomes; for the
/// check tasks pass or fail of the check.
enum class Expectation { any, converged, timeout, blowup, extinct, pass, fail };

struct ScenarioSpec {
    std::string name = "scenario";
    ScenarioTask task = ScenarioTask::flow;
    int n = 1;
    std::size_t N = 512;
    std::string initial;              ///< e.g. "ellipse 2 1"
    std::uint64_t seed = 0;
    double perturb = 0.0;             ///< amplitude of a random even-mode perturbation of u0
    Expectation expect = Expectation::converged;
    std::string f_text = "const 1";
    FlowConfig flow;                  ///< f is filled in from f_text on validation
    bool phi0_rule_given = false;
    std::string output_dir;           ///< relative paths resolve against the output root
    std::size_t snapshot_every = 10;  ///< write every k-th recorded state
    std::filesystem::path base_dir;   ///< for "initial = file ..."
    std::map<std::string, std::size_t> key_lines;

    std::size_t line_of(const std::string& key) const {
        const auto it = key_lines.find(key);
        return it == key_lines.end() ? 0 : it->second;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

inline double to_number(std::string_view s, std::size_t line, const std::string& key) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ConfigError(line, "malformed number '" + std::string(s) + "' for " + key);
    return v;
}

inline std::uint64_t to_count(std::string_view s, std::size_t line, const std::string& key) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(line, "malformed integer '" + std::string(s) + "' for " + key);
    return v;
}

inline std::vector<double> numbers(const std::vector<std::string>& w, std::size_t from, std::size_t line,
                                   const std::string& key) {
    std::vector<double> out;
    for (std::size_t i = from; i < w.size(); ++i) out.push_back(to_number(w[i], line, key));
    return out;
}

inline const std::map<std::string, std::string>& key_sections() {
    static const std::map<std::string, std::string> table{
        {"name", "scenario"},      {"task", "scenario"},        {"n", "scenario"},
        {"N", "scenario"},         {"initial", "scenario"},     {"seed", "scenario"},
        {"perturb", "scenario"},   {"expect", "scenario"},      {"alpha", "flow"},
        {"f", "flow"},             {"mode", "flow"},            {"phi0_rule", "flow"},
        {"phi0", "flow"},          {"cfl", "flow"},             {"t_max", "flow"},
        {"residual_tol", "flow"},  {"blowup_ratio", "flow"},    {"min_u_floor", "flow"},
        {"record_every", "flow"},  {"dir", "output"},           {"snapshot_every", "output"},
    };
    return table;
}

/// Splits "fourier c0 a1 b1 a2 b2 ..." coefficients into cosine and sine lists.
inline void split_fourier(const std::vector<double>& c, double& c0, std::vector<double>& a, std::vector<double>& b) {
    c0 = c.at(0);
    for (std::size_t k = 1; k < c.size(); ++k) ((k % 2 == 1) ? a : b).push_back(c[k]);
}

inline void validate_body_words(const std::vector<std::string>& w, std::size_t line) {
    if (w.empty()) throw ConfigError(line, "initial: missing body");
    const auto& kind = w[0];
    const auto nums = kind == "file" ? std::vector<double>{} : numbers(w, 1, line, "initial");
    auto need = [&](std::size_t k) {
        if (nums.size() != k) throw ConfigError(line, "initial: '" + kind + "' takes " + std::to_string(k) + " value(s)");
    };
    if (kind == "sphere") need(1);
    else if (kind == "ellipse") need(2);
    else if (kind == "shifted_disk") need(1);
    else if (kind == "fourier") {
        if (nums.empty()) throw ConfigError(line, "initial: 'fourier' needs at least c0");
    } else if (kind == "file") {
        if (w.size() != 2) throw ConfigError(line, "initial: 'file' takes one path");
    } else {
        throw ConfigError(line, "initial: unknown body '" + kind + "' (sphere, ellipse, shifted_disk, fourier, file)");
    }
}

inline void validate_f_words(const std::vector<std::string>& w, std::size_t line) {
    if (w.empty()) throw ConfigError(line, "f: missing value");
    const auto nums = numbers(w, 1, line, "f");
    if (w[0] == "const") {
        if (nums.size() != 1) throw ConfigError(line, "f: 'const' takes one value");
    } else if (w[0] == "fourier") {
        if (nums.empty()) throw ConfigError(line, "f: 'fourier' needs at least c0");
    } else if (w[0] == "bump") {
        if (nums.size() != 3) throw ConfigError(line, "f: 'bump' takes center, width and mass");
        if (!(nums[1] > 0.0) || !(nums[2] >= 0.0 && nums[2] < 1.0))
            throw ConfigError(line, "f: bump needs width > 0 and mass in [0, 1)");
    } else {
        throw ConfigError(line, "f: unknown form '" + w[0] + "' (const, fourier, bump)");
    }
}

}  // namespace detail

/// f = (1 - mass) + mass |S^n| g with g a smooth bump of total mass one on the
/// arc of the given width around `center`, normalized by the grid quadrature.
inline AnisotropyF spike_anisotropy(const GridPtr& grid, double center, double width, double mass) {
    const double half = 0.5 * width;
    Values g(grid->size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double d = grid->node(i) - center;
        if (grid->periodic()) d = std::remainder(d, 2.0 * std::numbers::pi);
        const double s = d / half;
        if (std::abs(s) < 1.0) g[i] = std::exp(-1.0 / (1.0 - s * s));
    }
    const double total = integrate(g, *grid);
    require(total > 0.0, "spike: bump is narrower than the grid spacing");
    Values f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = (1.0 - mass) + mass * grid->sphere_measure() * g[i] / total;
    return AnisotropyF::tabulated(std::move(f), grid->dimension());
}

inline AnisotropyF build_anisotropy(const std::string& text, const GridPtr& grid) {
    const auto w = detail::words(text);
    const auto nums = detail::numbers(w, 1, 0, "f");
    if (w.at(0) == "const") return AnisotropyF::constant(nums.at(0));
    if (w[0] == "bump") return spike_anisotropy(grid, nums.at(0), nums.at(1), nums.at(2));
    double c0 = 0.0;
    std::vector<double> a, b;
    detail::split_fourier(nums, c0, a, b);
    return AnisotropyF::cosine_polynomial(c0, a, b);
}

inline SupportFn build_initial(const ScenarioSpec& spec, const GridPtr& grid) {
    const auto w = detail::words(spec.initial);
    SupportFn u = bodies::sphere(grid, 1.0);
    if (w.at(0) == "file") {
        auto path = std::filesystem::path(w.at(1));
        if (path.is_relative()) path = spec.base_dir / path;
        std::ifstream in(path);
        if (!in) throw ConfigError(spec.line_of("initial"), "cannot open " + path.string());
        auto [hdr, values] = read_snapshot(in);
        if (hdr.n != grid->dimension() || hdr.N != grid->size())
            throw ConfigError(spec.line_of("initial"), path.string() + " does not match n and N of the scenario");
        u = SupportFn(grid, std::move(values));
    } else {
        const auto nums = detail::numbers(w, 1, 0, "initial");
        if (w[0] == "sphere") u = bodies::sphere(grid, nums.at(0));
        else if (w[0] == "ellipse") u = bodies::ellipse(grid, nums.at(0), nums.at(1));
        else if (w[0] == "shifted_disk") u = bodies::shifted_disk(grid, nums.at(0));
        else {
            double c0 = 0.0;
            std::vector<double> a, b;
            detail::split_fourier(nums, c0, a, b);
            u = bodies::fourier(grid, c0, a, b);
        }
    }
    if (spec.perturb != 0.0) {
        // even modes 2..8 keep origin symmetry; decay 1/k^2 keeps convexity for small amplitudes
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        Values v(u.values());
        for (int k = 2; k <= 8; k += 2) {
            const double a = coeff(rng), b = grid->dimension() == 1 ? coeff(rng) : 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double th = grid->node(i);
                v[i] += spec.perturb * (a * std::cos(k * th) + b * std::sin(k * th)) / (k * k);
            }
        }
        u = SupportFn(grid, std::move(v));
    }
    principal_radii(u);
    return u;
}

namespace detail {

inline Expectation parse_expect(const std::string& v, std::size_t line) {
    static const std::map<std::string, Expectation> table{
        {"any", Expectation::any},         {"converged", Expectation::converged}, {"timeout", Expectation::timeout},
        {"blowup", Expectation::blowup},   {"extinct", Expectation::extinct},     {"pass", Expectation::pass},
        {"fail", Expectation::fail}};
    const auto it = table.find(v);
    if (it == table.end()) throw ConfigError(line, "expect: unknown value '" + v + "'");
    return it->second;
}

inline Phi0Rule parse_rule(const std::string& v, std::size_t line) {
    static const std::map<std::string, Phi0Rule> table{{"aleksandrov", Phi0Rule::aleksandrov},
                                                       {"bracket", Phi0Rule::bracket},
                                                       {"iq_matching", Phi0Rule::iq_matching},
                                                       {"volume", Phi0Rule::volume},
                                                       {"explicit", Phi0Rule::explicit_value}};
    const auto it = table.find(v);
    if (it == table.end()) throw ConfigError(line, "phi0_rule: unknown value '" + v + "'");
    return it->second;
}

inline void check_consistency(ScenarioSpec& spec) {
    auto fail = [&](const std::string& key, const std::string& msg) { throw ConfigError(spec.line_of(key), msg); };
    if (spec.n != 1 && spec.n != 2) fail("n", "n must be 1 or 2");
    if (spec.N < 16) fail("N", "N must be at least 16");
    if (spec.n == 1 && spec.N % 2 != 0) fail("N", "N must be even for n = 1");
    if (spec.task != ScenarioTask::aleksandrov && spec.initial.empty()) fail("initial", "missing required key 'initial'");
    if (spec.task == ScenarioTask::flow) {
        if (!spec.key_lines.count("alpha")) fail("alpha", "missing required key 'alpha'");
        const double q = dual_exponent(spec.n, spec.flow.alpha);
        const bool log_case = is_log_case(spec.n, spec.flow.alpha);
        if (!spec.phi0_rule_given) spec.flow.phi0_rule = default_phi0_rule(spec.n, spec.flow.alpha);
        switch (spec.flow.phi0_rule) {
            case Phi0Rule::iq_matching:
                if (log_case) fail("phi0_rule", "iq_matching requires alpha != n+1");
                break;
            case Phi0Rule::aleksandrov:
                if (!log_case) fail("phi0_rule", "aleksandrov requires alpha = n+1");
                break;
            case Phi0Rule::bracket:
                if (!(q < 0.0) || log_case) fail("phi0_rule", "bracket requires alpha > n+1");
                break;
            default:
                break;
        }
        try {
            spec.flow.validate();
        } catch (const ContractViolation& e) {
            throw ConfigError(0, e.what());
        }
    }
    const auto grid = make_grid(spec.n, spec.N);
    try {
        spec.flow.f = build_anisotropy(spec.f_text, grid);
        spec.flow.f.on(*grid);
    } catch (const std::exception& e) {
        fail("f", std::string("f: ") + e.what());
    }
    if (spec.task != ScenarioTask::aleksandrov) {
        try {
            build_initial(spec, grid);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail("initial", std::string("initial body is not a valid convex body: ") + e.what());
        }
    }
}

}  // namespace detail

/// Parses a scenario document. Keys outside any section are looked up by name.
inline ScenarioSpec parse_config(const std::string& text, const std::filesystem::path& base_dir = {}) {
    ScenarioSpec spec;
    spec.base_dir = base_dir;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = detail::trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section != "scenario" && section != "flow" && section != "output")
                throw ConfigError(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string value(detail::trim(line.substr(eq + 1)));
        const auto& table = detail::key_sections();
        const auto it = table.find(key);
        if (it == table.end() || (!section.empty() && it->second != section))
            throw ConfigError(line_no, "unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
        if (spec.key_lines.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
        spec.key_lines[key] = line_no;

        auto num = [&]() { return detail::to_number(value, line_no, key); };
        auto count = [&]() { return detail::to_count(value, line_no, key); };
        if (key == "name") spec.name = value;
        else if (key == "task") {
            if (value == "flow") spec.task = ScenarioTask::flow;
            else if (value == "duality") spec.task = ScenarioTask::duality;
            else if (value == "aleksandrov") spec.task = ScenarioTask::aleksandrov;
            else throw ConfigError(line_no, "task: unknown value '" + value + "' (flow, duality, aleksandrov)");
        } else if (key == "n") spec.n = static_cast<int>(count());
        else if (key == "N") spec.N = count();
        else if (key == "initial") {
            detail::validate_body_words(detail::words(value), line_no);
            spec.initial = value;
        } else if (key == "seed") spec.seed = count();
        else if (key == "perturb") spec.perturb = num();
        else if (key == "expect") spec.expect = detail::parse_expect(value, line_no);
        else if (key == "alpha") spec.flow.alpha = num();
        else if (key == "f") {
            detail::validate_f_words(detail::words(value), line_no);
            spec.f_text = value;
        } else if (key == "mode") {
            if (value == "normalized") spec.flow.mode = FlowMode::normalized;
            else if (value == "raw") spec.flow.mode = FlowMode::raw;
            else throw ConfigError(line_no, "mode: unknown value '" + value + "' (normalized, raw)");
        } else if (key == "phi0_rule") {
            spec.flow.phi0_rule = detail::parse_rule(value, line_no);
            spec.phi0_rule_given = true;
        } else if (key == "phi0") spec.flow.phi0_value = num();
        else if (key == "cfl") spec.flow.cfl = num();
        else if (key == "t_max") spec.flow.t_max = num();
        else if (key == "residual_tol") spec.flow.residual_tol = num();
        else if (key == "blowup_ratio") spec.flow.blowup_ratio = num();
        else if (key == "min_u_floor") spec.flow.min_u_floor = num();
        else if (key == "record_every") spec.flow.record_every = count();
        else if (key == "dir") spec.output_dir = value;
        else if (key == "snapshot_every") spec.snapshot_every = count();
    }
    if (spec.key_lines.count("phi0") && spec.phi0_rule_given && spec.flow.phi0_rule != Phi0Rule::explicit_value)
        throw ConfigError(spec.line_of("phi0"), "phi0 is only used with phi0_rule = explicit");
    if (spec.key_lines.count("phi0") && !spec.phi0_rule_given) {
        spec.flow.phi0_rule = Phi0Rule::explicit_value;
        spec.phi0_rule_given = true;
    }
    if (spec.output_dir.empty()) spec.output_dir = spec.name;
    detail::check_consistency(spec);
    return spec;
}

inline ScenarioSpec parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), path.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(e.line(), path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------

inline std::filesystem::path output_root() {
    if (const char* env = std::getenv("GCFLOW_OUTPUT_ROOT"); env && *env) return env;
    return "gcflow_runs";
}

struct ScenarioRun {
    int exit_status = 0;           ///< 0 expected, 1 unexpected outcome, 3 I/O failure
    std::string outcome;           ///< Converged, ..., or pass / fail for check tasks
    std::string message;
    std::filesystem::path directory;
    std::optional<RunResult> flow; ///< present for flow tasks
    double wall_seconds = 0.0;
};

namespace detail {

class IoFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw IoFailure("cannot write " + p.string());
    return os;
}

inline bool expectation_met(Expectation e, const std::string& outcome) {
    switch (e) {
        case Expectation::any: return true;
        case Expectation::converged: return outcome == "Converged";
        case Expectation::timeout: return outcome == "TimeOut";
        case Expectation::blowup: return outcome == "Blowup";
        case Expectation::extinct: return outcome == "Extinct";
        case Expectation::pass: return outcome == "pass";
        case Expectation::fail: return outcome == "fail";
    }
    return false;
}

inline const char* to_string(Expectation e) {
    switch (e) {
        case Expectation::any: return "any";
        case Expectation::converged: return "converged";
        case Expectation::timeout: return "timeout";
        case Expectation::blowup: return "blowup";
        case Expectation::extinct: return "extinct";
        case Expectation::pass: return "pass";
        case Expectation::fail: return "fail";
    }
    return "?";
}

}  // namespace detail

struct DualityReport {
    double product_deviation = 0.0;
    double involution_defect = 0.0;  ///< max |(u*)* - u|
    double roundtrip_error = 0.0;    ///< max |support_from_radial(radial_from_support(u)) - u|
};

inline DualityReport duality_report(const SupportFn& u) {
    const auto body = make_snapshot(u);
    const auto dual = polar_dual(body);
    const auto back = polar_dual(dual);
    const auto round = support_from_radial(body.r);
    DualityReport rep;
    rep.product_deviation = duality_product_check(body, dual);
    for (std::size_t i = 0; i < u.size(); ++i) {
        rep.involution_defect = std::max(rep.involution_defect, std::abs(back.u[i] - u[i]));
        rep.roundtrip_error = std::max(rep.roundtrip_error, std::abs(round[i] - u[i]));
    }
    return rep;
}

/// Runs a validated spec and writes diagnostics.csv, snapshot_<k>.txt and
/// summary.txt under root / spec.output_dir.
inline ScenarioRun run_scenario(const ScenarioSpec& spec, const std::filesystem::path& root = output_root()) {
    ScenarioRun out;
    out.directory = std::filesystem::path(spec.output_dir).is_absolute() ? std::filesystem::path(spec.output_dir)
                                                                         : root / spec.output_dir;
    const auto start = std::chrono::steady_clock::now();
    auto seconds = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        std::error_code ec;
        std::filesystem::create_directories(out.directory, ec);
        if (ec) throw detail::IoFailure("cannot create " + out.directory.string() + ": " + ec.message());
        const auto grid = make_grid(spec.n, spec.N);
        std::ostringstream summary;
        summary << std::setprecision(17);
        summary << "name: " << spec.name << '\n';

        if (spec.task == ScenarioTask::flow) {
            const auto u0 = build_initial(spec, grid);
            auto diag = detail::open_out(out.directory / "diagnostics.csv");
            write_diagnostics_header(diag);
            std::size_t last_written = static_cast<std::size_t>(-1);
            std::string snapshot_error;
            const SnapshotSink sink = [&](const BodySnapshot& body, double t, std::size_t k) {
                if (spec.snapshot_every == 0 || k % spec.snapshot_every != 0) return;
                std::ofstream os(out.directory / ("snapshot_" + std::to_string(k) + ".txt"));
                if (!os) snapshot_error = "cannot write snapshot in " + out.directory.string();
                write_snapshot(os, body, t);
                last_written = k;
            };
            auto result = run(u0, spec.flow, sink);
            if (!snapshot_error.empty()) throw detail::IoFailure(snapshot_error);
            for (const auto& rec : result.final.history) write_diagnostics_row(diag, rec);
            if (!diag) throw detail::IoFailure("write failed for " + (out.directory / "diagnostics.csv").string());
            const std::size_t final_k = result.final.history.size() - 1;
            if (spec.snapshot_every != 0 && last_written != final_k) {
                try {
                    auto os = detail::open_out(out.directory / ("snapshot_" + std::to_string(final_k) + ".txt"));
                    write_snapshot(os, make_snapshot(result.final.u), result.final.t);
                } catch (const ConvexityLost&) {
                }
            }
            const auto& last = result.final.history.back();
            out.outcome = to_string(result.outcome);
            summary << "task: flow\n"
                    << "outcome: " << out.outcome << '\n'
                    << "final_residual: " << last.residual_max << '\n'
                    << "final_ratio_R: " << last.ratio_R << '\n'
                    << "final_t: " << result.final.t << '\n'
                    << "steps: " << result.final.step_index << '\n'
                    << "phi0: " << result.final.phi0 << '\n'
                    << "max_J_alpha_rise_rate: " << result.final.monotonicity.max_J_alpha_rise_rate << '\n'
                    << "step_collapse: " << (result.step_collapse ? "yes" : "no") << '\n';
            if (!result.message.empty()) summary << "message: " << result.message << '\n';
            out.flow = std::move(result);
        } else if (spec.task == ScenarioTask::duality) {
            const auto rep = duality_report(build_initial(spec, grid));
            auto diag = detail::open_out(out.directory / "diagnostics.csv");
            diag << std::setprecision(17) << "N,product_deviation,involution_defect,roundtrip_error\n"
                 << spec.N << ',' << rep.product_deviation << ',' << rep.involution_defect << ','
                 << rep.roundtrip_error << '\n';
            const bool ok = rep.product_deviation <= 5e-3 && rep.involution_defect <= 2e-3 && rep.roundtrip_error <= 1e-3;
            out.outcome = ok ? "pass" : "fail";
            summary << "task: duality\noutcome: " << out.outcome << "\nproduct_deviation: " << rep.product_deviation
                    << "\ninvolution_defect: " << rep.involution_defect << "\nroundtrip_error: " << rep.roundtrip_error
                    << '\n';
        } else {
            const auto rep = aleksandrov_check(spec.flow.f, *grid);
            auto diag = detail::open_out(out.directory / "diagnostics.csv");
            diag << std::setprecision(17) << "cdt1_error,cdt2_ok,worst_window_lo,worst_window_hi,worst_margin,partial\n"
                 << rep.cdt1_error << ',' << (rep.cdt2_ok ? 1 : 0) << ',' << rep.worst_window.first << ','
                 << rep.worst_window.second << ',' << rep.worst_margin << ',' << (rep.partial ? 1 : 0) << '\n';
            out.outcome = rep.cdt1_error < 1e-8 && rep.cdt2_ok ? "pass" : "fail";
            summary << "task: aleksandrov\noutcome: " << out.outcome << "\ncdt1_error: " << rep.cdt1_error
                    << "\ncdt2_ok: " << (rep.cdt2_ok ? "yes" : "no") << "\nworst_window: " << rep.worst_window.first
                    << ' ' << rep.worst_window.second << "\nworst_margin: " << rep.worst_margin << '\n';
        }
        out.wall_seconds = seconds();
        const bool met = detail::expectation_met(spec.expect, out.outcome);
        out.exit_status = met ? 0 : 1;
        summary << "expected: " << detail::to_string(spec.expect) << '\n'
                << "status: " << (met ? "as expected" : "unexpected") << '\n'
                << "wall_time_s: " << std::setprecision(4) << out.wall_seconds << '\n';
        auto os = detail::open_out(out.directory / "summary.txt");
        os << summary.str();
        if (!os) throw detail::IoFailure("write failed for " + (out.directory / "summary.txt").string());
        if (!met) out.message = "outcome " + out.outcome + " but expected " + detail::to_string(spec.expect);
    } catch (const detail::IoFailure& e) {
        out.exit_status = 3;
        out.message = e.what();
        out.wall_seconds = seconds();
    }
    return out;
}

// ---------------------------------------------------------------------------

struct CatalogEntry {
    const char* name;
    const char* text;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries{
        {"thm_A_isotropic", R"(# isotropic flow with alpha = n+1 from an ellipse
[scenario]
name = thm_A_isotropic
n = 1
N = 512
initial = ellipse 2 1
expect = converged

[flow]
alpha = 2
f = const 1
phi0_rule = aleksandrov
t_max = 15
record_every = 200
)"},
        {"thm_A_alpha_gt", R"(# alpha > n+1: the solution stays between two shrinking/expanding circles
[scenario]
name = thm_A_alpha_gt
initial = ellipse 2 1
expect = converged

[flow]
alpha = 4
f = const 1
phi0_rule = bracket
t_max = 15
record_every = 200
)"},
        {"thm_B_anisotropic", R"([scenario]
name = thm_B_anisotropic
initial = ellipse 2 1
expect = converged

[flow]
alpha = 4
f = fourier 1 0 0 0.2 0
phi0_rule = bracket
t_max = 40
record_every = 200
)"},
        {"thm_C_aleksandrov", R"(# alpha = n+1 with a non-even f of total mass 2 pi
[scenario]
name = thm_C_aleksandrov
initial = ellipse 2 1
expect = converged

[flow]
alpha = 2
f = fourier 1 0 0.2 0.3 0
phi0_rule = aleksandrov
t_max = 20
residual_tol = 1e-5
record_every = 500
)"},
        {"thm_Da_symmetric", R"(# alpha < n+1, even f, origin-symmetric data
[scenario]
name = thm_Da_symmetric
N = 768
initial = fourier 1 0 0 0.05 0 0 0 0.01 0
expect = converged

[flow]
alpha = 0.5
f = fourier 1 0 0 0.3 0
phi0_rule = iq_matching
t_max = 10
residual_tol = 5e-5
record_every = 1000
)"},
        {"thm_D_counterexample", R"(# origin close to the boundary, no normalization
[scenario]
name = thm_D_counterexample
initial = shifted_disk 0.8
expect = blowup

[flow]
alpha = 0
f = const 1
mode = raw
t_max = 10
record_every = 100
)"},
        {"lemma_2_2_monotonicity", R"(# Gauss curvature flow, data rescaled to the area of the unit disk
[scenario]
name = lemma_2_2_monotonicity
initial = fourier 1 0 0 0.05 0 0 0 0.01 0
expect = timeout

[flow]
alpha = 0
f = const 1
phi0_rule = volume
t_max = 3
record_every = 500
)"},
        {"duality_identities", R"([scenario]
name = duality_identities
task = duality
initial = ellipse 2 1
expect = pass
)"},
        {"aleksandrov_checker_demo", R"(# 95% of the mass of f on an arc of length 0.1
[scenario]
name = aleksandrov_checker_demo
task = aleksandrov
expect = fail

[flow]
f = bump 1 0.1 0.95
)"},
    };
    return entries;
}

inline std::vector<std::string> catalog() {
    std::vector<std::string> names;
    for (const auto& e : catalog_entries()) names.emplace_back(e.name);
    return names;
}

inline std::optional<std::string> catalog_text(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (name == e.name) return std::string(e.text);
    return std::nullopt;
}

}  // namespace gcflow
