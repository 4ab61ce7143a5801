// Command line front end: run scenario files or the built-in catalog.
//
//   gcflow run <config> | --builtin <name>
//   gcflow check <config> | --builtin <name>
//   gcflow catalog
//   gcflow show <name>
//   gcflow run-all [--jobs k]
//
// Exit status: 0 success, 1 unexpected outcome, 2 usage or parse error, 3 I/O error.

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gcflow/scenario.hpp"

extern char** environ;

namespace {

constexpr int kUnexpected = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

gcflow::ScenarioSpec load(const std::string& source, bool builtin) {
    if (builtin) {
        const auto text = gcflow::catalog_text(source);
        if (!text) throw gcflow::ConfigError(0, "no built-in scenario named '" + source + "'");
        return gcflow::parse_config(*text);
    }
    return gcflow::parse_config_file(source);
}

std::filesystem::path root_from(const std::string& flag) {
    return flag.empty() ? gcflow::output_root() : std::filesystem::path(flag);
}

int run_one(const gcflow::ScenarioSpec& spec, const std::filesystem::path& root) {
    const auto result = gcflow::run_scenario(spec, root);
    if (result.exit_status == kIo) {
        std::cerr << "gcflow: " << result.message << '\n';
        return kIo;
    }
    std::cout << spec.name << ": " << result.outcome << " (" << result.wall_seconds << " s) -> "
              << result.directory.string() << '\n';
    if (result.exit_status != 0) std::cerr << "gcflow: " << spec.name << ": " << result.message << '\n';
    return result.exit_status;
}

int run_all(unsigned jobs, const std::filesystem::path& root) {
    const auto names = gcflow::catalog();
    std::string self = "/proc/self/exe";
    std::error_code ec;
    if (const auto p = std::filesystem::read_symlink(self, ec); !ec) self = p.string();

    std::deque<std::string> pending(names.begin(), names.end());
    std::map<pid_t, std::string> running;
    int worst = 0;
    auto severity = [](int code) { return code == kIo ? 3 : code == kUsage ? 2 : code == kUnexpected ? 1 : 0; };
    auto finish = [&](pid_t pid, int status) {
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : kUnexpected;
        if (code != 0) std::cerr << "gcflow: " << running[pid] << " exited with status " << code << '\n';
        if (severity(code) > severity(worst)) worst = code;
        running.erase(pid);
    };
    while (!pending.empty() || !running.empty()) {
        while (!pending.empty() && running.size() < jobs) {
            const std::string name = pending.front();
            pending.pop_front();
            std::vector<std::string> args{self, "run", "--builtin", name, "--output-root", root.string()};
            std::vector<char*> argv;
            for (auto& a : args) argv.push_back(a.data());
            argv.push_back(nullptr);
            pid_t pid = 0;
            if (posix_spawn(&pid, self.c_str(), nullptr, nullptr, argv.data(), environ) != 0) {
                std::cerr << "gcflow: cannot start a worker for " << name << '\n';
                worst = kIo;
                continue;
            }
            running[pid] = name;
        }
        int status = 0;
        const pid_t pid = waitpid(-1, &status, 0);
        if (pid > 0) finish(pid, status);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gcflow: anisotropic Gauss curvature flow experiments"};
    app.require_subcommand(1);

    std::string source, root_flag;
    bool builtin = false;
    unsigned jobs = 1;

    auto* run = app.add_subcommand("run", "run a scenario and write diagnostics.csv, snapshots and summary.txt");
    run->add_option("config", source, "scenario file (or catalog name with --builtin)")->required();
    run->add_flag("--builtin", builtin, "treat the argument as a catalog name");
    run->add_option("--output-root", root_flag, "output root (default: $GCFLOW_OUTPUT_ROOT or ./gcflow_runs)");

    auto* check = app.add_subcommand("check", "parse and validate a scenario without running it");
    check->add_option("config", source, "scenario file (or catalog name with --builtin)")->required();
    check->add_flag("--builtin", builtin, "treat the argument as a catalog name");

    auto* list = app.add_subcommand("catalog", "list the built-in scenarios");

    auto* show = app.add_subcommand("show", "print the document of a built-in scenario");
    show->add_option("name", source, "catalog name")->required();

    auto* all = app.add_subcommand("run-all", "run every built-in scenario");
    all->add_option("--jobs,-j", jobs, "number of scenarios run in parallel processes")->check(CLI::Range(1u, 64u));
    all->add_option("--output-root", root_flag, "output root (default: $GCFLOW_OUTPUT_ROOT or ./gcflow_runs)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*list) {
            for (const auto& name : gcflow::catalog()) std::cout << name << '\n';
            return 0;
        }
        if (*show) {
            const auto text = gcflow::catalog_text(source);
            if (!text) {
                std::cerr << "gcflow: no built-in scenario named '" << source << "'\n";
                return kUsage;
            }
            std::cout << *text;
            return 0;
        }
        if (*check) {
            const auto spec = load(source, builtin);
            std::cout << spec.name << ": ok\n";
            return 0;
        }
        if (*run) return run_one(load(source, builtin), root_from(root_flag));
        if (*all) return run_all(jobs, root_from(root_flag));
    } catch (const gcflow::ConfigError& e) {
        std::cerr << "gcflow: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "gcflow: " << e.what() << '\n';
        return kUnexpected;
    }
    return kUsage;
}
