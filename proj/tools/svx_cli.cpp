// svx: run singular value extraction experiments and write CSV reports.
//
//   svx run --n 400 --r 50 --methods GN,RR --bounds weyl,forward --out gn.csv
//   svx figdata --out-dir data
//   svx selftest
//
// Exit status: 0 on success, 1 if any bound was violated, 2 on a bad configuration.

#include "svx/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

void print_summary(const svx::ExperimentReport& rep, std::ostream& log)
{
    for (const auto& t : rep.trials) {
        if (t.failed) {
            log << "trial " << t.trial << ": failed (" << t.failure << ")\n";
            continue;
        }
        for (const auto& run : t.runs)
            log << "trial " << t.trial << ' ' << svx::to_string(run.method) << ": passes=" << run.passes
                << " matmuls=" << run.matmuls << " time=" << run.seconds << "s\n";
    }
    for (const auto& v : rep.violations)
        log << "VIOLATION trial " << v.trial << ' ' << svx::to_string(v.method) << " i=" << v.i << ' '
            << svx::to_string(v.bound) << ": error " << v.error << " > bound " << v.value << '\n';
    for (const auto& v : rep.heuristic_misses)
        log << "note: improved bound below error, trial " << v.trial << " i=" << v.i << " ("
            << v.error << " > " << v.value << ")\n";
    if (!svx::verify_pass_counts(rep))
        log << "VIOLATION pass/matmul counts differ from the expected access pattern\n";
}

bool report_ok(const svx::ExperimentReport& rep)
{
    return rep.violations.empty() && svx::verify_pass_counts(rep);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Singular value extraction from approximate subspaces"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one experiment and write its CSV");
    std::map<std::string, std::string> settings;
    std::string config_path;
    std::string out_path;
    const svx::ExperimentConfig defaults;
    auto flag = [&](const char* name, const std::string& help) {
        run->add_option_function<std::string>(
            std::string("--") + name, [&settings, name](const std::string& v) { settings[name] = v; },
            help);
    };
    flag("m", "rows of A (default " + std::to_string(defaults.m) + ")");
    flag("n", "columns of A (default " + std::to_string(defaults.n) + ")");
    flag("r", "target rank (default " + std::to_string(defaults.r) + ")");
    flag("ell", "oversampling of the left subspace (default 0)");
    flag("decay", "singular value decay: exponential|algebraic (default exponential)");
    flag("q", "products with A per side when sketching (default 1)");
    flag("seed", "base seed (default 1)");
    flag("trials", "number of trials (default 1)");
    flag("methods", "comma list of RR,SVD,GN,HMT (default all)");
    flag("bounds", "comma list of weyl,forward,backward,backward_approx,improved (default weyl,forward)");
    flag("subspaces", "sketched|exact|random (default sketched)");
    run->add_option("--config", config_path, "key=value file applied before the flags");
    run->add_option("--out", out_path, "CSV output path (default stdout)");
    bool serial = false;
    app.add_flag("--serial", serial, "run trials one after another");

    // figdata
    auto* figdata = app.add_subcommand("figdata", "write one CSV per plotting preset (n = m = 400, r = 50)");
    std::string out_dir = ".";
    std::uint64_t fig_seed = 1;
    std::size_t fig_trials = 1;
    figdata->add_option("--out-dir", out_dir, "directory for <preset>.csv files")->capture_default_str();
    figdata->add_option("--seed", fig_seed, "base seed")->capture_default_str();
    figdata->add_option("--trials", fig_trials, "trials per preset")->capture_default_str();

    app.add_subcommand("selftest", "run the built-in invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    const svx::RunOptions options{!serial};

    try {
        if (run->parsed()) {
            svx::ExperimentConfig cfg;
            if (!config_path.empty())
                svx::apply_config_file(cfg, config_path);
            for (const auto& [key, value] : settings)
                svx::apply_setting(cfg, key, value);
            cfg.validate();

            const svx::ExperimentReport rep = svx::run_experiment(cfg, options);
            if (out_path.empty())
                svx::write_csv(rep, std::cout);
            else
                svx::emit_csv(rep, out_path);
            print_summary(rep, std::cerr);
            return report_ok(rep) ? 0 : kExitViolation;
        }
        if (figdata->parsed()) {
            std::filesystem::create_directories(out_dir);
            bool ok = true;
            for (const auto& preset : svx::figure_presets(fig_seed, fig_trials)) {
                const auto path = std::filesystem::path(out_dir) / (preset.name + ".csv");
                const svx::ExperimentReport rep = svx::run_experiment(preset.config, options);
                svx::emit_csv(rep, path);
                std::cerr << preset.name << ": " << preset.description << " -> " << path.string() << '\n';
                print_summary(rep, std::cerr);
                ok = ok && report_ok(rep);
            }
            return ok ? 0 : kExitViolation;
        }
        return svx::run_selftest(std::cout) ? 0 : kExitViolation;
    } catch (const svx::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
}
