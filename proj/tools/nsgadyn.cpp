// nsgadyn command-line front end. Talks to the library only through the C API.

#include "nsgadyn/nsgadyn.h"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct ConfigDeleter {
    void operator()(nd_config* c) const { nd_config_destroy(c); }
};
struct ResultDeleter {
    void operator()(nd_result* r) const { nd_result_destroy(r); }
};
struct VerificationDeleter {
    void operator()(nd_verification* v) const { nd_verification_destroy(v); }
};

int report_error(const std::string& context)
{
    std::cerr << "nsgadyn: " << context << ": " << nd_last_error() << '\n';
    return kExitUsage;
}

// Experiment options shared by run and sweep. Values stay as text so that
// sweep axes can be comma-separated lists; the library parses them.
struct ExperimentFlags {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::unique_ptr<std::string>> storage;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    bool dynamics = false;
    bool survival = false;

    void add(CLI::App* app, const std::string& key, const std::string& help)
    {
        storage.push_back(std::make_unique<std::string>());
        options.emplace_back(key, app->add_option("--" + key, *storage.back(), help));
    }

    void attach(CLI::App* app, bool lists)
    {
        const std::string list_note = lists ? " (comma-separated list)" : "";
        app->add_option("--config", config_file, "JSON config file; flags override its values")
            ->check(CLI::ExistingFile);
        add(app, "benchmark", "ojzj or omm");
        add(app, "n", "problem size" + list_note);
        add(app, "k", "jump size" + list_note);
        add(app, "pop-factor", "population size as a multiple of the front size" + list_note);
        add(app, "pop-size", "explicit population size" + list_note);
        add(app, "variant", "random|fixed" + list_note);
        add(app, "selection", "fair|uniform|tournament" + list_note);
        add(app, "reps", "repetitions per cell");
        add(app, "seed", "root seed");
        add(app, "max-iters", "iteration cap per run");
        add(app, "out", "output directory for CSV files");
        add(app, "mu", "constant for the OneMinMax lower bound");
        add(app, "workers", "worker threads (default: NSGADYN_WORKERS or all cores)");
        app->add_flag("--dynamics", dynamics, "record occupation snapshots and write dynamics.csv");
        app->add_flag("--survival", survival, "probe survival of zero-crowding rank-1 members");
    }

    nd_config* build() const
    {
        nd_config* raw = nullptr;
        if (nd_config_create(&raw) != ND_OK)
            return nullptr;
        std::unique_ptr<nd_config, ConfigDeleter> config(raw);
        if (!config_file.empty() && nd_config_load_file(config.get(), config_file.c_str()) != ND_OK) {
            report_error("config file " + config_file);
            return nullptr;
        }
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (options[i].second->count() == 0)
                continue;
            if (nd_config_set(config.get(), options[i].first.c_str(), storage[i]->c_str()) != ND_OK) {
                report_error("--" + options[i].first);
                return nullptr;
            }
        }
        if ((dynamics && nd_config_set(config.get(), "dynamics", "true") != ND_OK) ||
            (survival && nd_config_set(config.get(), "survival", "true") != ND_OK)) {
            report_error("probe flags");
            return nullptr;
        }
        return config.release();
    }
};

int execute(const ExperimentFlags& flags, bool sweep)
{
    std::unique_ptr<nd_config, ConfigDeleter> config(flags.build());
    if (!config)
        return kExitUsage;

    nd_result* raw = nullptr;
    const nd_status status = sweep ? nd_sweep(config.get(), &raw) : nd_run(config.get(), &raw);
    if (status != ND_OK)
        return report_error(sweep ? "sweep" : "run");
    std::unique_ptr<nd_result, ResultDeleter> result(raw);

    std::cout << nd_result_report(result.get());
    for (std::size_t i = 0; i < nd_result_cell_count(result.get()); ++i) {
        const char* error = nd_result_cell_error(result.get(), i);
        if (*error)
            std::cerr << "nsgadyn: cell " << i << " skipped: " << error << '\n';
    }

    const std::string out = nd_config_out_dir(config.get());
    if (!out.empty()) {
        if (nd_result_write(result.get(), out.c_str(), sweep ? 1 : 0) != ND_OK)
            return report_error("writing " + out);
        std::cout << "wrote results to " << out << '\n';
    }
    return kExitOk;
}

std::optional<nd_verify_options> parse_fault(const std::string& text, nd_verify_options options)
{
    // n,v,w,delta
    std::istringstream in(text);
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(in >> options.fault_n >> c1 >> options.fault_v >> c2 >> options.fault_w >> c3 >> options.fault_delta) ||
        c1 != ',' || c2 != ',' || c3 != ',' || options.fault_n <= 0)
        return std::nullopt;
    return options;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"NSGA-II population dynamics simulator and bound checker"};
    app.set_version_flag("--version", nd_version());
    app.require_subcommand(1);

    ExperimentFlags run_flags;
    auto* run = app.add_subcommand("run", "run repetitions of a single configuration");
    run_flags.attach(run, false);

    ExperimentFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "run the cartesian grid over n, k, population, variant and selection");
    sweep_flags.attach(sweep, true);

    nd_verify_options verify_options;
    nd_verify_options_init(&verify_options);
    bool verify_json = false;
    std::string fault;
    auto* verify = app.add_subcommand("verify", "exhaustively check the transition bounds and structural oracles");
    verify->add_option("--n-max", verify_options.n_max, "largest n for the exhaustive bound checks")
        ->check(CLI::Range(2, 64));
    verify->add_option("--trials", verify_options.trials, "random cases for the structural checks");
    verify->add_option("--seed", verify_options.seed, "seed for the structural checks");
    verify->add_flag("--json", verify_json, "print the machine-readable record instead of text");
    verify->add_option("--inject-fault", fault, "perturb one matrix entry: n,v,w,delta")->group("");

    int bounds_n = 50;
    int bounds_k = 2;
    double bounds_c = 4.0;
    std::optional<double> bounds_mu;
    auto* bounds = app.add_subcommand("bounds", "print the closed-form constants for given parameters");
    bounds->add_option("--n", bounds_n, "problem size")->check(CLI::PositiveNumber);
    bounds->add_option("--k", bounds_k, "jump size; 0 for OneMinMax only")->check(CLI::NonNegativeNumber);
    bounds->add_option("--pop-factor,-c", bounds_c, "population factor c")->check(CLI::PositiveNumber);
    bounds->add_option("--mu", bounds_mu, "constant for the OneMinMax lower bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed())
        return execute(run_flags, false);
    if (sweep->parsed())
        return execute(sweep_flags, true);

    if (verify->parsed()) {
        if (!fault.empty()) {
            const auto parsed = parse_fault(fault, verify_options);
            if (!parsed) {
                std::cerr << "nsgadyn: --inject-fault expects n,v,w,delta\n";
                return kExitUsage;
            }
            verify_options = *parsed;
        }
        nd_verification* raw = nullptr;
        if (nd_verify(&verify_options, &raw) != ND_OK)
            return report_error("verify");
        std::unique_ptr<nd_verification, VerificationDeleter> result(raw);
        std::cout << (verify_json ? nd_verification_json(result.get()) : nd_verification_text(result.get()));
        if (verify_json)
            std::cout << '\n';
        return nd_verification_passed(result.get()) ? kExitOk : kExitVerification;
    }

    if (bounds->parsed()) {
        std::size_t needed = 0;
        const int has_mu = bounds_mu ? 1 : 0;
        const double mu = bounds_mu.value_or(0.0);
        if (nd_theory_report(bounds_n, bounds_k, bounds_c, has_mu, mu, nullptr, 0, &needed) != ND_OK)
            return report_error("bounds");
        std::string text(needed, '\0');
        nd_theory_report(bounds_n, bounds_k, bounds_c, has_mu, mu, text.data(), text.size(), &needed);
        text.resize(needed - 1);
        std::cout << text;
        return kExitOk;
    }
    return kExitUsage;
}
