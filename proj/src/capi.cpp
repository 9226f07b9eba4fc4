#include "nsgadyn/nsgadyn.h"

#include "nsgadyn/experiment.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

using namespace nsgadyn;

struct nd_config {
    ExperimentConfig config;
};

struct nd_result {
    std::vector<AggregateResult> cells;
    bool dynamics = false;
    std::string report;
};

struct nd_verification {
    std::vector<VerificationReport> reports;
    std::string text;
    std::string json;
    bool passed = false;
};

namespace {

thread_local std::string last_error;

nd_status fail(nd_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

template <typename F>
nd_status guarded(F&& body)
{
    try {
        last_error.clear();
        return body();
    } catch (const std::invalid_argument& e) {
        return fail(ND_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(ND_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(ND_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ND_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ND_ERR_INTERNAL, e.what());
    }
}

nd_status null_argument(const char* name) { return fail(ND_ERR_INVALID_ARGUMENT, std::string(name) + " is null"); }

nd_status make_result(const ExperimentConfig& config, nd_result** out)
{
    auto result = std::make_unique<nd_result>();
    result->cells = run_experiment(config);
    result->dynamics = config.dynamics;
    result->report = format_report(result->cells);
    *out = result.release();
    return ND_OK;
}

} // namespace

extern "C" {

const char* nd_version(void) { return "0.1.0"; }

const char* nd_last_error(void) { return last_error.c_str(); }

nd_status nd_config_create(nd_config** out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = new nd_config();
        return ND_OK;
    });
}

void nd_config_destroy(nd_config* config) { delete config; }

nd_status nd_config_set(nd_config* config, const char* key, const char* value)
{
    if (!config || !key || !value)
        return null_argument("config, key or value");
    return guarded([&] {
        config->config.set(key, value);
        return ND_OK;
    });
}

nd_status nd_config_load_file(nd_config* config, const char* path)
{
    if (!config || !path)
        return null_argument("config or path");
    return guarded([&] {
        config->config.load_json_file(path);
        return ND_OK;
    });
}

nd_status nd_config_cell_count(const nd_config* config, size_t* out)
{
    if (!config || !out)
        return null_argument("config or out");
    return guarded([&] {
        *out = expand_grid(config->config).size();
        return ND_OK;
    });
}

const char* nd_config_out_dir(const nd_config* config) { return config ? config->config.out_dir.c_str() : ""; }

nd_status nd_run(const nd_config* config, nd_result** out)
{
    if (!config || !out)
        return null_argument("config or out");
    return guarded([&] {
        config->config.validate();
        const auto cells = expand_grid(config->config);
        if (cells.size() != 1)
            return fail(ND_ERR_INVALID_ARGUMENT,
                        "run needs exactly one value per axis (got " + std::to_string(cells.size()) +
                            " cells); use sweep for grids");
        if (!cells.front().error.empty())
            return fail(ND_ERR_INVALID_ARGUMENT, cells.front().error);
        return make_result(config->config, out);
    });
}

nd_status nd_sweep(const nd_config* config, nd_result** out)
{
    if (!config || !out)
        return null_argument("config or out");
    return guarded([&] { return make_result(config->config, out); });
}

void nd_result_destroy(nd_result* result) { delete result; }

size_t nd_result_cell_count(const nd_result* result) { return result ? result->cells.size() : 0; }

nd_status nd_result_cell(const nd_result* result, size_t cell, nd_cell_summary* out)
{
    if (!result || !out)
        return null_argument("result or out");
    if (cell >= result->cells.size())
        return fail(ND_ERR_INVALID_ARGUMENT, "cell index out of range");
    const auto& agg = result->cells[cell];
    const auto& c = agg.cell;
    nd_cell_summary s{};
    s.cell_id = c.id;
    s.benchmark = c.benchmark.is_jump() ? 0 : 1;
    s.n = c.benchmark.n;
    s.k = c.benchmark.k;
    s.population_size = c.population_size;
    s.pop_factor = c.pop_factor;
    s.variant = c.variant == SortingPolicy::RandomTies ? 0 : 1;
    s.selection = static_cast<int>(c.selection);
    s.reps = agg.reps.size();
    s.covered = agg.stats.covered;
    s.mean_evals = agg.stats.mean;
    s.std_evals = agg.stats.stddev;
    s.median_evals = agg.stats.median;
    s.min_evals = agg.stats.min;
    s.max_evals = agg.stats.max;
    s.lb_evals = agg.lb_evals;
    s.ratio = agg.ratio;
    s.above_lower_bound = agg.above_lower_bound ? 1 : 0;
    s.failed = c.error.empty() ? 0 : 1;
    *out = s;
    return ND_OK;
}

const char* nd_result_cell_error(const nd_result* result, size_t cell)
{
    if (!result || cell >= result->cells.size())
        return "";
    return result->cells[cell].cell.error.c_str();
}

nd_status nd_result_rep(const nd_result* result, size_t cell, size_t rep, nd_rep_summary* out)
{
    if (!result || !out)
        return null_argument("result or out");
    if (cell >= result->cells.size() || rep >= result->cells[cell].reps.size())
        return fail(ND_ERR_INVALID_ARGUMENT, "cell or repetition index out of range");
    const auto& r = result->cells[cell].reps[rep];
    out->seed = r.seed;
    out->covered = r.result.covered ? 1 : 0;
    out->iterations = r.result.iterations;
    out->evaluations = r.result.evaluations;
    out->invariant_violations = r.result.trace.total_violations();
    return ND_OK;
}

nd_status nd_result_occupation(const nd_result* result, size_t cell, int ones_count, double* out, size_t* reps_out)
{
    if (!result || !out)
        return null_argument("result or out");
    if (cell >= result->cells.size())
        return fail(ND_ERR_INVALID_ARGUMENT, "cell index out of range");
    const auto& agg = result->cells[cell];
    if (ones_count < 0 || static_cast<std::size_t>(ones_count) >= agg.mean_occupation.size())
        return fail(ND_ERR_INVALID_ARGUMENT, "ones_count out of range");
    *out = agg.mean_occupation[static_cast<std::size_t>(ones_count)];
    if (reps_out)
        *reps_out = agg.reps_with_window;
    return ND_OK;
}

const char* nd_result_report(const nd_result* result) { return result ? result->report.c_str() : ""; }

nd_status nd_result_write(const nd_result* result, const char* dir, int with_sweep)
{
    if (!result || !dir)
        return null_argument("result or dir");
    return guarded([&] {
        write_outputs(dir, result->cells, result->dynamics, with_sweep != 0);
        return ND_OK;
    });
}

void nd_verify_options_init(nd_verify_options* options)
{
    if (!options)
        return;
    const VerifyOptions defaults;
    *options = nd_verify_options{};
    options->n_max = defaults.n_max;
    options->trials = defaults.trials;
    options->seed = defaults.seed;
}

nd_status nd_verify(const nd_verify_options* options, nd_verification** out)
{
    if (!options || !out)
        return null_argument("options or out");
    return guarded([&] {
        VerifyOptions opts;
        opts.n_max = options->n_max;
        opts.trials = options->trials;
        opts.seed = options->seed;
        if (options->fault_n > 0) {
            if (options->fault_v < 0 || options->fault_w < 0 || options->fault_v > options->fault_n ||
                options->fault_w > options->fault_n)
                return fail(ND_ERR_INVALID_ARGUMENT, "fault entry outside the matrix");
            opts.fault = VerifyOptions::Fault{options->fault_n, options->fault_v, options->fault_w,
                                              options->fault_delta};
        }
        auto v = std::make_unique<nd_verification>();
        v->reports = run_verification(opts);
        v->passed = true;
        for (const auto& r : v->reports) {
            v->text += r.text();
            v->passed = v->passed && r.passed();
        }
        v->json = verification_json(v->reports);
        *out = v.release();
        return ND_OK;
    });
}

int nd_verification_passed(const nd_verification* verification) { return verification && verification->passed; }

const char* nd_verification_text(const nd_verification* verification)
{
    return verification ? verification->text.c_str() : "";
}

const char* nd_verification_json(const nd_verification* verification)
{
    return verification ? verification->json.c_str() : "";
}

void nd_verification_destroy(nd_verification* verification) { delete verification; }

nd_status nd_theory_bounds(int n, int k, double c, int has_mu, double mu, nd_bounds* out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] {
        const auto b = theory_bounds(n, k, c, has_mu ? std::optional<double>(mu) : std::nullopt);
        nd_bounds r{};
        r.jump_population = b.jump_population;
        r.minmax_population = b.minmax_population;
        r.occ_extremal_random = b.occ_extremal_random;
        r.occ_extremal_fixed = b.occ_extremal_fixed;
        r.lb_ojzj_evals = b.lb_ojzj_evals;
        r.rt_fixed_evals = b.rt_fixed_evals;
        r.lb_omm_evals = b.lb_omm_evals.value_or(std::numeric_limits<double>::quiet_NaN());
        r.has_mu = b.lb_omm_evals ? 1 : 0;
        r.lower_bound_in_regime = b.lower_bound_in_regime;
        r.fixed_in_regime = b.fixed_in_regime;
        r.minmax_in_regime = b.minmax_in_regime;
        r.c_seq_length = b.c_seq.size();
        *out = r;
        return ND_OK;
    });
}

nd_status nd_theory_c_sequence(int n, int k, double c, double* values, size_t capacity, size_t* length)
{
    if (!length || (capacity > 0 && !values))
        return null_argument("values or length");
    return guarded([&] {
        const auto b = theory_bounds(n, k, c);
        *length = b.c_seq.size();
        for (std::size_t i = 0; i < capacity && i < b.c_seq.size(); ++i)
            values[i] = b.c_seq[i];
        return ND_OK;
    });
}

nd_status nd_theory_report(int n, int k, double c, int has_mu, double mu, char* buffer, size_t capacity,
                           size_t* needed)
{
    if (capacity > 0 && !buffer)
        return null_argument("buffer");
    return guarded([&] {
        const auto text = theory_bounds(n, k, c, has_mu ? std::optional<double>(mu) : std::nullopt).report();
        if (needed)
            *needed = text.size() + 1;
        if (capacity > 0) {
            const std::size_t count = std::min(capacity - 1, text.size());
            std::memcpy(buffer, text.data(), count);
            buffer[count] = '\0';
        }
        return ND_OK;
    });
}

} // extern "C"
