#include "nsgadyn/experiment.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nsgadyn {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view text)
{
    std::vector<std::string_view> items;
    text = trim(text);
    if (text.empty())
        return items;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        items.push_back(trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                  : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return items;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        bad_value(key, text);
    return value;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "1" || text == "true" || text == "yes" || text == "on")
        return true;
    if (text == "0" || text == "false" || text == "no" || text == "off")
        return false;
    bad_value(key, text);
}

SortingPolicy parse_variant(std::string_view text)
{
    if (text == "random")
        return SortingPolicy::RandomTies;
    if (text == "fixed")
        return SortingPolicy::FixedShared;
    bad_value("variant", text);
}

SelectionMode parse_selection(std::string_view text)
{
    if (text == "fair")
        return SelectionMode::Fair;
    if (text == "uniform")
        return SelectionMode::Uniform;
    if (text == "tournament")
        return SelectionMode::BinaryTournament;
    bad_value("selection", text);
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view text, Parse parse)
{
    std::vector<T> out;
    for (auto item : split_list(text))
        out.push_back(parse(item));
    return out;
}

std::string benchmark_name(BenchmarkKind kind)
{
    return kind == BenchmarkKind::OneJumpZeroJump ? "ojzj" : "omm";
}

} // namespace

void ExperimentConfig::set(std::string_view raw_key, std::string_view value)
{
    std::string key(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    value = trim(value);

    if (key == "benchmark") {
        if (value == "ojzj" || value == "onejumpzerojump")
            benchmark = BenchmarkKind::OneJumpZeroJump;
        else if (value == "omm" || value == "oneminmax")
            benchmark = BenchmarkKind::OneMinMax;
        else
            bad_value(key, value);
    } else if (key == "n") {
        n = parse_list<int>(value, [&](std::string_view s) { return parse_number<int>(key, s); });
    } else if (key == "k") {
        k = parse_list<int>(value, [&](std::string_view s) { return parse_number<int>(key, s); });
    } else if (key == "pop_factor") {
        pop_factors = parse_list<double>(value, [&](std::string_view s) { return parse_number<double>(key, s); });
        pop_sizes.clear();
        population_axis = PopulationAxis::Factor;
    } else if (key == "pop_size") {
        pop_sizes = parse_list<std::size_t>(value,
                                            [&](std::string_view s) { return parse_number<std::size_t>(key, s); });
        pop_factors.clear();
        population_axis = PopulationAxis::Size;
    } else if (key == "variant") {
        variants = parse_list<SortingPolicy>(value, parse_variant);
    } else if (key == "selection") {
        selections = parse_list<SelectionMode>(value, parse_selection);
    } else if (key == "reps") {
        reps = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
        seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "max_iters") {
        max_iterations = parse_number<std::uint64_t>(key, value);
    } else if (key == "out") {
        out_dir = std::string(value);
    } else if (key == "dynamics") {
        dynamics = parse_bool(key, value);
    } else if (key == "survival") {
        survival = parse_bool(key, value);
    } else if (key == "workers") {
        workers = parse_number<unsigned>(key, value);
    } else if (key == "mu") {
        mu = parse_number<double>(key, value);
    } else {
        throw std::invalid_argument("unknown option '" + std::string(raw_key) + "'");
    }
}

void ExperimentConfig::load_json_text(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("config must be a JSON object");
    auto scalar = [](const nlohmann::json& v) -> std::string {
        if (v.is_string())
            return v.get<std::string>();
        if (v.is_boolean())
            return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer())
            return std::to_string(v.get<std::int64_t>());
        if (v.is_number())
            return v.dump();
        throw std::invalid_argument("unsupported config value " + v.dump());
    };
    for (const auto& [key, value] : doc.items()) {
        if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty())
                    joined += ',';
                joined += scalar(item);
            }
            set(key, joined);
        } else {
            set(key, scalar(value));
        }
    }
}

void ExperimentConfig::load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    load_json_text(buffer.str());
}

void ExperimentConfig::validate() const
{
    if (population_axis == PopulationAxis::Unset)
        throw std::invalid_argument("one of pop-factor and pop-size must be given");
    if (reps < 1)
        throw std::invalid_argument("reps must be at least 1");
    if (max_iterations && *max_iterations < 1)
        throw std::invalid_argument("max-iters must be at least 1");
    for (double c : pop_factors)
        if (!(c > 0.0))
            throw std::invalid_argument("pop-factor must be positive");
    for (auto N : pop_sizes)
        if (N < 1)
            throw std::invalid_argument("pop-size must be at least 1");
}

unsigned ExperimentConfig::resolved_workers() const
{
    if (workers > 0)
        return workers;
    if (const char* env = std::getenv("NSGADYN_WORKERS")) {
        unsigned value = 0;
        std::string_view text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0)
            return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t default_max_iterations(const BenchmarkSpec& spec)
{
    const double n = spec.n;
    const double budget = spec.is_jump() ? 100.0 * std::pow(n, spec.k) : 100.0 * n * std::log(n);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(budget)));
}

std::vector<CellSpec> expand_grid(const ExperimentConfig& config)
{
    std::vector<CellSpec> cells;
    const bool jump = config.benchmark == BenchmarkKind::OneJumpZeroJump;
    const std::vector<int> ks = jump ? config.k : std::vector<int>{0};
    const bool by_factor = config.population_axis == ExperimentConfig::PopulationAxis::Factor;
    const std::size_t pops = by_factor ? config.pop_factors.size() : config.pop_sizes.size();

    for (int n : config.n)
        for (int k : ks)
            for (std::size_t p = 0; p < pops; ++p)
                for (auto variant : config.variants)
                    for (auto selection : config.selections) {
                        CellSpec cell;
                        cell.id = cells.size();
                        cell.variant = variant;
                        cell.selection = selection;
                        cell.benchmark.kind = config.benchmark;
                        cell.benchmark.n = n;
                        cell.benchmark.k = k;
                        try {
                            cell.benchmark = jump ? BenchmarkSpec::one_jump_zero_jump(n, k)
                                                  : BenchmarkSpec::one_min_max(n);
                            const auto front = static_cast<double>(cell.benchmark.front_size());
                            if (!by_factor) {
                                cell.population_size = config.pop_sizes[p];
                                cell.pop_factor = static_cast<double>(cell.population_size) / front;
                            } else {
                                cell.pop_factor = config.pop_factors[p];
                                cell.population_size = static_cast<std::size_t>(std::llround(cell.pop_factor * front));
                            }
                            if (cell.population_size < 1)
                                throw std::invalid_argument("population size rounds to zero");
                            cell.max_iterations = config.max_iterations.value_or(default_max_iterations(cell.benchmark));
                        } catch (const std::invalid_argument& e) {
                            cell.error = e.what();
                        }
                        cells.push_back(std::move(cell));
                    }
    return cells;
}

std::uint64_t repetition_seed(std::uint64_t root_seed, std::size_t rep) noexcept
{
    return RandomSource::derive_seed(root_seed, rep);
}

EvaluationStats evaluation_stats(const std::vector<RepRecord>& reps)
{
    EvaluationStats stats;
    std::vector<std::uint64_t> evals;
    for (const auto& r : reps)
        if (r.result.covered)
            evals.push_back(r.result.evaluations);
    stats.covered = evals.size();
    if (evals.empty())
        return stats;
    std::sort(evals.begin(), evals.end());
    double sum = 0.0;
    for (auto e : evals)
        sum += static_cast<double>(e);
    stats.mean = sum / static_cast<double>(evals.size());
    if (evals.size() > 1) {
        double sq = 0.0;
        for (auto e : evals)
            sq += (static_cast<double>(e) - stats.mean) * (static_cast<double>(e) - stats.mean);
        stats.stddev = std::sqrt(sq / static_cast<double>(evals.size() - 1));
    }
    const std::size_t mid = evals.size() / 2;
    stats.median = evals.size() % 2 ? static_cast<double>(evals[mid])
                                    : 0.5 * (static_cast<double>(evals[mid - 1]) + static_cast<double>(evals[mid]));
    stats.min = evals.front();
    stats.max = evals.back();
    return stats;
}

namespace {

void aggregate(AggregateResult& agg, const ExperimentConfig& config)
{
    agg.stats = evaluation_stats(agg.reps);
    for (const auto& r : agg.reps)
        if (!r.result.covered)
            agg.uncovered_reps.push_back(r.rep);

    const auto& spec = agg.cell.benchmark;
    agg.theory = theory_bounds(spec.n, spec.k, agg.cell.pop_factor, spec.is_jump() ? config.mu
                                                                                  : config.mu.value_or(0.0));
    agg.lb_evals = spec.is_jump() ? agg.theory->lb_ojzj_evals : agg.theory->lb_omm_evals.value_or(0.0);
    agg.ratio = agg.lb_evals > 0.0 ? agg.stats.mean / agg.lb_evals : 0.0;
    agg.above_lower_bound = agg.stats.covered > 0 && agg.stats.mean >= agg.lb_evals;

    agg.mean_occupation.assign(static_cast<std::size_t>(spec.n) + 1, 0.0);
    for (const auto& r : agg.reps) {
        if (!r.result.dynamics)
            continue;
        const auto& d = *r.result.dynamics;
        if (d.survival_zero_crowding)
            agg.survival += *d.survival_zero_crowding;
        if (!d.valid_window)
            continue;
        ++agg.reps_with_window;
        for (std::size_t i = 0; i < agg.mean_occupation.size(); ++i)
            agg.mean_occupation[i] += d.mean_occupation[i];
    }
    if (agg.reps_with_window > 0)
        for (auto& v : agg.mean_occupation)
            v /= static_cast<double>(agg.reps_with_window);
}

} // namespace

std::vector<AggregateResult> run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto cells = expand_grid(config);

    std::vector<AggregateResult> results(cells.size());
    struct Job {
        std::size_t cell;
        std::size_t rep;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        results[c].cell = cells[c];
        if (!cells[c].error.empty())
            continue;
        results[c].reps.resize(config.reps);
        for (std::size_t r = 0; r < config.reps; ++r)
            jobs.push_back({c, r});
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_lock;
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            const auto [c, r] = jobs[j];
            const auto& cell = cells[c];
            RunConfig rc;
            rc.benchmark = cell.benchmark;
            rc.population_size = cell.population_size;
            rc.sorting = cell.variant;
            rc.selection = cell.selection;
            rc.max_iterations = cell.max_iterations;
            rc.seed = repetition_seed(config.seed, r);
            rc.record_dynamics = config.dynamics;
            rc.probe_survival = config.survival;
            auto& slot = results[c].reps[r];
            slot.rep = r;
            slot.seed = rc.seed;
            try {
                slot.result = run(rc);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_lock);
                results[c].cell.error = e.what();
            }
        }
    };
    const unsigned count = std::min<std::size_t>(config.resolved_workers(), std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < count; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    for (auto& agg : results) {
        if (!agg.cell.error.empty()) {
            agg.reps.clear();
            continue;
        }
        aggregate(agg, config);
    }
    return results;
}

namespace {

void write_cell_prefix(std::ostream& os, const CellSpec& cell)
{
    os << cell.benchmark.n << ',';
    if (cell.benchmark.is_jump())
        os << cell.benchmark.k;
    os << ',' << cell.population_size << ',' << to_string(cell.variant) << ',' << to_string(cell.selection);
}

} // namespace

void write_runs_csv(std::ostream& os, const std::vector<AggregateResult>& results)
{
    os << kRunsHeader << '\n';
    for (const auto& agg : results)
        for (const auto& r : agg.reps) {
            os << agg.cell.id << ',' << r.seed << ',';
            write_cell_prefix(os, agg.cell);
            os << ',' << (r.result.covered ? 1 : 0) << ',' << r.result.iterations << ',' << r.result.evaluations
               << '\n';
        }
}

void write_dynamics_csv(std::ostream& os, const std::vector<AggregateResult>& results)
{
    os << kDynamicsHeader << '\n';
    const auto flags = os.flags();
    os << std::fixed << std::setprecision(6);
    for (const auto& agg : results) {
        const auto& spec = agg.cell.benchmark;
        const int lo = spec.is_jump() ? spec.k : 0;
        const int hi = spec.is_jump() ? spec.n - spec.k : spec.n;
        for (const auto& r : agg.reps) {
            if (!r.result.dynamics)
                continue;
            const auto& d = *r.result.dynamics;
            for (int level = lo; level <= hi; ++level)
                os << agg.cell.id << ',' << r.rep << ',' << level << ',' << d.at(level) << ','
                   << d.retained_snapshots << '\n';
        }
    }
    os.flags(flags);
}

void write_sweep_csv(std::ostream& os, const std::vector<AggregateResult>& results)
{
    os << kSweepHeader << '\n';
    const auto flags = os.flags();
    for (const auto& agg : results) {
        if (!agg.cell.error.empty())
            continue;
        os << agg.cell.id << ',';
        write_cell_prefix(os, agg.cell);
        os << ',' << agg.reps.size() << std::fixed << std::setprecision(3) << ',' << agg.stats.mean << ','
           << agg.stats.stddev << ',' << agg.lb_evals << std::setprecision(6) << ',' << agg.ratio << '\n';
        os.flags(flags);
    }
}

void write_outputs(const std::string& dir, const std::vector<AggregateResult>& results, bool dynamics, bool sweep)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
    auto emit = [&](const char* name, auto writer) {
        const auto path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        writer(out, results);
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
    };
    emit("runs.csv", write_runs_csv);
    if (dynamics)
        emit("dynamics.csv", write_dynamics_csv);
    if (sweep)
        emit("sweep.csv", write_sweep_csv);
}

std::string format_report(const std::vector<AggregateResult>& results)
{
    std::ostringstream os;
    for (const auto& agg : results) {
        const auto& cell = agg.cell;
        const auto& spec = cell.benchmark;
        os << "cell " << cell.id << ": " << benchmark_name(spec.kind) << " n=" << spec.n;
        if (spec.is_jump())
            os << " k=" << spec.k;
        os << " N=" << cell.population_size << " (c=" << cell.pop_factor << ") variant=" << to_string(cell.variant)
           << " selection=" << to_string(cell.selection) << '\n';
        if (!cell.error.empty()) {
            os << "  error: " << cell.error << '\n';
            continue;
        }
        const auto& s = agg.stats;
        os << std::fixed << std::setprecision(1);
        os << "  covered " << s.covered << "/" << agg.reps.size() << "  mean " << s.mean << "  median " << s.median
           << "  std " << s.stddev << "  min " << s.min << "  max " << s.max << '\n';
        if (!agg.uncovered_reps.empty()) {
            os << "  uncovered reps:";
            for (auto r : agg.uncovered_reps)
                os << ' ' << r;
            os << '\n';
        }
        if (agg.lb_evals > 0.0) {
            os << "  lower bound " << agg.lb_evals << "  ratio " << std::setprecision(3) << agg.ratio
               << (agg.above_lower_bound ? "  (mean above bound)" : "  (mean NOT above bound)") << '\n';
        }
        if (agg.theory && spec.is_jump() && cell.variant == SortingPolicy::FixedShared)
            os << std::setprecision(1) << "  fixed-sorting runtime estimate " << agg.theory->rt_fixed_evals
               << "  ratio " << std::setprecision(3) << agg.stats.mean / agg.theory->rt_fixed_evals << '\n';
        if (agg.reps_with_window > 0) {
            const int lo = spec.is_jump() ? spec.k : 0;
            const int hi = spec.is_jump() ? spec.n - spec.k : spec.n;
            os << std::setprecision(3) << "  occupation (ones-count " << lo << ".." << hi << ", "
               << agg.reps_with_window << " reps with valid window): level " << lo << " = "
               << agg.mean_occupation[static_cast<std::size_t>(lo)] << ", level " << hi << " = "
               << agg.mean_occupation[static_cast<std::size_t>(hi)] << "; reference "
               << (cell.variant == SortingPolicy::RandomTies ? agg.theory->occ_extremal_random
                                                             : agg.theory->occ_extremal_fixed)
               << '\n';
        }
        if (agg.survival.observed > 0)
            os << std::setprecision(4) << "  zero-crowding survival frequency " << agg.survival.frequency() << " ("
               << agg.survival.survived << "/" << agg.survival.observed << ")\n";
        os << std::defaultfloat << std::setprecision(6);
    }
    if (!results.empty())
        os << "(" << kAsymptoticLabel << ")\n";
    return os.str();
}

std::vector<VerificationReport> run_verification(const VerifyOptions& options)
{
    if (options.n_max < 2 || options.n_max > TransitionMatrix::kMaxN)
        throw std::invalid_argument("verify needs 2 <= n_max <= 64");
    MatrixProvider matrices = transition_matrix;
    if (options.fault) {
        const auto fault = *options.fault;
        matrices = [fault](int n) {
            auto m = transition_matrix(n);
            if (n == fault.n)
                m.perturb(fault.v, fault.w, fault.delta);
            return m;
        };
    }
    std::vector<VerificationReport> reports;
    reports.push_back(verify_ascent_bound(options.n_max, matrices));
    reports.push_back(verify_level_change_bound(options.n_max, matrices));
    reports.push_back(verify_stochastic(TransitionMatrix::kMaxN, matrices));
    reports.push_back(verify_rank_oracle(options.trials, 64, 16, options.seed));
    reports.push_back(verify_crowding_structure(options.trials, options.seed));
    return reports;
}

std::string verification_json(const std::vector<VerificationReport>& reports)
{
    nlohmann::json doc;
    bool all = true;
    doc["checks"] = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json entry{{"name", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"seconds", r.seconds}};
        entry["violations"] = nlohmann::json::array();
        for (const auto& v : r.violations)
            entry["violations"].push_back(
                {{"witness", v.detail}, {"n", v.n}, {"v", v.v}, {"u", v.u}, {"s", v.s}, {"value", v.value},
                 {"bound", v.bound}});
        all = all && r.passed();
        doc["checks"].push_back(std::move(entry));
    }
    doc["passed"] = all;
    return doc.dump(2);
}

} // namespace nsgadyn
