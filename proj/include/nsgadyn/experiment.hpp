#ifndef NSGADYN_EXPERIMENT_HPP
#define NSGADYN_EXPERIMENT_HPP

#include "nsgadyn/benchmarks.hpp"
#include "nsgadyn/dynamics.hpp"
#include "nsgadyn/engine.hpp"
#include "nsgadyn/oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsgadyn {

/// Experiment description. Every axis is a list; `run` uses one value per
/// axis, `sweep` takes the cartesian product. The population axis is either
/// pop_factors (N = c |F*|) or pop_sizes (explicit N), never both.
struct ExperimentConfig {
    BenchmarkKind benchmark = BenchmarkKind::OneJumpZeroJump;
    std::vector<int> n{50};
    std::vector<int> k{2};
    std::vector<double> pop_factors;
    std::vector<std::size_t> pop_sizes;
    enum class PopulationAxis { Unset, Factor, Size } population_axis = PopulationAxis::Unset;
    std::vector<SortingPolicy> variants{SortingPolicy::RandomTies};
    std::vector<SelectionMode> selections{SelectionMode::Fair};
    std::size_t reps = 10;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> max_iterations;
    std::string out_dir;
    bool dynamics = false;
    bool survival = false;
    unsigned workers = 0; ///< 0: NSGADYN_WORKERS, else hardware concurrency
    std::optional<double> mu;

    /// Sets one option from text; lists are comma separated. Keys match the
    /// CLI flags with '-' or '_' (n, k, pop-factor, pop-size, variant,
    /// selection, reps, seed, max-iters, out, dynamics, survival, workers,
    /// mu, benchmark). Setting pop-factor clears pop-size and vice versa.
    /// Throws std::invalid_argument on unknown keys or malformed values.
    void set(std::string_view key, std::string_view value);

    /// Applies every key of a JSON object via set().
    void load_json_text(std::string_view json);
    void load_json_file(const std::string& path);

    void validate() const;
    unsigned resolved_workers() const;
};

std::uint64_t default_max_iterations(const BenchmarkSpec& spec);

struct CellSpec {
    std::size_t id = 0;
    BenchmarkSpec benchmark;
    std::size_t population_size = 0;
    double pop_factor = 0.0; ///< N / |F*|
    SortingPolicy variant = SortingPolicy::RandomTies;
    SelectionMode selection = SelectionMode::Fair;
    std::uint64_t max_iterations = 0;
    std::string error; ///< non-empty when the cell's parameters are invalid
};

/// Cartesian product in the nesting order n, k, population, variant, selection.
std::vector<CellSpec> expand_grid(const ExperimentConfig& config);

struct RepRecord {
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    RunResult result;
};

struct EvaluationStats {
    std::size_t covered = 0;
    double mean = 0.0;
    double stddev = 0.0; ///< sample standard deviation
    double median = 0.0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;
};

struct AggregateResult {
    CellSpec cell;
    std::vector<RepRecord> reps;
    EvaluationStats stats; ///< over covered repetitions only
    std::vector<std::size_t> uncovered_reps;
    std::optional<TheoryBounds> theory;
    double lb_evals = 0.0;
    double ratio = 0.0; ///< mean / lb_evals
    bool above_lower_bound = false;

    std::vector<double> mean_occupation; ///< mean over reps with a valid window of per-run means
    std::size_t reps_with_window = 0;
    SurvivalCounters survival;           ///< pooled over all reps
};

/// Repetition r of every cell uses RandomSource::derive_seed(seed, r).
std::uint64_t repetition_seed(std::uint64_t root_seed, std::size_t rep) noexcept;

EvaluationStats evaluation_stats(const std::vector<RepRecord>& reps);

/// Runs every (cell, repetition) pair on a worker pool; results are in cell order,
/// repetitions in ascending order, independent of scheduling.
std::vector<AggregateResult> run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kRunsHeader = "cell_id,seed,n,k,N,variant,selection,covered,iterations,evaluations";
inline constexpr std::string_view kDynamicsHeader = "cell_id,rep,ones_count,mean_occupation,retained_snapshots";
inline constexpr std::string_view kSweepHeader =
    "cell_id,n,k,N,variant,selection,reps,mean_evals,std_evals,lb_evals,ratio";

void write_runs_csv(std::ostream& os, const std::vector<AggregateResult>& results);
void write_dynamics_csv(std::ostream& os, const std::vector<AggregateResult>& results);
void write_sweep_csv(std::ostream& os, const std::vector<AggregateResult>& results);

/// Writes runs.csv (+ dynamics.csv when recorded, + sweep.csv when requested)
/// into dir, creating it if needed. Throws std::runtime_error on I/O failure.
void write_outputs(const std::string& dir, const std::vector<AggregateResult>& results, bool dynamics, bool sweep);

std::string format_report(const std::vector<AggregateResult>& results);

struct VerifyOptions {
    int n_max = 20;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    /// Adds `delta` to entry (v, w) of the n-th matrix before checking.
    struct Fault {
        int n = 0, v = 0, w = 0;
        double delta = 0.0;
    };
    std::optional<Fault> fault;
};

/// Exhaustive bound checks for n <= n_max, row/symmetry checks for n <= 64,
/// rank-oracle equivalence and crowding structure.
/// Throws std::invalid_argument unless 2 <= n_max <= 64.
std::vector<VerificationReport> run_verification(const VerifyOptions& options);

std::string verification_json(const std::vector<VerificationReport>& reports);

} // namespace nsgadyn

#endif
