#ifndef NSGADYN_ENGINE_HPP
#define NSGADYN_ENGINE_HPP

#include "nsgadyn/benchmarks.hpp"
#include "nsgadyn/core.hpp"
#include "nsgadyn/dynamics.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nsgadyn {

/// Tie order used when sorting a rank by each objective for the crowding
/// distance. RandomTies draws a fresh permutation per objective; FixedShared
/// draws one per survival step and uses it for both objectives.
enum class SortingPolicy { RandomTies, FixedShared };

enum class SelectionMode { Fair, Uniform, BinaryTournament };

std::string_view to_string(SortingPolicy policy) noexcept;
std::string_view to_string(SelectionMode mode) noexcept;

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Rank partition of a population plus per-member crowding distances.
/// Indices refer to positions in the ranked population.
struct RankedPopulation {
    std::vector<std::vector<std::size_t>> fronts; ///< fronts[0] is rank 1
    std::vector<std::size_t> rank;                ///< 1-based, per member
    std::vector<double> crowding;                 ///< per member; empty until computed
};

/// Bi-objective non-dominated sort by a sweep over members ordered by
/// descending (f1, f2). O(M log M). Members of each front keep ascending index order.
RankedPopulation nondominated_sort(std::span<const ObjectiveVector> objectives);
RankedPopulation nondominated_sort(const Population& population);

/// Crowding distances of the members listed in `front` with explicit tie
/// orders: members with equal f_j appear in the order they have in
/// tie_order_j. Both tie orders must be permutations of `front`.
/// Result is parallel to `front`.
std::vector<double> crowding_distances_with_order(std::span<const ObjectiveVector> objectives,
                                                  std::span<const std::size_t> front,
                                                  std::span<const std::size_t> tie_order_f1,
                                                  std::span<const std::size_t> tie_order_f2);

std::vector<double> crowding_distances(std::span<const ObjectiveVector> objectives,
                                       std::span<const std::size_t> front, SortingPolicy policy,
                                       RandomSource& rng);

/// Fills ranked.crowding for every rank.
void assign_crowding(RankedPopulation& ranked, std::span<const ObjectiveVector> objectives,
                     SortingPolicy policy, RandomSource& rng);

struct SurvivalResult {
    RankedPopulation ranked;              ///< ranks and crowding of the combined population
    std::vector<std::size_t> survivors;   ///< indices into the combined population, ascending
    std::size_t critical_rank = 0;        ///< 1-based
};

/// Keeps every rank below the critical rank, then fills the remaining slots
/// from the critical rank by descending crowding distance with uniformly
/// random tie breaking.
SurvivalResult select_survivors(std::span<const ObjectiveVector> combined, std::size_t capacity,
                                SortingPolicy policy, RandomSource& rng);

/// Indices of the N selected parents. Tournament selection needs rank and
/// crowding for the members of P (ignored by the other modes).
std::vector<std::size_t> select_parents(std::size_t population_size, SelectionMode mode, RandomSource& rng,
                                        std::span<const std::size_t> rank = {},
                                        std::span<const double> crowding = {});

/// Flips each bit independently with probability 1/n.
Bitstring mutate_bitwise(const Bitstring& x, RandomSource& rng);

struct RunConfig {
    BenchmarkSpec benchmark;
    std::size_t population_size = 1;
    SortingPolicy sorting = SortingPolicy::RandomTies;
    SelectionMode selection = SelectionMode::Fair;
    std::uint64_t max_iterations = 1;
    std::uint64_t seed = 0;
    bool record_dynamics = false;
    bool probe_survival = false;

    /// Throws std::invalid_argument on N < 1 or max_iterations < 1.
    void validate() const;
};

/// Runtime invariants checked during a run. Counts are numbers of iterations
/// in which the invariant failed.
struct TraceAssertions {
    bool initial_in_inner_set = false;  ///< P_0 lies in the inner Pareto set
    std::uint64_t pareto_set_violations = 0;      ///< P_t not inside S* (checked when initial_in_inner_set)
    bool elitism_checked = false;                 ///< population large enough for front elitism
    std::uint64_t elitism_violations = 0;         ///< a front value present in P_t missing from P_{t+1}
    std::uint64_t survivor_violations = 0;        ///< a member below the critical rank was dropped
    std::uint64_t fixed_structure_checks = 0;
    std::uint64_t fixed_structure_violations = 0; ///< inner value without exactly two positive holders

    std::uint64_t total_violations() const noexcept
    {
        return pareto_set_violations + elitism_violations + survivor_violations + fixed_structure_violations;
    }
};

struct RunResult {
    bool covered = false;
    std::uint64_t iterations = 0;
    std::uint64_t evaluations = 0;
    PhaseState phase;
    TraceAssertions trace;
    std::optional<DynamicsSummary> dynamics;
};

RunResult run(const RunConfig& config);

} // namespace nsgadyn

#endif
