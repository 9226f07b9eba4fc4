#ifndef NSGADYN_DYNAMICS_HPP
#define NSGADYN_DYNAMICS_HPP

#include "nsgadyn/benchmarks.hpp"
#include "nsgadyn/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nsgadyn {

/// Number of parent-population members per absolute ones-count 0..n at
/// iteration t. Off-front classes are included, so the counts sum to N.
struct OccupationSnapshot {
    std::uint64_t iteration = 0;
    std::vector<std::size_t> counts;
};

/// Iterations at which the run first reached each phase. All coverage-based
/// phases are observed on the parent population after survival; the
/// tightening phase is observed on the combined population.
struct PhaseState {
    std::optional<std::uint64_t> inner_front_covered_at;
    std::optional<std::uint64_t> first_extremal_at;
    std::optional<std::uint64_t> both_extremals_at;
    std::optional<std::uint64_t> tightening_at;

    void observe(const CoverageStatus& status, std::uint64_t t);

    /// inner_front_covered_at <= t < first_extremal_at.
    bool in_window(std::uint64_t t) const noexcept;
};

/// Rank-1 members of R_t with zero crowding distance, and how many of them
/// made it into P_{t+1}.
struct SurvivalCounters {
    std::uint64_t observed = 0;
    std::uint64_t survived = 0;

    double frequency() const noexcept
    {
        return observed == 0 ? 0.0 : static_cast<double>(survived) / static_cast<double>(observed);
    }
    SurvivalCounters& operator+=(const SurvivalCounters& other) noexcept
    {
        observed += other.observed;
        survived += other.survived;
        return *this;
    }
};

/// Per-level sums of parents left unchanged by mutation (`unchanged`) and of
/// children that differ from their parent (`flipped`), indexed by ones-count.
struct LevelFlowCounters {
    std::vector<double> unchanged;
    std::vector<double> flipped;
    std::uint64_t iterations = 0;

    explicit LevelFlowCounters(int n = 0) : unchanged(static_cast<std::size_t>(n) + 1, 0.0),
                                            flipped(static_cast<std::size_t>(n) + 1, 0.0) {}
};

struct DynamicsSummary {
    std::vector<double> mean_occupation; ///< indexed by ones-count 0..n
    std::size_t retained_snapshots = 0;
    bool valid_window = false;           ///< false means "no valid window"
    std::optional<SurvivalCounters> survival_zero_crowding;
    std::optional<LevelFlowCounters> level_flows; ///< means per window iteration

    /// Mean occupation at one ones-count, 0 outside the recorded range.
    double at(int ones) const noexcept;
};

/// n^k/50 for OneJumpZeroJump, n ln n / 50 for OneMinMax, rounded, at least 1.
std::uint64_t snapshot_stride(const BenchmarkSpec& spec);

OccupationSnapshot occupation(const Population& population, int n, std::uint64_t t);

/// Snapshot iff t is a multiple of stride.
std::optional<OccupationSnapshot> maybe_snapshot(const Population& population, int n, std::uint64_t t,
                                                 std::uint64_t stride);

/// Averages the snapshots that fall inside the phase window.
DynamicsSummary finalize(std::span<const OccupationSnapshot> snapshots, const PhaseState& phase, int n);

/// Adds every rank-1, zero-crowding member of R_t to `counters`, and counts it
/// as survived when survived_mask marks it. rank is 1-based.
void survival_frequency_probe(SurvivalCounters& counters, std::span<const std::size_t> rank,
                              std::span<const double> crowding, std::span<const char> survived_mask);

} // namespace nsgadyn

#endif
