#include "nsgadyn/dynamics.hpp"

#include <cmath>

namespace nsgadyn {

void PhaseState::observe(const CoverageStatus& status, std::uint64_t t)
{
    if (status.inner_front_covered && !inner_front_covered_at)
        inner_front_covered_at = t;
    if (status.any_extremal() && !first_extremal_at)
        first_extremal_at = t;
    if (status.both_extremals() && !both_extremals_at)
        both_extremals_at = t;
}

bool PhaseState::in_window(std::uint64_t t) const noexcept
{
    if (!inner_front_covered_at || t < *inner_front_covered_at)
        return false;
    return !first_extremal_at || t < *first_extremal_at;
}

double DynamicsSummary::at(int ones) const noexcept
{
    if (ones < 0 || static_cast<std::size_t>(ones) >= mean_occupation.size())
        return 0.0;
    return mean_occupation[static_cast<std::size_t>(ones)];
}

std::uint64_t snapshot_stride(const BenchmarkSpec& spec)
{
    const double n = spec.n;
    const double raw = spec.is_jump() ? std::pow(n, spec.k) / 50.0 : n * std::log(n) / 50.0;
    const double rounded = std::round(raw);
    return rounded < 1.0 ? 1 : static_cast<std::uint64_t>(rounded);
}

OccupationSnapshot occupation(const Population& population, int n, std::uint64_t t)
{
    OccupationSnapshot snap;
    snap.iteration = t;
    snap.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& ind : population)
        ++snap.counts[ind.ones_count()];
    return snap;
}

std::optional<OccupationSnapshot> maybe_snapshot(const Population& population, int n, std::uint64_t t,
                                                 std::uint64_t stride)
{
    if (stride == 0 || t % stride != 0)
        return std::nullopt;
    return occupation(population, n, t);
}

DynamicsSummary finalize(std::span<const OccupationSnapshot> snapshots, const PhaseState& phase, int n)
{
    DynamicsSummary summary;
    summary.mean_occupation.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (const auto& snap : snapshots) {
        if (!phase.in_window(snap.iteration))
            continue;
        ++summary.retained_snapshots;
        for (std::size_t i = 0; i < snap.counts.size() && i < summary.mean_occupation.size(); ++i)
            summary.mean_occupation[i] += static_cast<double>(snap.counts[i]);
    }
    summary.valid_window = summary.retained_snapshots > 0;
    if (summary.valid_window)
        for (auto& v : summary.mean_occupation)
            v /= static_cast<double>(summary.retained_snapshots);
    return summary;
}

void survival_frequency_probe(SurvivalCounters& counters, std::span<const std::size_t> rank,
                              std::span<const double> crowding, std::span<const char> survived_mask)
{
    for (std::size_t i = 0; i < rank.size(); ++i) {
        if (rank[i] != 1 || crowding[i] != 0.0)
            continue;
        ++counters.observed;
        if (survived_mask[i])
            ++counters.survived;
    }
}

} // namespace nsgadyn
