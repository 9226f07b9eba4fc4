#include "doctest.h"

#include "nsgadyn/dynamics.hpp"
#include "nsgadyn/engine.hpp"

#include <numeric>

using namespace nsgadyn;

TEST_SUITE("dynamics") {

TEST_CASE("snapshot stride follows the recording protocol")
{
    CHECK(snapshot_stride(BenchmarkSpec::one_jump_zero_jump(50, 2)) == 50);
    CHECK(snapshot_stride(BenchmarkSpec::one_jump_zero_jump(30, 3)) == 540);
    CHECK(snapshot_stride(BenchmarkSpec::one_jump_zero_jump(8, 2)) == 1);
    CHECK(snapshot_stride(BenchmarkSpec::one_min_max(50)) == 4);
    CHECK(snapshot_stride(BenchmarkSpec::one_min_max(100)) == 9);
    CHECK(snapshot_stride(BenchmarkSpec::one_min_max(3)) == 1);
}

TEST_CASE("snapshots fire only on multiples of the stride")
{
    Population pop;
    for (int i = 0; i < 5; ++i)
        pop.emplace_back(Bitstring::from_string("0110"));
    CHECK(maybe_snapshot(pop, 4, 0, 50));
    CHECK_FALSE(maybe_snapshot(pop, 4, 49, 50));
    CHECK(maybe_snapshot(pop, 4, 100, 50));
    CHECK(maybe_snapshot(pop, 4, 7, 1));

    const auto snap = *maybe_snapshot(pop, 4, 100, 50);
    CHECK(snap.iteration == 100);
    CHECK(snap.counts == std::vector<std::size_t>{0, 0, 5, 0, 0});
}

TEST_CASE("snapshot counts always add up to the population size")
{
    RandomSource rng(4);
    const auto pop = random_population(30, 77, rng);
    const auto snap = occupation(pop, 30, 0);
    CHECK(std::accumulate(snap.counts.begin(), snap.counts.end(), std::size_t{0}) == 77);
}

TEST_CASE("window keeps snapshots from inner coverage until the first extreme")
{
    PhaseState phase;
    CoverageStatus status;
    phase.observe(status, 0);
    CHECK_FALSE(phase.in_window(0));
    status.inner_front_covered = true;
    phase.observe(status, 10);
    CHECK(phase.in_window(10));
    CHECK(phase.in_window(30));
    status.has_all_ones_point = true;
    phase.observe(status, 40);
    CHECK_FALSE(phase.in_window(40));
    status.has_all_zeros_point = true;
    phase.observe(status, 60);
    CHECK(*phase.inner_front_covered_at == 10);
    CHECK(*phase.first_extremal_at == 40);
    CHECK(*phase.both_extremals_at == 60);

    std::vector<OccupationSnapshot> snaps;
    for (std::uint64_t t : {0, 10, 20, 30, 40, 50})
        snaps.push_back({t, {t, 1, 0}});
    const auto summary = finalize(snaps, phase, 2);
    CHECK(summary.valid_window);
    CHECK(summary.retained_snapshots == 3);
    CHECK(summary.at(0) == doctest::Approx(20.0));
    CHECK(summary.at(1) == doctest::Approx(1.0));
    CHECK(summary.at(2) == 0.0);
    CHECK(summary.at(3) == 0.0);
}

TEST_CASE("no inner coverage means no valid window")
{
    PhaseState phase;
    std::vector<OccupationSnapshot> snaps{{0, {3, 0}}, {5, {2, 1}}};
    const auto summary = finalize(snaps, phase, 1);
    CHECK_FALSE(summary.valid_window);
    CHECK(summary.retained_snapshots == 0);
}

TEST_CASE("survival probe counts only zero-crowding rank-one members")
{
    SurvivalCounters counters;
    const std::vector<std::size_t> rank{1, 1, 1, 2, 1};
    const std::vector<double> crowding{0.0, 0.5, 0.0, 0.0, kInfiniteDistance};
    const std::vector<char> kept{1, 1, 0, 0, 1};
    survival_frequency_probe(counters, rank, crowding, kept);
    CHECK(counters.observed == 2);
    CHECK(counters.survived == 1);
    CHECK(counters.frequency() == doctest::Approx(0.5));

    SurvivalCounters untouched;
    const std::vector<double> positive{1.0, 1.0, 1.0, 0.0, 1.0};
    survival_frequency_probe(untouched, rank, positive, kept);
    CHECK(untouched.observed == 0);
    CHECK(untouched.frequency() == 0.0);

    counters += SurvivalCounters{3, 1};
    CHECK(counters.observed == 5);
    CHECK(counters.survived == 2);
}

TEST_CASE("recorded runs conserve population size in the summary")
{
    RunConfig rc;
    rc.benchmark = BenchmarkSpec::one_jump_zero_jump(16, 2);
    rc.population_size = 60;
    rc.max_iterations = 100000;
    rc.seed = 5;
    rc.record_dynamics = true;
    const auto r = run(rc);
    REQUIRE(r.dynamics);
    if (r.dynamics->valid_window) {
        const auto& occ = r.dynamics->mean_occupation;
        CHECK(std::accumulate(occ.begin(), occ.end(), 0.0) == doctest::Approx(60.0));
    }
    REQUIRE(r.phase.inner_front_covered_at);
    REQUIRE(r.phase.first_extremal_at);
    CHECK(*r.phase.inner_front_covered_at <= *r.phase.first_extremal_at);
    CHECK(*r.phase.first_extremal_at <= *r.phase.both_extremals_at);
}

TEST_CASE("fixed sorting enters the tightening phase and keeps two positive holders")
{
    RunConfig rc;
    rc.benchmark = BenchmarkSpec::one_jump_zero_jump(20, 2);
    rc.population_size = 4 * rc.benchmark.front_size();
    rc.sorting = SortingPolicy::FixedShared;
    rc.max_iterations = 200000;
    rc.seed = 19;
    rc.record_dynamics = true;
    rc.probe_survival = true;
    const auto r = run(rc);
    CHECK(r.phase.tightening_at.has_value());
    CHECK(r.trace.fixed_structure_checks > 0);
    CHECK(r.trace.fixed_structure_violations == 0);
    REQUIRE(r.dynamics);
    REQUIRE(r.dynamics->survival_zero_crowding);
    CHECK(r.dynamics->survival_zero_crowding->observed > 0);
}

TEST_CASE("level flows are recorded within the window")
{
    RunConfig rc;
    rc.benchmark = BenchmarkSpec::one_jump_zero_jump(16, 2);
    rc.population_size = 56;
    rc.max_iterations = 100000;
    rc.seed = 2;
    rc.record_dynamics = true;
    const auto r = run(rc);
    REQUIRE(r.dynamics);
    REQUIRE(r.dynamics->level_flows);
    const auto& flows = *r.dynamics->level_flows;
    if (flows.iterations > 0) {
        const double total = std::accumulate(flows.unchanged.begin(), flows.unchanged.end(), 0.0) +
                             std::accumulate(flows.flipped.begin(), flows.flipped.end(), 0.0);
        CHECK(total == doctest::Approx(56.0));
    }
}

}
