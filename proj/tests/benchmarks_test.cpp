#include "doctest.h"

#include "nsgadyn/benchmarks.hpp"

#include <stdexcept>

using namespace nsgadyn;

TEST_SUITE("benchmarks") {

TEST_CASE("OneJumpZeroJump values on the inner set, the gap and the extremes")
{
    const auto spec = BenchmarkSpec::one_jump_zero_jump(8, 2);
    CHECK(evaluate_ones(4, spec) == ObjectiveVector{6, 6});
    CHECK(evaluate_ones(2, spec) == ObjectiveVector{4, 8});
    CHECK(evaluate_ones(6, spec) == ObjectiveVector{8, 4});
    // inside the gaps the objective falls back to the distance from the extreme
    CHECK(evaluate_ones(7, spec) == ObjectiveVector{1, 3});
    CHECK(evaluate_ones(1, spec) == ObjectiveVector{3, 1});
    CHECK(evaluate_ones(8, spec) == ObjectiveVector{10, 2});
    CHECK(evaluate_ones(0, spec) == ObjectiveVector{2, 10});
}

TEST_CASE("evaluate works on bitstrings and checks the length")
{
    const auto spec = BenchmarkSpec::one_jump_zero_jump(10, 2);
    CHECK(evaluate(Bitstring::from_string("1111100000"), spec) == ObjectiveVector{7, 7});
    CHECK(evaluate(Bitstring::from_string("1111111111"), spec) == ObjectiveVector{12, 2});
    CHECK_THROWS_AS(evaluate(Bitstring::from_string("111"), spec), std::logic_error);

    const auto omm = BenchmarkSpec::one_min_max(6);
    CHECK(evaluate(Bitstring::from_string("110000"), omm) == ObjectiveVector{4, 2});
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(BenchmarkSpec::one_jump_zero_jump(50, 1), std::invalid_argument);
    CHECK_THROWS_AS(BenchmarkSpec::one_jump_zero_jump(7, 2), std::invalid_argument);
    CHECK_NOTHROW(BenchmarkSpec::one_jump_zero_jump(8, 2));
    CHECK_THROWS_AS(BenchmarkSpec::one_min_max(0), std::invalid_argument);
}

TEST_CASE("front sizes")
{
    CHECK(BenchmarkSpec::one_jump_zero_jump(50, 2).front_size() == 49);
    CHECK(BenchmarkSpec::one_jump_zero_jump(100, 2).front_size() == 99);
    CHECK(BenchmarkSpec::one_jump_zero_jump(30, 3).front_size() == 27);
    CHECK(BenchmarkSpec::one_min_max(50).front_size() == 51);
}

TEST_CASE("Pareto structure of OneJumpZeroJump")
{
    const auto spec = BenchmarkSpec::one_jump_zero_jump(12, 3);
    const auto s = pareto_structure(spec);
    REQUIRE(s.front.size() == spec.front_size());
    CHECK(s.inner_front.size() == spec.front_size() - 2);
    CHECK(s.all_ones_point == ObjectiveVector{15, 3});
    CHECK(s.all_zeros_point == ObjectiveVector{3, 15});
    CHECK(s.front.front() == s.all_zeros_point);
    CHECK(s.front.back() == s.all_ones_point);
    for (std::size_t i = 1; i < s.front.size(); ++i)
        CHECK(s.front[i - 1].f1 < s.front[i].f1);
    for (const auto& v : s.front)
        CHECK(v.f1 + v.f2 == 2 * 3 + 12);

    CHECK(s.in_pareto_set(0));
    CHECK_FALSE(s.in_pareto_set(1));
    CHECK(s.in_pareto_set(3));
    CHECK(s.in_pareto_set(9));
    CHECK_FALSE(s.in_pareto_set(10));
    CHECK(s.in_pareto_set(12));
    CHECK_FALSE(s.in_inner_set(0));
    CHECK(s.in_inner_set(3));
    CHECK(s.inner_low() == 3);
    CHECK(s.inner_high() == 9);

    CHECK(s.on_front({15, 3}));
    CHECK(s.on_inner_front({6, 12}));
    CHECK_FALSE(s.on_inner_front({15, 3}));
    CHECK_FALSE(s.on_front({5, 1}));
    CHECK(s.front_index(s.front[4]) == 4);
    CHECK(s.front_index({5, 1}) == -1);
}

TEST_CASE("every Pareto-optimal value dominates no other front value")
{
    const auto s = pareto_structure(BenchmarkSpec::one_jump_zero_jump(16, 2));
    for (const auto& a : s.front)
        for (const auto& b : s.front)
            CHECK_FALSE(dominates(a, b));
    // no ones-count outside the Pareto set maps onto the front
    for (int ones = 0; ones <= 16; ++ones)
        CHECK(s.on_front(evaluate_ones(ones, s.spec)) == s.in_pareto_set(ones));
}

TEST_CASE("Pareto structure of OneMinMax")
{
    const auto s = pareto_structure(BenchmarkSpec::one_min_max(5));
    CHECK(s.front.size() == 6);
    CHECK(s.inner_front.size() == 4);
    CHECK(s.all_ones_point == ObjectiveVector{0, 5});
    CHECK(s.all_zeros_point == ObjectiveVector{5, 0});
    for (int ones = 0; ones <= 5; ++ones)
        CHECK(s.in_pareto_set(ones));
    CHECK_FALSE(s.in_inner_set(0));
    CHECK(s.in_inner_set(1));
    CHECK_FALSE(s.in_inner_set(5));
}

TEST_CASE("coverage status tracks inner front and extremes")
{
    const auto spec = BenchmarkSpec::one_jump_zero_jump(8, 2);
    const auto s = pareto_structure(spec);
    std::vector<ObjectiveVector> objs;
    for (int ones = 2; ones <= 6; ++ones)
        objs.push_back(evaluate_ones(ones, spec));
    auto status = coverage_status(objs, s);
    CHECK(status.inner_front_covered);
    CHECK_FALSE(status.full_front_covered);
    CHECK_FALSE(status.any_extremal());

    objs.push_back(evaluate_ones(8, spec));
    status = coverage_status(objs, s);
    CHECK(status.has_all_ones_point);
    CHECK(status.any_extremal());
    CHECK_FALSE(status.both_extremals());

    objs.push_back(evaluate_ones(0, spec));
    status = coverage_status(objs, s);
    CHECK(status.both_extremals());
    CHECK(status.full_front_covered);

    objs.erase(objs.begin() + 2);
    status = coverage_status(objs, s);
    CHECK_FALSE(status.inner_front_covered);
    CHECK_FALSE(status.full_front_covered);
}

TEST_CASE("evaluate_all fills objectives of a population")
{
    const auto spec = BenchmarkSpec::one_min_max(4);
    Population pop;
    pop.emplace_back(Bitstring::from_string("0000"));
    pop.emplace_back(Bitstring::from_string("0110"));
    evaluate_all(pop, spec);
    CHECK(pop[0].objectives() == ObjectiveVector{4, 0});
    CHECK(pop[1].objectives() == ObjectiveVector{2, 2});
    const auto status = coverage_status(pop, pareto_structure(spec));
    CHECK(status.has_all_zeros_point);
    CHECK_FALSE(status.full_front_covered);
}

}
