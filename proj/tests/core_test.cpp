#include "doctest.h"

#include "nsgadyn/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

using namespace nsgadyn;

TEST_SUITE("core") {

TEST_CASE("random source matches reference xoshiro256** stream")
{
    // Reference values from an independent implementation (splitmix64 seeding).
    RandomSource rng(1);
    CHECK(rng.next_u64() == 0xb3f2af6d0fc710c5ULL);
    CHECK(rng.next_u64() == 0x853b559647364ceaULL);
    CHECK(rng.next_u64() == 0x92f89756082a4514ULL);

    RandomSource zero(0);
    CHECK(zero.next_u64() == 0x99ec5f36cb75f2b4ULL);
    CHECK(zero.next_u64() == 0xbf6e1f784956452aULL);
}

TEST_CASE("derived seeds are frozen and distinct per stream")
{
    CHECK(RandomSource::derive_seed(1, 0) == 13829858660066159068ULL);
    CHECK(RandomSource::derive_seed(1, 1) == 5552494892387888399ULL);
    CHECK(RandomSource::derive_seed(7, 0) == 13801557389289345487ULL);

    std::set<std::uint64_t> seen;
    for (std::uint64_t id = 0; id < 1000; ++id)
        seen.insert(RandomSource::derive_seed(42, id));
    CHECK(seen.size() == 1000);
    CHECK(RandomSource(5).split(3).seed() == RandomSource::derive_seed(5, 3));
}

TEST_CASE("uniform_below stays in range and is roughly uniform")
{
    RandomSource rng(9);
    std::vector<int> counts(7, 0);
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        const auto v = rng.uniform_below(7);
        REQUIRE(v < 7);
        ++counts[v];
    }
    double chi2 = 0.0;
    for (int c : counts)
        chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
    CHECK(chi2 < 22.46); // chi-square, 6 dof, p = 0.001
    CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("uniform01 lies in [0, 1)")
{
    RandomSource rng(3);
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("shuffle is a permutation and reproducible")
{
    std::vector<int> a(50);
    std::iota(a.begin(), a.end(), 0);
    auto b = a;
    RandomSource r1(11), r2(11);
    r1.shuffle(a);
    r2.shuffle(b);
    CHECK(a == b);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i)
        CHECK(sorted[i] == i);

    std::vector<int> empty;
    r1.shuffle(empty);
    CHECK(empty.empty());
}

TEST_CASE("bitstring parsing, counting and printing")
{
    const auto x = Bitstring::from_string("1101000011");
    CHECK(x.size() == 10);
    CHECK(x.ones_count() == 5);
    CHECK(x.zeros_count() == 5);
    CHECK(x.test(0));
    CHECK_FALSE(x.test(2));
    CHECK(x.to_string() == "1101000011");
    CHECK_THROWS_AS(Bitstring::from_string("10a1"), std::invalid_argument);

    Bitstring long_one(130);
    CHECK(long_one.ones_count() == 0);
    long_one.flip(0);
    long_one.flip(64);
    long_one.flip(129);
    CHECK(long_one.ones_count() == 3);
    long_one.set(64, false);
    CHECK(long_one.ones_count() == 2);
    CHECK(ones_count(long_one) == 2);
}

TEST_CASE("bitstring equality compares content")
{
    auto x = Bitstring::from_string("0101");
    auto y = Bitstring::from_string("0101");
    CHECK(x == y);
    y.flip(3);
    CHECK_FALSE(x == y);
}

TEST_CASE("dominance is strict in at least one objective")
{
    CHECK(dominates({3, 2}, {2, 2}));
    CHECK(dominates({3, 3}, {2, 2}));
    CHECK_FALSE(dominates({2, 2}, {2, 2}));
    CHECK_FALSE(dominates({3, 1}, {2, 2}));
    CHECK_FALSE(dominates({2, 2}, {3, 2}));
}

TEST_CASE("individual objectives require evaluation")
{
    Individual raw(Bitstring::from_string("011"));
    CHECK_FALSE(raw.evaluated());
    CHECK_THROWS_AS(raw.objectives(), std::logic_error);
    Individual done(Bitstring::from_string("011"), {1, 2});
    CHECK(done.evaluated());
    CHECK(done.objectives() == ObjectiveVector{1, 2});
    CHECK(done.ones_count() == 2);
}

TEST_CASE("random population has requested shape and fair bits")
{
    RandomSource rng(5);
    const auto pop = random_population(64, 200, rng);
    CHECK(pop.size() == 200);
    std::size_t ones = 0;
    for (const auto& ind : pop) {
        REQUIRE(ind.genome().size() == 64);
        ones += ind.ones_count();
    }
    CHECK(static_cast<double>(ones) / (64 * 200) == doctest::Approx(0.5).epsilon(0.03));
}

}
