#ifndef NSGADYN_CORE_HPP
#define NSGADYN_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsgadyn {

/// Deterministic pseudo-random stream (xoshiro256**, seeded through splitmix64).
///
/// Every draw is computed with integer arithmetic only, so a given seed yields
/// the same stream on every platform and standard library. `split` derives an
/// independent child stream from the seed alone; it does not depend on how many
/// values the parent has already produced.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound) noexcept;

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double uniform01() noexcept;

    /// True with probability exactly 1/denominator.
    bool one_in(std::uint64_t denominator) noexcept { return uniform_below(denominator) == 0; }

    bool coin() noexcept { return (next_u64() >> 63) != 0; }

    RandomSource split(std::uint64_t stream_id) const;

    /// Seed of the child stream `split(stream_id)` would produce.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    /// Fisher-Yates with this stream's draws.
    template <typename T>
    void shuffle(std::vector<T>& items) noexcept
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniform_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

/// Fixed-length bit string. Index 0 is the leftmost character of the text form.
class Bitstring {
public:
    explicit Bitstring(std::size_t length);

    /// Parses a string of '0'/'1' characters; throws std::invalid_argument otherwise.
    static Bitstring from_string(std::string_view bits);

    std::size_t size() const noexcept { return length_; }
    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void set(std::size_t i, bool value) noexcept;

    std::size_t ones_count() const noexcept;
    std::size_t zeros_count() const noexcept { return length_ - ones_count(); }

    std::string to_string() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;

private:
    std::size_t length_;
    std::vector<std::uint64_t> words_;
};

inline std::size_t ones_count(const Bitstring& x) noexcept { return x.ones_count(); }

/// Pair of integer objective values, both maximized.
struct ObjectiveVector {
    int f1 = 0;
    int f2 = 0;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
    friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Weakly better in both objectives and strictly better in at least one.
constexpr bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept
{
    return a.f1 >= b.f1 && a.f2 >= b.f2 && (a.f1 > b.f1 || a.f2 > b.f2);
}

class Individual {
public:
    explicit Individual(Bitstring genome) : genome_(std::move(genome)) {}
    Individual(Bitstring genome, ObjectiveVector objectives)
        : genome_(std::move(genome)), objectives_(objectives) {}

    const Bitstring& genome() const noexcept { return genome_; }
    bool evaluated() const noexcept { return objectives_.has_value(); }
    /// Throws std::logic_error if the individual has not been evaluated.
    const ObjectiveVector& objectives() const;
    std::size_t ones_count() const noexcept { return genome_.ones_count(); }

private:
    Bitstring genome_;
    std::optional<ObjectiveVector> objectives_;
};

/// Parent populations hold N members, combined populations 2N.
using Population = std::vector<Individual>;

/// N genomes of length n with independent uniform bits; objectives unset.
Population random_population(std::size_t n, std::size_t population_size, RandomSource& rng);

std::vector<ObjectiveVector> objectives_of(const Population& population);

} // namespace nsgadyn

#endif
