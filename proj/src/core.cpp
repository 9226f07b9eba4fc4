#include "nsgadyn/core.hpp"

#include <bit>
#include <stdexcept>

namespace nsgadyn {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept
{
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

} // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed)
{
    std::uint64_t s = seed;
    for (auto& word : state_)
        word = splitmix64(s);
}

std::uint64_t RandomSource::next_u64() noexcept
{
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

// Lemire's nearly-divisionless bounded draw; exact, no modulo bias.
std::uint64_t RandomSource::uniform_below(std::uint64_t bound) noexcept
{
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RandomSource::uniform01() noexcept
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept
{
    std::uint64_t a = seed;
    std::uint64_t b = stream_id ^ 0x5851f42d4c957f2dULL;
    const std::uint64_t mixed = splitmix64(a) ^ rotl(splitmix64(b), 29);
    std::uint64_t c = mixed;
    return splitmix64(c);
}

RandomSource RandomSource::split(std::uint64_t stream_id) const
{
    return RandomSource(derive_seed(seed_, stream_id));
}

Bitstring::Bitstring(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {}

Bitstring Bitstring::from_string(std::string_view bits)
{
    Bitstring out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            out.flip(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    return out;
}

void Bitstring::set(std::size_t i, bool value) noexcept
{
    if (test(i) != value)
        flip(i);
}

std::size_t Bitstring::ones_count() const noexcept
{
    std::size_t total = 0;
    for (auto w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::string Bitstring::to_string() const
{
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (test(i))
            s[i] = '1';
    return s;
}

const ObjectiveVector& Individual::objectives() const
{
    if (!objectives_)
        throw std::logic_error("individual has not been evaluated");
    return *objectives_;
}

Population random_population(std::size_t n, std::size_t population_size, RandomSource& rng)
{
    Population pop;
    pop.reserve(population_size);
    for (std::size_t i = 0; i < population_size; ++i) {
        Bitstring x(n);
        for (std::size_t b = 0; b < n; ++b)
            if (rng.coin())
                x.flip(b);
        pop.emplace_back(std::move(x));
    }
    return pop;
}

std::vector<ObjectiveVector> objectives_of(const Population& population)
{
    std::vector<ObjectiveVector> out;
    out.reserve(population.size());
    for (const auto& ind : population)
        out.push_back(ind.objectives());
    return out;
}

} // namespace nsgadyn
