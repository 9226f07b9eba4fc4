#include "nsgadyn/benchmarks.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nsgadyn {

BenchmarkSpec BenchmarkSpec::one_jump_zero_jump(int n, int k)
{
    if (k < 2 || 4 * k > n)
        throw std::invalid_argument("OneJumpZeroJump requires 2 <= k <= n/4 (got n=" + std::to_string(n) +
                                    ", k=" + std::to_string(k) + ")");
    return BenchmarkSpec{BenchmarkKind::OneJumpZeroJump, n, k};
}

BenchmarkSpec BenchmarkSpec::one_min_max(int n)
{
    if (n < 1)
        throw std::invalid_argument("OneMinMax requires n >= 1");
    return BenchmarkSpec{BenchmarkKind::OneMinMax, n, 0};
}

std::size_t BenchmarkSpec::front_size() const noexcept
{
    return is_jump() ? static_cast<std::size_t>(n - 2 * k + 3) : static_cast<std::size_t>(n + 1);
}

ObjectiveVector evaluate_ones(int ones, const BenchmarkSpec& spec)
{
    const int n = spec.n;
    const int zeros = n - ones;
    if (!spec.is_jump())
        return {zeros, ones};
    const int k = spec.k;
    const int f1 = (ones <= n - k || ones == n) ? k + ones : n - ones;
    const int f2 = (zeros <= n - k || zeros == n) ? k + zeros : n - zeros;
    return {f1, f2};
}

ObjectiveVector evaluate(const Bitstring& x, const BenchmarkSpec& spec)
{
    if (x.size() != static_cast<std::size_t>(spec.n))
        throw std::logic_error("genome length " + std::to_string(x.size()) + " does not match n=" +
                               std::to_string(spec.n));
    return evaluate_ones(static_cast<int>(x.ones_count()), spec);
}

Individual evaluated(Bitstring x, const BenchmarkSpec& spec)
{
    auto f = evaluate(x, spec);
    return Individual(std::move(x), f);
}

void evaluate_all(Population& population, const BenchmarkSpec& spec)
{
    for (auto& ind : population)
        if (!ind.evaluated())
            ind = evaluated(ind.genome(), spec);
}

bool ParetoStructure::in_pareto_set(int ones) const noexcept
{
    if (!spec.is_jump())
        return ones >= 0 && ones <= spec.n;
    return ones == 0 || ones == spec.n || (ones >= spec.k && ones <= spec.n - spec.k);
}

bool ParetoStructure::in_inner_set(int ones) const noexcept
{
    return ones >= inner_low() && ones <= inner_high();
}

int ParetoStructure::front_index(const ObjectiveVector& v) const noexcept
{
    const int n = spec.n;
    if (!spec.is_jump()) {
        if (v.f1 < 0 || v.f1 > n || v.f1 + v.f2 != n)
            return -1;
        return v.f1;
    }
    const int k = spec.k;
    if (v.f1 + v.f2 != 2 * k + n)
        return -1;
    if (v.f1 == k)
        return 0;
    if (v.f1 >= 2 * k && v.f1 <= n)
        return v.f1 - 2 * k + 1;
    if (v.f1 == n + k)
        return n - 2 * k + 2;
    return -1;
}

bool ParetoStructure::on_front(const ObjectiveVector& v) const noexcept { return front_index(v) >= 0; }

bool ParetoStructure::on_inner_front(const ObjectiveVector& v) const noexcept
{
    return on_front(v) && v != all_ones_point && v != all_zeros_point;
}

ParetoStructure pareto_structure(const BenchmarkSpec& spec)
{
    ParetoStructure s;
    s.spec = spec;
    s.all_ones_point = evaluate_ones(spec.n, spec);
    s.all_zeros_point = evaluate_ones(0, spec);
    // Enumerate by ones-count classes; f is constant on each class.
    for (int ones = 0; ones <= spec.n; ++ones) {
        if (!s.in_pareto_set(ones))
            continue;
        auto v = evaluate_ones(ones, spec);
        s.front.push_back(v);
        if (v != s.all_ones_point && v != s.all_zeros_point)
            s.inner_front.push_back(v);
    }
    auto by_f1 = [](const ObjectiveVector& a, const ObjectiveVector& b) { return a.f1 < b.f1; };
    std::sort(s.front.begin(), s.front.end(), by_f1);
    std::sort(s.inner_front.begin(), s.inner_front.end(), by_f1);
    return s;
}

CoverageStatus coverage_status(const std::vector<ObjectiveVector>& objectives, const ParetoStructure& structure)
{
    std::vector<char> present(structure.front.size(), 0);
    for (const auto& v : objectives) {
        const int idx = structure.front_index(v);
        if (idx >= 0)
            present[static_cast<std::size_t>(idx)] = 1;
    }
    CoverageStatus status;
    status.full_front_covered = true;
    status.inner_front_covered = true;
    for (std::size_t i = 0; i < structure.front.size(); ++i) {
        const auto& v = structure.front[i];
        const bool here = present[i] != 0;
        if (v == structure.all_ones_point)
            status.has_all_ones_point = here;
        if (v == structure.all_zeros_point)
            status.has_all_zeros_point = here;
        if (!here) {
            status.full_front_covered = false;
            if (structure.on_inner_front(v))
                status.inner_front_covered = false;
        }
    }
    return status;
}

CoverageStatus coverage_status(const Population& population, const ParetoStructure& structure)
{
    std::vector<ObjectiveVector> objs;
    objs.reserve(population.size());
    for (const auto& ind : population)
        objs.push_back(ind.objectives());
    return coverage_status(objs, structure);
}

} // namespace nsgadyn
