#ifndef NSGADYN_BENCHMARKS_HPP
#define NSGADYN_BENCHMARKS_HPP

#include "nsgadyn/core.hpp"

#include <cstddef>
#include <vector>

namespace nsgadyn {

enum class BenchmarkKind { OneJumpZeroJump, OneMinMax };

/// Benchmark identity. Construct through the named factories, which validate
/// the parameters (OneJumpZeroJump needs 2 <= k <= n/4).
struct BenchmarkSpec {
    BenchmarkKind kind = BenchmarkKind::OneMinMax;
    int n = 1;
    int k = 0; ///< jump size; 0 for OneMinMax

    static BenchmarkSpec one_jump_zero_jump(int n, int k);
    static BenchmarkSpec one_min_max(int n);

    bool is_jump() const noexcept { return kind == BenchmarkKind::OneJumpZeroJump; }
    /// Size of the Pareto front: n - 2k + 3, or n + 1.
    std::size_t front_size() const noexcept;

    friend bool operator==(const BenchmarkSpec&, const BenchmarkSpec&) = default;
};

/// Objective vector of any genome with the given number of one-bits. Both
/// benchmarks depend on the genome only through this count.
ObjectiveVector evaluate_ones(int ones, const BenchmarkSpec& spec);

/// Throws std::logic_error when the genome length differs from spec.n.
ObjectiveVector evaluate(const Bitstring& x, const BenchmarkSpec& spec);

Individual evaluated(Bitstring x, const BenchmarkSpec& spec);
void evaluate_all(Population& population, const BenchmarkSpec& spec);

struct ParetoStructure {
    BenchmarkSpec spec;
    std::vector<ObjectiveVector> front;       ///< sorted by ascending f1
    std::vector<ObjectiveVector> inner_front; ///< front without the two extremal points
    ObjectiveVector all_ones_point;           ///< f(1^n)
    ObjectiveVector all_zeros_point;          ///< f(0^n)

    /// Whether a genome with this ones-count lies in the Pareto set S*.
    bool in_pareto_set(int ones) const noexcept;
    /// Whether a genome with this ones-count lies in the inner Pareto set.
    bool in_inner_set(int ones) const noexcept;
    bool on_front(const ObjectiveVector& v) const noexcept;
    bool on_inner_front(const ObjectiveVector& v) const noexcept;
    /// Index of v in `front`, or -1.
    int front_index(const ObjectiveVector& v) const noexcept;

    /// Ones-count range [lo, hi] of the inner Pareto set.
    int inner_low() const noexcept { return spec.is_jump() ? spec.k : 1; }
    int inner_high() const noexcept { return spec.is_jump() ? spec.n - spec.k : spec.n - 1; }
};

ParetoStructure pareto_structure(const BenchmarkSpec& spec);

struct CoverageStatus {
    bool full_front_covered = false;
    bool inner_front_covered = false;
    bool has_all_ones_point = false;
    bool has_all_zeros_point = false;

    bool any_extremal() const noexcept { return has_all_ones_point || has_all_zeros_point; }
    bool both_extremals() const noexcept { return has_all_ones_point && has_all_zeros_point; }
};

CoverageStatus coverage_status(const Population& population, const ParetoStructure& structure);
CoverageStatus coverage_status(const std::vector<ObjectiveVector>& objectives, const ParetoStructure& structure);

} // namespace nsgadyn

#endif
