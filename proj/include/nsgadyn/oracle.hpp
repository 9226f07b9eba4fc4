#ifndef NSGADYN_ORACLE_HPP
#define NSGADYN_ORACLE_HPP

#include "nsgadyn/core.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nsgadyn {

/// Exact ones-count transition probabilities of bit-wise mutation with rate 1/n:
/// entry (v, w) is the probability that a genome with v ones becomes one with w ones.
class TransitionMatrix {
public:
    static constexpr int kMaxN = 64;

    int n() const noexcept { return n_; }
    double operator()(int v, int w) const noexcept { return p_[index(v, w)]; }
    std::span<const double> row(int v) const noexcept
    {
        return {p_.data() + static_cast<std::size_t>(v) * (n_ + 1), static_cast<std::size_t>(n_ + 1)};
    }

    /// Adds delta to one entry. Used to exercise the verification failure path.
    void perturb(int v, int w, double delta) noexcept { p_[index(v, w)] += delta; }

private:
    friend TransitionMatrix transition_matrix(int n);
    explicit TransitionMatrix(int n) : n_(n), p_(static_cast<std::size_t>(n + 1) * (n + 1), 0.0) {}
    std::size_t index(int v, int w) const noexcept
    {
        return static_cast<std::size_t>(v) * (n_ + 1) + static_cast<std::size_t>(w);
    }

    int n_;
    std::vector<double> p_;
};

/// Sums C(n-v, a) C(v, b) (1/n)^(a+b) (1-1/n)^(n-a-b) over a - b = w - v, with
/// each term assembled in log space. Throws std::out_of_range unless 1 <= n <= 64.
TransitionMatrix transition_matrix(int n);

using MatrixProvider = std::function<TransitionMatrix(int)>;

struct Violation {
    std::string detail; ///< human-readable witness, e.g. "n=4 v=2 u=2 s=1"
    int n = 0, v = 0, u = 0, s = 0;
    double value = 0.0; ///< left-hand side that broke the bound
    double bound = 0.0;
};

struct VerificationReport {
    std::string name;
    std::uint64_t checks = 0;
    std::vector<Violation> violations;
    double seconds = 0.0;

    bool passed() const noexcept { return violations.empty(); }
    std::string text() const;
};

inline constexpr double kOracleTolerance = 1e-12;

/// For n in [2..n_max], v in [1..n-1], u in [1..n-v], s in [0..v]:
/// P[s][u+v] <= ((n-v)/n)^u, and P[s][u+v] <= P[s+1][u+v] for s < v.
VerificationReport verify_ascent_bound(int n_max, const MatrixProvider& matrices = transition_matrix);

/// For n in [2..n_max], v in [1..n], s in [0..v]:
/// P[s][v] - [s=v] (1-1/n)^n <= (n-v+1)/n.
VerificationReport verify_level_change_bound(int n_max, const MatrixProvider& matrices = transition_matrix);

/// Row sums equal 1 and P[v][w] = P[n-v][n-w], both within 1e-12, for n in [1..n_max].
VerificationReport verify_stochastic(int n_max, const MatrixProvider& matrices = transition_matrix);

/// Ranks by repeatedly removing the non-dominated members. O(M^3); reference only.
std::vector<std::size_t> naive_ranks(std::span<const ObjectiveVector> objectives);

/// Compares the fast sort with naive_ranks on random bit-string populations of
/// both benchmarks (size <= max_size, n <= max_n).
VerificationReport verify_rank_oracle(std::uint64_t trials, std::size_t max_size, int max_n, std::uint64_t seed);

/// Random fronts made only of Pareto-optimal members: RandomTies leaves at most
/// 4 positive-crowding members per objective value, FixedShared exactly 2 for
/// every value held at least twice.
VerificationReport verify_crowding_structure(std::uint64_t trials, std::uint64_t seed);

inline constexpr const char* kAsymptoticLabel = "asymptotic constants; finite-n deviation expected";

/// Closed-form constants with all lower-order terms dropped.
struct TheoryBounds {
    int n = 0;
    int k = 0;
    double c = 0.0;
    std::optional<double> mu;

    double jump_population = 0.0;   ///< c (n - 2k + 3)
    double minmax_population = 0.0; ///< c (n + 1)

    /// c_i = e/(e-1) (c (k+i+1) + sum_{j<i} c_j + 4), i in [0..n-2k].
    std::vector<double> c_seq;
    double occ_extremal_random = 0.0; ///< 4e/(e-1)
    double occ_extremal_fixed = 0.0;  ///< 2ec/(ec-c+2)
    double lb_ojzj_evals = 0.0;       ///< 3(e-1)/8 N n^k
    double rt_fixed_evals = 0.0;      ///< 3/2 N ((2c)/(ec-c+2))^-1 n^k
    std::optional<double> lb_omm_evals; ///< N n (4e/(e-1))^-1 (1-mu)/3 ln n, when mu is given

    bool lower_bound_in_regime = false; ///< k >= 2, c >= 4
    bool fixed_in_regime = false;       ///< k >= 3, c >= 2
    bool minmax_in_regime = false;      ///< n > 16, c >= 4, mu in [0, 1)

    std::string report() const;
};

/// k = 0 skips the jump-specific quantities. Throws std::invalid_argument for
/// n < 1 or c <= 0.
TheoryBounds theory_bounds(int n, int k, double c, std::optional<double> mu = std::nullopt);

/// Recomputes c_i from c_0..c_{i-1}; true when every entry matches exactly.
bool c_sequence_consistent(const TheoryBounds& bounds);

} // namespace nsgadyn

#endif
