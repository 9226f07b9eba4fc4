#include "nsgadyn/oracle.hpp"

#include "nsgadyn/benchmarks.hpp"
#include "nsgadyn/engine.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nsgadyn {

namespace {

double log_choose(int n, int r) noexcept
{
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

std::string witness(int n, int v, int u, int s)
{
    std::ostringstream os;
    os << "n=" << n << " v=" << v << " u=" << u << " s=" << s;
    return os.str();
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr std::size_t kMaxReportedViolations = 32;

void add_violation(VerificationReport& report, Violation v)
{
    if (report.violations.size() < kMaxReportedViolations)
        report.violations.push_back(std::move(v));
}

} // namespace

TransitionMatrix transition_matrix(int n)
{
    if (n < 1 || n > TransitionMatrix::kMaxN)
        throw std::out_of_range("transition_matrix supports 1 <= n <= 64, got " + std::to_string(n));
    TransitionMatrix m(n);
    const double p = 1.0 / n;
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p); // -inf when n == 1
    for (int v = 0; v <= n; ++v) {
        for (int a = 0; a <= n - v; ++a) {     // zeros flipped to one
            for (int b = 0; b <= v; ++b) {     // ones flipped to zero
                const int kept = n - a - b;
                if (kept > 0 && n == 1)
                    continue;
                double log_term = log_choose(n - v, a) + log_choose(v, b) + (a + b) * log_p;
                if (kept > 0)
                    log_term += kept * log_q;
                m.p_[m.index(v, v - b + a)] += std::exp(log_term);
            }
        }
    }
    return m;
}

std::string VerificationReport::text() const
{
    std::ostringstream os;
    os << (passed() ? "PASS " : "FAIL ") << name << ": " << checks << " checks, " << violations.size()
       << " violations" << std::fixed << std::setprecision(3) << " (" << seconds << " s)\n";
    os << std::scientific << std::setprecision(6);
    for (const auto& v : violations)
        os << "  witness " << v.detail << ": value " << v.value << " > bound " << v.bound << '\n';
    return os.str();
}

VerificationReport verify_ascent_bound(int n_max, const MatrixProvider& matrices)
{
    Stopwatch clock;
    VerificationReport report;
    report.name = "ascent-bound";
    for (int n = 2; n <= n_max; ++n) {
        const auto P = matrices(n);
        for (int v = 1; v <= n - 1; ++v) {
            for (int u = 1; u <= n - v; ++u) {
                const double bound = std::pow(static_cast<double>(n - v) / n, u);
                for (int s = 0; s <= v; ++s) {
                    const double value = P(s, u + v);
                    ++report.checks;
                    if (value > bound + kOracleTolerance)
                        add_violation(report, {"bound " + witness(n, v, u, s), n, v, u, s, value, bound});
                    if (s < v) {
                        ++report.checks;
                        const double next = P(s + 1, u + v);
                        if (value > next + kOracleTolerance)
                            add_violation(report, {"monotone " + witness(n, v, u, s), n, v, u, s, value, next});
                    }
                }
            }
        }
    }
    report.seconds = clock.seconds();
    return report;
}

VerificationReport verify_level_change_bound(int n_max, const MatrixProvider& matrices)
{
    Stopwatch clock;
    VerificationReport report;
    report.name = "level-change-bound";
    for (int n = 2; n <= n_max; ++n) {
        const auto P = matrices(n);
        const double unchanged = std::pow(1.0 - 1.0 / n, n);
        for (int v = 1; v <= n; ++v) {
            const double bound = static_cast<double>(n - v + 1) / n;
            for (int s = 0; s <= v; ++s) {
                const double value = P(s, v) - (s == v ? unchanged : 0.0);
                ++report.checks;
                if (value > bound + kOracleTolerance)
                    add_violation(report, {witness(n, v, 0, s), n, v, 0, s, value, bound});
            }
        }
    }
    report.seconds = clock.seconds();
    return report;
}

VerificationReport verify_stochastic(int n_max, const MatrixProvider& matrices)
{
    Stopwatch clock;
    VerificationReport report;
    report.name = "row-stochastic-and-symmetric";
    for (int n = 1; n <= n_max; ++n) {
        const auto P = matrices(n);
        for (int v = 0; v <= n; ++v) {
            double sum = 0.0;
            for (double x : P.row(v))
                sum += x;
            ++report.checks;
            if (std::abs(sum - 1.0) > kOracleTolerance)
                add_violation(report, {"row sum n=" + std::to_string(n) + " v=" + std::to_string(v), n, v, 0, 0,
                                       sum, 1.0});
            for (int w = 0; w <= n; ++w) {
                ++report.checks;
                const double diff = std::abs(P(v, w) - P(n - v, n - w));
                if (diff > kOracleTolerance)
                    add_violation(report, {"symmetry n=" + std::to_string(n) + " v=" + std::to_string(v) +
                                               " w=" + std::to_string(w),
                                           n, v, w, 0, diff, kOracleTolerance});
            }
        }
    }
    report.seconds = clock.seconds();
    return report;
}

std::vector<std::size_t> naive_ranks(std::span<const ObjectiveVector> objectives)
{
    const std::size_t m = objectives.size();
    std::vector<std::size_t> rank(m, 0);
    std::size_t assigned = 0;
    for (std::size_t r = 1; assigned < m; ++r) {
        std::vector<std::size_t> layer;
        for (std::size_t i = 0; i < m; ++i) {
            if (rank[i] != 0)
                continue;
            bool dominated = false;
            for (std::size_t j = 0; j < m && !dominated; ++j)
                dominated = rank[j] == 0 && dominates(objectives[j], objectives[i]);
            if (!dominated)
                layer.push_back(i);
        }
        for (auto i : layer)
            rank[i] = r;
        assigned += layer.size();
    }
    return rank;
}

namespace {

BenchmarkSpec random_spec(int max_n, RandomSource& rng)
{
    const bool jump = max_n >= 8 && rng.coin();
    if (jump) {
        const int n = 8 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_n - 7)));
        const int k = 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n / 4 - 1)));
        return BenchmarkSpec::one_jump_zero_jump(n, k);
    }
    return BenchmarkSpec::one_min_max(1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_n))));
}

} // namespace

VerificationReport verify_rank_oracle(std::uint64_t trials, std::size_t max_size, int max_n, std::uint64_t seed)
{
    Stopwatch clock;
    VerificationReport report;
    report.name = "rank-oracle-equivalence";
    RandomSource rng(seed);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const auto spec = random_spec(max_n, rng);
        const auto size = 1 + static_cast<std::size_t>(rng.uniform_below(max_size));
        // Skewed bit densities reach the gap regions and the extremal strings.
        const double density = rng.uniform01();
        std::vector<ObjectiveVector> objs;
        objs.reserve(size);
        for (std::size_t i = 0; i < size; ++i) {
            int ones = 0;
            for (int b = 0; b < spec.n; ++b)
                ones += rng.uniform01() < density ? 1 : 0;
            objs.push_back(evaluate_ones(ones, spec));
        }
        const auto fast = nondominated_sort(std::span<const ObjectiveVector>(objs));
        const auto slow = naive_ranks(objs);
        ++report.checks;
        if (fast.rank != slow) {
            std::ostringstream os;
            os << "trial=" << trial << " n=" << spec.n << " k=" << spec.k << " size=" << size;
            add_violation(report, {os.str(), spec.n, spec.k, 0, 0, 1.0, 0.0});
        }
    }
    report.seconds = clock.seconds();
    return report;
}

VerificationReport verify_crowding_structure(std::uint64_t trials, std::uint64_t seed)
{
    Stopwatch clock;
    VerificationReport report;
    report.name = "crowding-structure";
    RandomSource rng(seed);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const auto spec = random_spec(32, rng);
        const auto structure = pareto_structure(spec);
        const auto size = 1 + static_cast<std::size_t>(rng.uniform_below(4 * structure.front.size()));
        std::vector<ObjectiveVector> objs;
        objs.reserve(size);
        for (std::size_t i = 0; i < size; ++i)
            objs.push_back(structure.front[rng.uniform_below(structure.front.size())]);
        std::vector<std::size_t> front(size);
        for (std::size_t i = 0; i < size; ++i)
            front[i] = i;

        for (auto policy : {SortingPolicy::RandomTies, SortingPolicy::FixedShared}) {
            const auto dist = crowding_distances(objs, front, policy, rng);
            std::map<ObjectiveVector, std::pair<int, int>> per_value; // holders, positive
            for (std::size_t i = 0; i < size; ++i) {
                auto& entry = per_value[objs[i]];
                ++entry.first;
                if (dist[i] > 0.0)
                    ++entry.second;
            }
            for (const auto& [value, counts] : per_value) {
                ++report.checks;
                const auto [holders, positive] = counts;
                const bool ok = policy == SortingPolicy::RandomTies ? positive <= 4
                                                                     : (holders < 2 || positive == 2);
                if (!ok) {
                    std::ostringstream os;
                    os << to_string(policy) << " trial=" << trial << " value=(" << value.f1 << "," << value.f2
                       << ") holders=" << holders;
                    add_violation(report, {os.str(), spec.n, spec.k, 0, 0, static_cast<double>(positive),
                                           policy == SortingPolicy::RandomTies ? 4.0 : 2.0});
                }
            }
        }
    }
    report.seconds = clock.seconds();
    return report;
}

TheoryBounds theory_bounds(int n, int k, double c, std::optional<double> mu)
{
    if (n < 1)
        throw std::invalid_argument("theory_bounds needs n >= 1");
    if (!(c > 0.0))
        throw std::invalid_argument("theory_bounds needs c > 0");
    if (k != 0 && (k < 1 || 2 * k > n))
        throw std::invalid_argument("theory_bounds needs 2k <= n");
    constexpr double e = std::numbers::e;
    const double ec_term = e * c - c + 2.0;

    TheoryBounds b;
    b.n = n;
    b.k = k;
    b.c = c;
    b.mu = mu;
    b.minmax_population = c * (n + 1);
    b.occ_extremal_random = 4.0 * e / (e - 1.0);
    b.occ_extremal_fixed = 2.0 * e * c / ec_term;

    if (k > 0) {
        b.jump_population = c * (n - 2 * k + 3);
        const double N = b.jump_population;
        const double nk = std::pow(static_cast<double>(n), k);
        b.lb_ojzj_evals = 3.0 * (e - 1.0) / 8.0 * N * nk;
        b.rt_fixed_evals = 1.5 * N * (ec_term / (2.0 * c)) * nk;

        const double factor = e / (e - 1.0);
        double running = 0.0;
        for (int i = 0; i <= n - 2 * k; ++i) {
            const double ci = factor * (c * (k + i + 1) + running + 4.0);
            b.c_seq.push_back(ci);
            running += ci;
        }
        b.lower_bound_in_regime = k >= 2 && c >= 4.0;
        b.fixed_in_regime = k >= 3 && c >= 2.0;
    }
    if (mu) {
        b.lb_omm_evals = b.minmax_population * n / b.occ_extremal_random * ((1.0 - *mu) / 3.0) * std::log(n);
        b.minmax_in_regime = n > 16 && c >= 4.0 && *mu >= 0.0 && *mu < 1.0;
    }
    return b;
}

bool c_sequence_consistent(const TheoryBounds& bounds)
{
    constexpr double e = std::numbers::e;
    double running = 0.0;
    for (std::size_t i = 0; i < bounds.c_seq.size(); ++i) {
        const double expected =
            e / (e - 1.0) * (bounds.c * (bounds.k + static_cast<double>(i) + 1) + running + 4.0);
        if (expected != bounds.c_seq[i])
            return false;
        running += bounds.c_seq[i];
    }
    return true;
}

std::string TheoryBounds::report() const
{
    auto regime = [](bool ok) { return ok ? "" : "  [extrapolated]"; };
    std::ostringstream os;
    os << "theory bounds for n=" << n << " k=" << k << " c=" << c;
    if (mu)
        os << " mu=" << *mu;
    os << "\n  (" << kAsymptoticLabel << ")\n";
    os << std::setprecision(10);
    os << "  occupation at outer inner-front level, random ties: " << occ_extremal_random << '\n';
    os << "  occupation at outer inner-front level, fixed sorting: " << occ_extremal_fixed << '\n';
    if (k > 0) {
        os << std::fixed << std::setprecision(1);
        os << "  jump population size N=c(n-2k+3): " << jump_population << '\n';
        os << "  jump lower bound (evaluations): " << lb_ojzj_evals << regime(lower_bound_in_regime) << '\n';
        os << "  jump fixed-sorting runtime (evaluations): " << rt_fixed_evals << regime(fixed_in_regime)
           << '\n';
        os << std::defaultfloat << std::setprecision(6);
        os << "  c_seq[0.." << c_seq.size() - 1 << "]:";
        const std::size_t shown = std::min<std::size_t>(c_seq.size(), 6);
        for (std::size_t i = 0; i < shown; ++i)
            os << ' ' << c_seq[i];
        if (shown < c_seq.size())
            os << " ... " << c_seq.back();
        os << '\n';
    }
    if (lb_omm_evals) {
        os << std::fixed << std::setprecision(1);
        os << "  minmax population size N=c(n+1): " << minmax_population << '\n';
        os << "  minmax lower bound (evaluations): " << *lb_omm_evals << regime(minmax_in_regime) << '\n';
    }
    return os.str();
}

} // namespace nsgadyn
