#include "nsgadyn/engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nsgadyn {

std::string_view to_string(SortingPolicy policy) noexcept
{
    return policy == SortingPolicy::RandomTies ? "random" : "fixed";
}

std::string_view to_string(SelectionMode mode) noexcept
{
    switch (mode) {
    case SelectionMode::Fair:
        return "fair";
    case SelectionMode::Uniform:
        return "uniform";
    case SelectionMode::BinaryTournament:
        return "tournament";
    }
    return "fair";
}

RankedPopulation nondominated_sort(std::span<const ObjectiveVector> objectives)
{
    const std::size_t m = objectives.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = objectives[a];
        const auto& y = objectives[b];
        return x.f1 != y.f1 ? x.f1 > y.f1 : x.f2 > y.f2;
    });

    // Members arrive with non-increasing f1, so a member is dominated by some
    // member of a front iff it is dominated by the most recently added one.
    RankedPopulation ranked;
    ranked.rank.assign(m, 0);
    std::vector<ObjectiveVector> last;
    for (auto idx : order) {
        const auto& p = objectives[idx];
        auto it = std::partition_point(last.begin(), last.end(),
                                       [&](const ObjectiveVector& q) { return dominates(q, p); });
        const auto r = static_cast<std::size_t>(it - last.begin());
        if (it == last.end()) {
            last.push_back(p);
            ranked.fronts.emplace_back();
        } else {
            *it = p;
        }
        ranked.fronts[r].push_back(idx);
        ranked.rank[idx] = r + 1;
    }
    for (auto& front : ranked.fronts)
        std::sort(front.begin(), front.end());
    return ranked;
}

RankedPopulation nondominated_sort(const Population& population)
{
    const auto objs = objectives_of(population);
    return nondominated_sort(std::span<const ObjectiveVector>(objs));
}

namespace {

// Orders hold local positions into `front`.
std::vector<double> crowding_local(std::span<const ObjectiveVector> objectives, std::span<const std::size_t> front,
                                   std::vector<std::size_t> order_f1, std::vector<std::size_t> order_f2)
{
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m == 0)
        return dist;
    if (m <= 2) {
        std::fill(dist.begin(), dist.end(), kInfiniteDistance);
        return dist;
    }
    auto accumulate = [&](std::vector<std::size_t>& order, auto value) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
        dist[order.front()] = kInfiniteDistance;
        dist[order.back()] = kInfiniteDistance;
        const double range = value(order.back()) - value(order.front());
        if (range <= 0.0)
            return;
        for (std::size_t i = 1; i + 1 < m; ++i)
            dist[order[i]] += (value(order[i + 1]) - value(order[i - 1])) / range;
    };
    accumulate(order_f1, [&](std::size_t pos) { return static_cast<double>(objectives[front[pos]].f1); });
    accumulate(order_f2, [&](std::size_t pos) { return static_cast<double>(objectives[front[pos]].f2); });
    return dist;
}

std::vector<std::size_t> shuffled_positions(std::size_t m, RandomSource& rng)
{
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    return order;
}

std::vector<std::size_t> to_local(std::span<const std::size_t> front, std::span<const std::size_t> global_order)
{
    if (global_order.size() != front.size())
        throw std::invalid_argument("tie order must be a permutation of the front");
    std::vector<std::pair<std::size_t, std::size_t>> lookup;
    lookup.reserve(front.size());
    for (std::size_t i = 0; i < front.size(); ++i)
        lookup.emplace_back(front[i], i);
    std::sort(lookup.begin(), lookup.end());
    std::vector<std::size_t> local;
    local.reserve(front.size());
    std::vector<char> used(front.size(), 0);
    for (auto g : global_order) {
        auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(g, std::size_t{0}));
        if (it == lookup.end() || it->first != g || used[it->second])
            throw std::invalid_argument("tie order must be a permutation of the front");
        used[it->second] = 1;
        local.push_back(it->second);
    }
    return local;
}

} // namespace

std::vector<double> crowding_distances_with_order(std::span<const ObjectiveVector> objectives,
                                                  std::span<const std::size_t> front,
                                                  std::span<const std::size_t> tie_order_f1,
                                                  std::span<const std::size_t> tie_order_f2)
{
    return crowding_local(objectives, front, to_local(front, tie_order_f1), to_local(front, tie_order_f2));
}

std::vector<double> crowding_distances(std::span<const ObjectiveVector> objectives,
                                       std::span<const std::size_t> front, SortingPolicy policy,
                                       RandomSource& rng)
{
    auto order_f1 = shuffled_positions(front.size(), rng);
    auto order_f2 = policy == SortingPolicy::FixedShared ? order_f1 : shuffled_positions(front.size(), rng);
    return crowding_local(objectives, front, std::move(order_f1), std::move(order_f2));
}

void assign_crowding(RankedPopulation& ranked, std::span<const ObjectiveVector> objectives, SortingPolicy policy,
                     RandomSource& rng)
{
    ranked.crowding.assign(objectives.size(), 0.0);
    for (const auto& front : ranked.fronts) {
        const auto dist = crowding_distances(objectives, front, policy, rng);
        for (std::size_t i = 0; i < front.size(); ++i)
            ranked.crowding[front[i]] = dist[i];
    }
}

SurvivalResult select_survivors(std::span<const ObjectiveVector> combined, std::size_t capacity,
                                SortingPolicy policy, RandomSource& rng)
{
    SurvivalResult out;
    out.ranked = nondominated_sort(combined);
    assign_crowding(out.ranked, combined, policy, rng);
    out.survivors.reserve(std::min(capacity, combined.size()));
    out.critical_rank = out.ranked.fronts.size() + 1;

    for (std::size_t r = 0; r < out.ranked.fronts.size(); ++r) {
        const auto& front = out.ranked.fronts[r];
        const std::size_t room = capacity - out.survivors.size();
        if (front.size() <= room) {
            out.survivors.insert(out.survivors.end(), front.begin(), front.end());
            if (front.size() == room) {
                out.critical_rank = r + 2;
                break;
            }
            continue;
        }
        out.critical_rank = r + 1;
        std::vector<std::size_t> candidates(front.begin(), front.end());
        rng.shuffle(candidates);
        std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
            return out.ranked.crowding[a] > out.ranked.crowding[b];
        });
        out.survivors.insert(out.survivors.end(), candidates.begin(),
                             candidates.begin() + static_cast<std::ptrdiff_t>(room));
        break;
    }
    std::sort(out.survivors.begin(), out.survivors.end());
    return out;
}

std::vector<std::size_t> select_parents(std::size_t population_size, SelectionMode mode, RandomSource& rng,
                                        std::span<const std::size_t> rank, std::span<const double> crowding)
{
    std::vector<std::size_t> parents(population_size);
    switch (mode) {
    case SelectionMode::Fair:
        std::iota(parents.begin(), parents.end(), std::size_t{0});
        break;
    case SelectionMode::Uniform:
        for (auto& p : parents)
            p = static_cast<std::size_t>(rng.uniform_below(population_size));
        break;
    case SelectionMode::BinaryTournament:
        if (rank.size() != population_size || crowding.size() != population_size)
            throw std::invalid_argument("tournament selection needs rank and crowding for every member");
        for (auto& p : parents) {
            const auto a = static_cast<std::size_t>(rng.uniform_below(population_size));
            const auto b = static_cast<std::size_t>(rng.uniform_below(population_size));
            if (rank[a] != rank[b])
                p = rank[a] < rank[b] ? a : b;
            else if (crowding[a] != crowding[b])
                p = crowding[a] > crowding[b] ? a : b;
            else
                p = rng.coin() ? a : b;
        }
        break;
    }
    return parents;
}

Bitstring mutate_bitwise(const Bitstring& x, RandomSource& rng)
{
    Bitstring y = x;
    const std::uint64_t n = x.size();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (rng.one_in(n))
            y.flip(i);
    return y;
}

void RunConfig::validate() const
{
    if (population_size < 1)
        throw std::invalid_argument("population size must be at least 1");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
}

namespace {

// Per inner-front value: rank-1 holders in R_t and how many of them have
// positive crowding distance.
struct InnerHolders {
    std::vector<std::size_t> holders;
    std::vector<std::size_t> positive;
};

InnerHolders count_inner_holders(const ParetoStructure& structure, std::span<const ObjectiveVector> combined,
                                 const RankedPopulation& ranked)
{
    InnerHolders h;
    h.holders.assign(structure.front.size(), 0);
    h.positive.assign(structure.front.size(), 0);
    for (std::size_t i = 0; i < combined.size(); ++i) {
        if (ranked.rank[i] != 1 || !structure.on_inner_front(combined[i]))
            continue;
        const auto idx = static_cast<std::size_t>(structure.front_index(combined[i]));
        ++h.holders[idx];
        if (ranked.crowding[i] > 0.0)
            ++h.positive[idx];
    }
    return h;
}

} // namespace

RunResult run(const RunConfig& config)
{
    config.validate();
    const auto& spec = config.benchmark;
    const std::size_t N = config.population_size;
    const auto structure = pareto_structure(spec);
    const bool tournament = config.selection == SelectionMode::BinaryTournament;
    const bool fixed = config.sorting == SortingPolicy::FixedShared;

    RandomSource rng(config.seed);
    RunResult result;

    Population parents = random_population(static_cast<std::size_t>(spec.n), N, rng);
    evaluate_all(parents, spec);
    std::vector<ObjectiveVector> parent_objs = objectives_of(parents);

    auto& trace = result.trace;
    trace.initial_in_inner_set = std::all_of(parents.begin(), parents.end(), [&](const Individual& ind) {
        return structure.in_inner_set(static_cast<int>(ind.ones_count()));
    });
    const std::size_t elitism_factor = fixed ? 2 : 4;
    trace.elitism_checked = N >= elitism_factor * spec.front_size();

    std::vector<std::size_t> parent_rank;
    std::vector<double> parent_crowding;
    if (tournament) {
        auto ranked = nondominated_sort(std::span<const ObjectiveVector>(parent_objs));
        assign_crowding(ranked, parent_objs, config.sorting, rng);
        parent_rank = std::move(ranked.rank);
        parent_crowding = std::move(ranked.crowding);
    }

    const std::uint64_t stride = snapshot_stride(spec);
    std::vector<OccupationSnapshot> snapshots;
    SurvivalCounters survival;
    LevelFlowCounters flows(spec.n);

    auto status = coverage_status(parent_objs, structure);
    result.phase.observe(status, 0);
    if (config.record_dynamics)
        snapshots.push_back(occupation(parents, spec.n, 0));

    std::uint64_t t = 0;
    while (!status.full_front_covered && t < config.max_iterations) {
        const bool in_window = result.phase.in_window(t);

        const auto selected = select_parents(N, config.selection, rng, parent_rank, parent_crowding);
        Population children;
        children.reserve(N);
        for (auto p : selected) {
            auto child = mutate_bitwise(parents[p].genome(), rng);
            if (config.record_dynamics && in_window) {
                if (child == parents[p].genome())
                    flows.unchanged[child.ones_count()] += 1.0;
                else
                    flows.flipped[child.ones_count()] += 1.0;
            }
            children.push_back(evaluated(std::move(child), spec));
        }
        if (config.record_dynamics && in_window)
            ++flows.iterations;

        std::vector<ObjectiveVector> combined = parent_objs;
        combined.reserve(2 * N);
        for (const auto& c : children)
            combined.push_back(c.objectives());

        auto survival_step = select_survivors(combined, N, config.sorting, rng);
        const auto& ranked = survival_step.ranked;

        std::vector<char> kept(combined.size(), 0);
        for (auto idx : survival_step.survivors)
            kept[idx] = 1;
        for (std::size_t i = 0; i < combined.size(); ++i)
            if (ranked.rank[i] < survival_step.critical_rank && !kept[i]) {
                ++trace.survivor_violations;
                break;
            }

        if (fixed) {
            const auto holders = count_inner_holders(structure, combined, ranked);
            bool all_doubled = !structure.inner_front.empty();
            for (const auto& v : structure.inner_front) {
                const auto idx = static_cast<std::size_t>(structure.front_index(v));
                all_doubled = all_doubled && holders.holders[idx] >= 2;
            }
            if (!result.phase.tightening_at && all_doubled)
                result.phase.tightening_at = t;
            if (result.phase.tightening_at) {
                ++trace.fixed_structure_checks;
                for (const auto& v : structure.inner_front) {
                    const auto idx = static_cast<std::size_t>(structure.front_index(v));
                    if (holders.holders[idx] >= 2 && holders.positive[idx] != 2) {
                        ++trace.fixed_structure_violations;
                        break;
                    }
                }
            }
        }

        if (config.probe_survival && in_window && (!fixed || result.phase.tightening_at))
            survival_frequency_probe(survival, ranked.rank, ranked.crowding, kept);

        Population next;
        next.reserve(N);
        std::vector<ObjectiveVector> next_objs;
        next_objs.reserve(N);
        std::vector<std::size_t> next_rank;
        std::vector<double> next_crowding;
        for (auto idx : survival_step.survivors) {
            next.push_back(idx < N ? parents[idx] : children[idx - N]);
            next_objs.push_back(combined[idx]);
            if (tournament) {
                next_rank.push_back(ranked.rank[idx]);
                next_crowding.push_back(ranked.crowding[idx]);
            }
        }

        if (trace.initial_in_inner_set) {
            const bool inside = std::all_of(next.begin(), next.end(), [&](const Individual& ind) {
                return structure.in_pareto_set(static_cast<int>(ind.ones_count()));
            });
            if (!inside)
                ++trace.pareto_set_violations;
        }

        if (trace.elitism_checked) {
            std::vector<char> before(structure.front.size(), 0);
            std::vector<char> after(structure.front.size(), 0);
            for (const auto& v : parent_objs)
                if (auto idx = structure.front_index(v); idx >= 0)
                    before[static_cast<std::size_t>(idx)] = 1;
            for (const auto& v : next_objs)
                if (auto idx = structure.front_index(v); idx >= 0)
                    after[static_cast<std::size_t>(idx)] = 1;
            for (std::size_t i = 0; i < before.size(); ++i)
                if (before[i] && !after[i]) {
                    ++trace.elitism_violations;
                    break;
                }
        }

        parents = std::move(next);
        parent_objs = std::move(next_objs);
        parent_rank = std::move(next_rank);
        parent_crowding = std::move(next_crowding);
        ++t;

        status = coverage_status(parent_objs, structure);
        result.phase.observe(status, t);
        if (config.record_dynamics)
            if (auto snap = maybe_snapshot(parents, spec.n, t, stride))
                snapshots.push_back(std::move(*snap));
    }

    result.covered = status.full_front_covered;
    result.iterations = t;
    result.evaluations = static_cast<std::uint64_t>(N) * (t + 1);

    if (config.record_dynamics || config.probe_survival) {
        DynamicsSummary summary = finalize(snapshots, result.phase, spec.n);
        if (config.probe_survival)
            summary.survival_zero_crowding = survival;
        if (config.record_dynamics) {
            if (flows.iterations > 0) {
                const auto denom = static_cast<double>(flows.iterations);
                for (auto& v : flows.unchanged)
                    v /= denom;
                for (auto& v : flows.flipped)
                    v /= denom;
            }
            summary.level_flows = std::move(flows);
        }
        result.dynamics = std::move(summary);
    }
    return result;
}

} // namespace nsgadyn
