#include "ude/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ude/constraints.hpp"

namespace ude {
namespace {

constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();

bool excluded(std::size_t index, std::span<const std::size_t> exclude)
{
    return std::find(exclude.begin(), exclude.end(), index) != exclude.end();
}

std::size_t uniform_excluding(std::size_t n, RngStream& rng, std::span<const std::size_t> exclude)
{
    std::size_t j;
    do {
        j = rng.index(n);
    } while (excluded(j, exclude));
    return j;
}

// Rank selection when the pool still has an allowed member, otherwise a
// uniform pick from the whole population.
std::size_t rank_or_uniform(const TrialContext& ctx, RngStream& rng,
                            std::span<const std::size_t> exclude)
{
    const auto& order = ctx.rank->order();
    const bool pool_open = std::any_of(order.begin(), order.end(),
                                       [&](std::size_t i) { return !excluded(i, exclude); });
    if (pool_open)
        return rank_select(*ctx.rank, rng, exclude);
    return uniform_excluding(ctx.population.size(), rng, exclude);
}

}  // namespace

std::string_view to_string(StrategyId s)
{
    switch (s) {
    case StrategyId::Rand1Bin:
        return "rand/1/bin";
    case StrategyId::CurrentToRand1:
        return "current-to-rand/1";
    case StrategyId::CurrentToPBest1Bin:
        return "current-to-pbest/1/bin";
    }
    return "?";
}

RankTable RankTable::from_sorted(std::size_t n)
{
    RankTable t;
    t.order_.resize(n);
    std::iota(t.order_.begin(), t.order_.end(), std::size_t{0});
    t.rank_of_ = t.order_;
    t.accept_prob_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        t.accept_prob_[i] = static_cast<double>(n - i) / static_cast<double>(n);
    return t;
}

RankTable RankTable::from_population(std::span<const Candidate> population)
{
    const std::size_t n = population.size();
    RankTable t = from_sorted(n);
    std::stable_sort(t.order_.begin(), t.order_.end(), [&](std::size_t a, std::size_t b) {
        return sof_compare(population[a], population[b]) == Ordering::better;
    });
    for (std::size_t r = 0; r < n; ++r)
        t.rank_of_[t.order_[r]] = r;
    return t;
}

double RankTable::accept_prob_of(std::size_t population_index) const
{
    return accept_prob_[rank_of_[population_index]];
}

bool RankTable::in_pool(std::size_t population_index) const
{
    return population_index < rank_of_.size() && rank_of_[population_index] != kNoRank;
}

std::size_t rank_select(const RankTable& table, RngStream& rng,
                        std::span<const std::size_t> exclude)
{
    const auto& order = table.order();
    const std::size_t n = order.size();
    const std::size_t attempts = 10 * n;
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        const std::size_t j = order[rng.index(n)];
        if (excluded(j, exclude))
            continue;
        if (rng.uniform() < table.accept_prob_of(j))
            return j;
    }
    std::vector<std::size_t> allowed;
    for (std::size_t j : order)
        if (!excluded(j, exclude))
            allowed.push_back(j);
    return allowed[rng.index(allowed.size())];
}

Vector mutate_rand1(std::span<const double> base, std::span<const double> term1,
                    std::span<const double> term2, double F)
{
    Vector v(base.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = base[j] + F * (term1[j] - term2[j]);
    return v;
}

Vector mutate_current_to_rand1(std::span<const double> x, std::span<const double> r1,
                               std::span<const double> r2, std::span<const double> r3, double K,
                               double F)
{
    Vector v(x.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = x[j] + K * (r1[j] - x[j]) + F * (r2[j] - r3[j]);
    return v;
}

Vector mutate_current_to_pbest1(std::span<const double> x, std::span<const double> pbest,
                                std::span<const double> r1, std::span<const double> r2, double F)
{
    Vector v(x.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = x[j] + F * (pbest[j] - x[j]) + F * (r1[j] - r2[j]);
    return v;
}

namespace {

// Uniform on (0, 1], so "draw <= CR" never fires at CR = 0 and always fires at CR = 1.
double crossover_draw(RngStream& rng)
{
    return 1.0 - rng.uniform();
}

}  // namespace

Vector binomial_crossover(std::span<const double> target, std::span<const double> mutant,
                          double CR, std::size_t j_rand, std::span<const double> draws)
{
    Vector u(target.begin(), target.end());
    for (std::size_t j = 0; j < u.size(); ++j)
        if (draws[j] <= CR || j == j_rand)
            u[j] = mutant[j];
    return u;
}

Vector binomial_crossover(std::span<const double> target, std::span<const double> mutant,
                          double CR, RngStream& rng)
{
    const std::size_t j_rand = rng.index(target.size());
    Vector draws(target.size());
    for (auto& d : draws)
        d = crossover_draw(rng);
    return binomial_crossover(target, mutant, CR, j_rand, draws);
}

Vector exponential_crossover(std::span<const double> target, std::span<const double> mutant,
                             double CR, std::size_t start, std::span<const double> draws)
{
    const std::size_t d = target.size();
    Vector u(target.begin(), target.end());
    std::size_t length = 1;
    for (double draw : draws) {
        if (length >= d || draw > CR)
            break;
        ++length;
    }
    for (std::size_t k = 0; k < length; ++k)
        u[(start + k) % d] = mutant[(start + k) % d];
    return u;
}

Vector exponential_crossover(std::span<const double> target, std::span<const double> mutant,
                             double CR, RngStream& rng)
{
    const std::size_t d = target.size();
    const std::size_t start = rng.index(d);
    Vector draws;
    while (draws.size() + 1 < d) {
        draws.push_back(crossover_draw(rng));
        if (draws.back() > CR)
            break;
    }
    return exponential_crossover(target, mutant, CR, start, draws);
}

std::size_t pbest_pool_size(std::size_t np, double pbest_fraction)
{
    const auto k = static_cast<std::size_t>(std::lround(pbest_fraction * static_cast<double>(np)));
    return std::min(np, std::max<std::size_t>(2, k));
}

Vector generate_trial(StrategyId strategy, std::size_t target, double F, double CR,
                      const TrialContext& ctx, RngStream& rng)
{
    const auto& pop = ctx.population;
    const std::size_t np = pop.size();
    const Vector& x = pop[target].x;

    auto crossover = [&](const Vector& mutant) {
        return ctx.crossover == CrossoverKind::exponential
                   ? exponential_crossover(x, mutant, CR, rng)
                   : binomial_crossover(x, mutant, CR, rng);
    };

    switch (strategy) {
    case StrategyId::Rand1Bin: {
        std::array<std::size_t, 3> picked{target, 0, 0};
        picked[1] = rank_or_uniform(ctx, rng, std::span(picked).first(1));
        picked[2] = rank_or_uniform(ctx, rng, std::span(picked).first(2));
        const std::size_t r3 = uniform_excluding(np, rng, picked);
        return crossover(mutate_rand1(pop[picked[1]].x, pop[picked[2]].x, pop[r3].x, F));
    }
    case StrategyId::CurrentToRand1: {
        const double K = rng.uniform();
        std::array<std::size_t, 3> picked{target, 0, 0};
        picked[1] = rank_or_uniform(ctx, rng, std::span(picked).first(1));
        picked[2] = rank_or_uniform(ctx, rng, std::span(picked).first(2));
        const std::size_t r3 = uniform_excluding(np, rng, picked);
        return mutate_current_to_rand1(x, pop[picked[1]].x, pop[picked[2]].x, pop[r3].x, K, F);
    }
    case StrategyId::CurrentToPBest1Bin: {
        const std::size_t pbest = rng.index(std::min(ctx.pbest_count, np));
        std::array<std::size_t, 2> picked{target, 0};
        picked[1] = rank_or_uniform(ctx, rng, std::span(picked).first(1));
        const std::size_t r2 = uniform_excluding(np, rng, picked);
        return crossover(mutate_current_to_pbest1(x, pop[pbest].x, pop[picked[1]].x, pop[r2].x, F));
    }
    }
    return x;
}

}  // namespace ude
