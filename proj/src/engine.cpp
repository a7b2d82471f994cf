#include "ude/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ude/kernels.hpp"

namespace ude {
namespace {

constexpr double kMinSuccessWeight = 1e-12;

struct PendingTrial {
    std::size_t target;
    StrategyId strategy;
    ControlParameters params;
};

double effective_cp_cap(const EngineConfig& config)
{
    return config.mode == Mode::ude2 ? std::numeric_limits<double>::infinity() : config.cp_cap;
}

SuccessRule success_rule(const EngineConfig& config)
{
    return config.mode == Mode::ude2 ? SuccessRule::wins_only : SuccessRule::wins_and_losses;
}

// Sorts population and stagnation counters together, best first.
void sort_population(EngineState& state)
{
    const std::size_t np = state.population.size();
    std::vector<std::size_t> perm(np);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return sof_compare(state.population[a], state.population[b]) == Ordering::better;
    });
    std::vector<Candidate> population;
    std::vector<std::size_t> counters;
    population.reserve(np);
    counters.reserve(np);
    for (std::size_t i : perm) {
        population.push_back(std::move(state.population[i]));
        counters.push_back(state.stagnation_counters[i]);
    }
    state.population = std::move(population);
    state.stagnation_counters = std::move(counters);
}

const Candidate& best_of(const std::vector<Candidate>& population)
{
    return *std::min_element(population.begin(), population.end(), SofLess{});
}

}  // namespace

std::size_t evaluations_per_generation(const EngineConfig& config)
{
    return 3 * config.top_size + (config.np - config.top_size);
}

std::size_t tc_generations(const EngineConfig& config)
{
    const std::size_t generations = (config.max_fes - config.np) / evaluations_per_generation(config);
    const auto tc = static_cast<std::size_t>(
        std::floor(config.eps_tc_fraction * static_cast<double>(generations)));
    return std::max<std::size_t>(tc, 1);
}

double success_weight(const Candidate& target, const Candidate& trial)
{
    const double gain = target.violation > 0.0 ? target.violation - trial.violation
                                               : target.f - trial.f;
    return gain > 0.0 ? gain : kMinSuccessWeight;
}

void prune_archive(std::vector<Candidate>& archive, std::size_t capacity)
{
    if (archive.size() <= capacity)
        return;
    std::stable_sort(archive.begin(), archive.end(), SofLess{});
    archive.resize(capacity);
}

void update_elite(EngineState& state)
{
    const Candidate& best = best_of(state.population);
    if (sof_compare(best, state.elite) == Ordering::better)
        state.elite = best;
}

StagnationOutcome stagnation_step(EngineState& state, const EngineConfig& config, RngStream& rng)
{
    StagnationOutcome out;
    const auto& counters = state.stagnation_counters;
    out.stagnated = static_cast<std::size_t>(
        std::count_if(counters.begin(), counters.end(), [&](std::size_t c) { return c >= config.sg; }));
    const double threshold = config.sprop * static_cast<double>(state.population.size());
    if (!(static_cast<double>(out.stagnated) > threshold) || state.archive.empty())
        return out;

    const std::size_t most = *std::max_element(counters.begin(), counters.end());
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < counters.size(); ++i)
        if (counters[i] == most)
            tied.push_back(i);
    const std::size_t slot = tied[rng.index(tied.size())];
    const std::size_t pick = rng.index(state.archive.size());

    state.population[slot] = std::move(state.archive[pick]);
    state.archive.erase(state.archive.begin() + static_cast<std::ptrdiff_t>(pick));
    state.stagnation_counters[slot] = 0;
    out.replaced = true;
    out.slot = slot;
    return out;
}

EngineState initialize_state(const ProblemSpec& spec, const EngineConfig& config, RngStream& rng)
{
    EngineState state;
    state.max_fes = config.max_fes;
    state.population = init_population(spec, config.np, rng);
    state.fes_used = config.np;

    double eps0 = 0.0;
    for (const auto& c : state.population)
        eps0 = std::max(eps0, c.violation);
    state.eps_schedule = make_eps_schedule(eps0, config.eps_lambda, config.eps_p,
                                           tc_generations(config), effective_cp_cap(config),
                                           config.cp_min);

    state.ledger = StrategyLedger(config.learning_period, success_rule(config));
    state.memories.assign(kStrategyCount, ParameterMemory(config.memory_size));
    state.stagnation_counters.assign(config.np, 0);
    state.elite = best_of(state.population);
    return state;
}

GenerationRecord generation_step(EngineState& state, const ProblemSpec& spec,
                                 const EngineConfig& config, RngStream& rng)
{
    const std::size_t np = config.np;
    const std::size_t top = config.top_size;
    const std::size_t G = state.generation;

    GenerationRecord record;
    record.generation = G;
    record.success_rule = success_rule(config);

    // Sorting moves the fittest members into the top sub-population.
    sort_population(state);

    const std::size_t pool = config.mode == Mode::ude2 ? top : np;
    const RankTable rank = RankTable::from_sorted(pool);
    record.rank_pool_size = pool;

    TrialContext ctx;
    ctx.population = state.population;
    ctx.rank = &rank;
    ctx.pbest_count = pbest_pool_size(np, config.pbest_fraction);
    ctx.crossover = spec.dimension >= config.exponential_crossover_dimension
                        ? CrossoverKind::exponential
                        : CrossoverKind::binomial;

    const double eps = eps_at(state.eps_schedule, G);
    record.eps = eps;
    record.probabilities = state.ledger.probabilities();
    state.ledger.open_generation(G);

    std::vector<PendingTrial> pending;
    std::vector<Vector> xs;
    pending.reserve(evaluations_per_generation(config));
    xs.reserve(evaluations_per_generation(config));
    auto add_trial = [&](std::size_t target, StrategyId s) {
        const ControlParameters params = state.memories[index_of(s)].sample(rng);
        Vector trial = generate_trial(s, target, params.F, params.CR, ctx, rng);
        xs.push_back(repair_bounds(trial, state.population[target].x, spec));
        pending.push_back({target, s, params});
    };
    for (std::size_t i = 0; i < top; ++i)
        for (StrategyId s : kAllStrategies)
            add_trial(i, s);
    for (std::size_t i = top; i < np; ++i)
        add_trial(i, draw_strategy(record.probabilities, rng));

    // Budget exhaustion drops the tail of the generation.
    const std::size_t budget = state.max_fes - state.fes_used;
    const std::size_t n_eval = std::min(xs.size(), budget);
    xs.resize(n_eval);
    std::vector<Candidate> trials = kernels::evaluate_batch(spec, std::move(xs),
                                                            config.parallel_evaluation);
    state.fes_used += n_eval;
    record.evaluations = n_eval;

    const bool full_ledger = config.mode == Mode::ude3;
    std::vector<bool> replaced(np, false);
    std::vector<Candidate> rejected;
    std::vector<std::vector<Success>> successes(kStrategyCount);

    std::size_t k = 0;
    for (std::size_t i = 0; i < top && k < n_eval; ++i) {
        const std::size_t first = k;
        const std::size_t last = std::min(k + kStrategyCount, n_eval);
        std::size_t best = first;
        for (std::size_t t = first + 1; t < last; ++t)
            if (sof_compare(trials[t], trials[best]) == Ordering::better)
                best = t;
        for (std::size_t t = first; t < last; ++t) {
            if (t == best)
                state.ledger.record_outcome(pending[t].strategy, true, G);
            else if (full_ledger)
                state.ledger.record_outcome(pending[t].strategy, false, G);
        }

        Candidate& target = state.population[i];
        const bool wins = eps_compare(trials[best], target, eps) == Ordering::better;
        for (std::size_t t = first; t < last; ++t) {
            if (t == best && wins) {
                successes[index_of(pending[t].strategy)].push_back(
                    {pending[t].params.F, pending[t].params.CR, success_weight(target, trials[t])});
                continue;
            }
            rejected.push_back(std::move(trials[t]));
        }
        if (wins) {
            target = std::move(trials[best]);
            replaced[i] = true;
        }
        k = last;
    }
    for (; k < n_eval; ++k) {
        const std::size_t i = pending[k].target;
        Candidate& target = state.population[i];
        const bool wins = eps_compare(trials[k], target, eps) == Ordering::better;
        if (full_ledger)
            state.ledger.record_outcome(pending[k].strategy, wins, G);
        if (wins) {
            target = std::move(trials[k]);
            replaced[i] = true;
        } else {
            rejected.push_back(std::move(trials[k]));
        }
    }
    record.replacements =
        static_cast<std::size_t>(std::count(replaced.begin(), replaced.end(), true));

    if (config.mode == Mode::ude3) {
        for (auto& c : rejected)
            state.archive.push_back(std::move(c));
        prune_archive(state.archive, np);
    }

    for (std::size_t i = 0; i < np; ++i)
        state.stagnation_counters[i] = replaced[i] ? 0 : state.stagnation_counters[i] + 1;

    if (config.mode == Mode::ude3) {
        const StagnationOutcome stagnation = stagnation_step(state, config, rng);
        record.stagnated = stagnation.stagnated;
        record.stagnation_replacement = stagnation.replaced;
    } else {
        record.stagnated = static_cast<std::size_t>(
            std::count_if(state.stagnation_counters.begin(), state.stagnation_counters.end(),
                          [&](std::size_t c) { return c >= config.sg; }));
    }

    update_elite(state);

    for (std::size_t s = 0; s < kStrategyCount; ++s)
        state.memories[s].update(successes[s]);

    ++state.generation;

    const Candidate& best = best_of(state.population);
    record.best_f = best.f;
    record.best_violation = best.violation;
    record.elite_f = state.elite.f;
    record.elite_violation = state.elite.violation;
    record.archive_size = state.archive.size();
    record.fes_used = state.fes_used;
    record.ledger_window_total = state.ledger.window_total();
    return record;
}

RunReport run(const ProblemSpec& spec, const EngineConfig& config, std::uint64_t seed)
{
    config.validate();
    spec.validate();

    RngStream rng(seed);
    EngineState state = initialize_state(spec, config, rng);

    RunReport report;
    report.seed = seed;
    report.eps_schedule = state.eps_schedule;
    while (state.fes_used < state.max_fes) {
        GenerationRecord record = generation_step(state, spec, config, rng);
        if (record.stagnation_replacement)
            ++report.stagnation_replacements;
        if (config.trace)
            report.trace.push_back(record);
    }
    report.best = state.elite;
    report.fes_used = state.fes_used;
    report.generations = state.generation;
    return report;
}

}  // namespace ude
