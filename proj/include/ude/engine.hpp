#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ude/adaptation.hpp"
#include "ude/constraints.hpp"
#include "ude/core.hpp"
#include "ude/strategies.hpp"

namespace ude {

// What happened in one generation, including which mode-dependent rules ran.
struct GenerationRecord {
    std::size_t generation = 0;
    double eps = 0.0;
    StrategyProbabilities probabilities{};
    std::size_t evaluations = 0;
    std::size_t fes_used = 0;
    std::size_t replacements = 0;
    std::size_t archive_size = 0;
    std::size_t stagnated = 0;
    bool stagnation_replacement = false;
    std::size_t rank_pool_size = 0;
    SuccessRule success_rule = SuccessRule::wins_and_losses;
    std::size_t ledger_window_total = 0;
    double best_f = 0.0;          // population best under SOF
    double best_violation = 0.0;
    double elite_f = 0.0;
    double elite_violation = 0.0;

    bool operator==(const GenerationRecord&) const = default;
};

struct RunReport {
    Candidate best;
    std::uint64_t seed = 0;
    std::size_t fes_used = 0;
    std::size_t generations = 0;
    std::size_t stagnation_replacements = 0;
    EpsSchedule eps_schedule;
    std::vector<GenerationRecord> trace;  // empty unless EngineConfig::trace
};

struct EngineState {
    std::vector<Candidate> population;
    std::size_t generation = 0;
    std::size_t fes_used = 0;
    std::size_t max_fes = 0;
    EpsSchedule eps_schedule;
    StrategyLedger ledger{1};
    std::vector<ParameterMemory> memories;  // indexed by StrategyId
    std::vector<std::size_t> stagnation_counters;
    std::vector<Candidate> archive;
    Candidate elite;
};

// Trials per full generation: three per top target plus one per bottom target.
std::size_t evaluations_per_generation(const EngineConfig& config);
// Generation at which eps reaches zero.
std::size_t tc_generations(const EngineConfig& config);

// Initial population, eps schedule, ledger and memories. Consumes np evaluations.
EngineState initialize_state(const ProblemSpec& spec, const EngineConfig& config, RngStream& rng);

GenerationRecord generation_step(EngineState& state, const ProblemSpec& spec,
                                 const EngineConfig& config, RngStream& rng);

struct StagnationOutcome {
    std::size_t stagnated = 0;
    bool replaced = false;
    std::size_t slot = 0;
};

// Replaces the most stagnated individual with an archive member once more
// than sprop * np individuals have survived sg or more generations.
StagnationOutcome stagnation_step(EngineState& state, const EngineConfig& config, RngStream& rng);

void update_elite(EngineState& state);

// Keeps the best capacity candidates under SOF; ties keep insertion order.
void prune_archive(std::vector<Candidate>& archive, std::size_t capacity);

// Improvement weight for a successful trial: violation reduction when the
// target was infeasible, objective reduction otherwise.
double success_weight(const Candidate& target, const Candidate& trial);

RunReport run(const ProblemSpec& spec, const EngineConfig& config, std::uint64_t seed);

}  // namespace ude
