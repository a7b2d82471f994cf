#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ude/core.hpp"

namespace ude {

enum class StrategyId : std::size_t {
    Rand1Bin = 0,
    CurrentToRand1 = 1,
    CurrentToPBest1Bin = 2,
};

inline constexpr std::size_t kStrategyCount = 3;
inline constexpr std::array<StrategyId, kStrategyCount> kAllStrategies = {
    StrategyId::Rand1Bin, StrategyId::CurrentToRand1, StrategyId::CurrentToPBest1Bin};

inline constexpr std::size_t index_of(StrategyId s) { return static_cast<std::size_t>(s); }
std::string_view to_string(StrategyId s);

// Ranking over a pool of population indices, best first. The i-th best is
// accepted with probability (n - i) / n.
class RankTable {
public:
    RankTable() = default;

    // Pool is population indices [0, n) of a population already sorted best to worst.
    static RankTable from_sorted(std::size_t n);
    // Sorts population indices under sof_compare; ties keep index order.
    static RankTable from_population(std::span<const Candidate> population);

    std::size_t size() const { return order_.size(); }
    const std::vector<std::size_t>& order() const { return order_; }
    const std::vector<double>& accept_prob() const { return accept_prob_; }
    // Acceptance probability of a population index in the pool.
    double accept_prob_of(std::size_t population_index) const;
    bool in_pool(std::size_t population_index) const;

private:
    std::vector<std::size_t> order_;
    std::vector<std::size_t> rank_of_;  // indexed by population index; npos if outside pool
    std::vector<double> accept_prob_;
};

// Draws a pool member not in exclude, accepting by rank. After 10 * pool size
// attempts falls back to a uniform draw among the allowed members.
// Precondition: exclude leaves at least one pool member.
std::size_t rank_select(const RankTable& table, RngStream& rng,
                        std::span<const std::size_t> exclude);

Vector mutate_rand1(std::span<const double> base, std::span<const double> term1,
                    std::span<const double> term2, double F);

Vector mutate_current_to_rand1(std::span<const double> x, std::span<const double> r1,
                               std::span<const double> r2, std::span<const double> r3, double K,
                               double F);

Vector mutate_current_to_pbest1(std::span<const double> x, std::span<const double> pbest,
                                std::span<const double> r1, std::span<const double> r2, double F);

// Gene j comes from the mutant when draws[j] <= CR or j == j_rand. The rng
// overloads draw from (0, 1].
Vector binomial_crossover(std::span<const double> target, std::span<const double> mutant,
                          double CR, std::size_t j_rand, std::span<const double> draws);
Vector binomial_crossover(std::span<const double> target, std::span<const double> mutant,
                          double CR, RngStream& rng);

// Copies a circular block from the mutant starting at start. The block grows
// by one gene per consumed draw while draw <= CR and length < D.
Vector exponential_crossover(std::span<const double> target, std::span<const double> mutant,
                             double CR, std::size_t start, std::span<const double> draws);
Vector exponential_crossover(std::span<const double> target, std::span<const double> mutant,
                             double CR, RngStream& rng);

enum class CrossoverKind { binomial, exponential };

// Everything trial generation needs from the current generation.
struct TrialContext {
    std::span<const Candidate> population;  // sorted best to worst under SOF
    const RankTable* rank = nullptr;         // rank-biased parent pool
    std::size_t pbest_count = 2;
    CrossoverKind crossover = CrossoverKind::binomial;
};

std::size_t pbest_pool_size(std::size_t np, double pbest_fraction);

// Mutant plus crossover for one target, before bound repair. CR is unused by
// CurrentToRand1, which draws its own K.
Vector generate_trial(StrategyId strategy, std::size_t target, double F, double CR,
                      const TrialContext& ctx, RngStream& rng);

}  // namespace ude
