#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ude/rng.hpp"
#include "ude/strategies.hpp"

namespace ude {

using StrategyProbabilities = std::array<double, kStrategyCount>;

// How the ledger turns counts into probabilities.
enum class SuccessRule {
    wins_and_losses,  // S_k = ns_k / (ns_k + nf_k) + 0.01, normalized
    wins_only,        // SR_k = NW_k / sum NW
};

// Per-strategy win/loss counts for the last learning_period generations.
class StrategyLedger {
public:
    StrategyLedger(std::size_t learning_period, SuccessRule rule = SuccessRule::wins_and_losses);

    // Opens the bucket for generation, evicting buckets older than the window.
    // Generations may be skipped; they count as empty buckets.
    void open_generation(std::size_t generation);
    void record_outcome(StrategyId strategy, bool win, std::size_t generation);

    StrategyProbabilities probabilities() const;

    std::size_t learning_period() const { return learning_period_; }
    // Number of generation buckets opened so far (not capped by the window).
    std::size_t generations_recorded() const { return generations_recorded_; }
    std::array<std::size_t, kStrategyCount> window_wins() const;
    std::array<std::size_t, kStrategyCount> window_losses() const;
    std::size_t window_total() const;

private:
    struct Bucket {
        std::array<std::size_t, kStrategyCount> wins{};
        std::array<std::size_t, kStrategyCount> losses{};
    };

    std::size_t learning_period_;
    SuccessRule rule_;
    std::vector<Bucket> ring_;
    std::size_t current_ = 0;
    std::size_t generations_recorded_ = 0;
};

// SaDE probabilities from window counts: S_k = ns/(ns+nf) + 0.01 (0.01 when
// the strategy has no trials), p_k = S_k / sum S.
StrategyProbabilities sade_probabilities(std::span<const std::size_t> wins,
                                         std::span<const std::size_t> losses);

// Draws a strategy index by inverse CDF.
StrategyId draw_strategy(const StrategyProbabilities& p, RngStream& rng);

struct ControlParameters {
    double F = 0.5;
    double CR = 0.5;
};

struct Success {
    double F;
    double CR;
    double weight;
};

// Success-history memory of H (M_F, M_CR) location pairs.
class ParameterMemory {
public:
    explicit ParameterMemory(std::size_t size, double initial_f = 0.5, double initial_cr = 0.5);

    ControlParameters sample(RngStream& rng) const;
    // Weighted Lehmer mean into M_F, weighted mean into M_CR, then advance the
    // cursor. No-op for an empty list.
    void update(std::span<const Success> successes);

    const std::vector<double>& mf() const { return mf_; }
    const std::vector<double>& mcr() const { return mcr_; }
    std::size_t cursor() const { return cursor_; }

private:
    std::vector<double> mf_;
    std::vector<double> mcr_;
    std::size_t cursor_ = 0;
};

// Cauchy draw after truncation, or nothing when the draw must be resampled.
std::optional<double> accept_f(double cauchy_draw);
double clamp_cr(double normal_draw);

double weighted_lehmer_mean(std::span<const double> values, std::span<const double> weights);
double weighted_mean(std::span<const double> values, std::span<const double> weights);

}  // namespace ude
