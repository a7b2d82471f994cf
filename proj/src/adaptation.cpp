#include "ude/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ude {
namespace {

constexpr double kCauchyScale = 0.1;
constexpr double kNormalScale = 0.1;
constexpr double kSadeFloor = 0.01;

StrategyProbabilities uniform_probabilities()
{
    StrategyProbabilities p;
    p.fill(1.0 / static_cast<double>(kStrategyCount));
    return p;
}

}  // namespace

StrategyLedger::StrategyLedger(std::size_t learning_period, SuccessRule rule)
    : learning_period_(std::max<std::size_t>(learning_period, 1)),
      rule_(rule),
      ring_(learning_period_)
{
}

void StrategyLedger::open_generation(std::size_t generation)
{
    if (generations_recorded_ == 0) {
        current_ = generation;
        generations_recorded_ = 1;
        ring_[current_ % learning_period_] = Bucket{};
        return;
    }
    if (generation <= current_)
        return;
    const std::size_t steps = std::min(generation - current_, learning_period_);
    for (std::size_t k = 1; k <= steps; ++k)
        ring_[(generation - steps + k) % learning_period_] = Bucket{};
    generations_recorded_ += generation - current_;
    current_ = generation;
}

void StrategyLedger::record_outcome(StrategyId strategy, bool win, std::size_t generation)
{
    open_generation(generation);
    Bucket& bucket = ring_[current_ % learning_period_];
    if (win)
        ++bucket.wins[index_of(strategy)];
    else
        ++bucket.losses[index_of(strategy)];
}

std::array<std::size_t, kStrategyCount> StrategyLedger::window_wins() const
{
    std::array<std::size_t, kStrategyCount> total{};
    for (const auto& b : ring_)
        for (std::size_t k = 0; k < kStrategyCount; ++k)
            total[k] += b.wins[k];
    return total;
}

std::array<std::size_t, kStrategyCount> StrategyLedger::window_losses() const
{
    std::array<std::size_t, kStrategyCount> total{};
    for (const auto& b : ring_)
        for (std::size_t k = 0; k < kStrategyCount; ++k)
            total[k] += b.losses[k];
    return total;
}

std::size_t StrategyLedger::window_total() const
{
    const auto w = window_wins();
    const auto l = window_losses();
    return std::accumulate(w.begin(), w.end(), std::size_t{0}) +
           std::accumulate(l.begin(), l.end(), std::size_t{0});
}

StrategyProbabilities StrategyLedger::probabilities() const
{
    if (generations_recorded_ < learning_period_)
        return uniform_probabilities();
    const auto wins = window_wins();
    if (rule_ == SuccessRule::wins_only) {
        const double total = static_cast<double>(std::accumulate(wins.begin(), wins.end(), 0.0));
        if (total == 0.0)
            return uniform_probabilities();
        StrategyProbabilities p;
        for (std::size_t k = 0; k < kStrategyCount; ++k)
            p[k] = static_cast<double>(wins[k]) / total;
        return p;
    }
    const auto losses = window_losses();
    return sade_probabilities(wins, losses);
}

StrategyProbabilities sade_probabilities(std::span<const std::size_t> wins,
                                         std::span<const std::size_t> losses)
{
    StrategyProbabilities s;
    for (std::size_t k = 0; k < kStrategyCount; ++k) {
        const double ns = static_cast<double>(wins[k]);
        const double nf = static_cast<double>(losses[k]);
        s[k] = (ns + nf > 0.0 ? ns / (ns + nf) : 0.0) + kSadeFloor;
    }
    const double sum = s[0] + s[1] + s[2];
    for (auto& v : s)
        v /= sum;
    return s;
}

StrategyId draw_strategy(const StrategyProbabilities& p, RngStream& rng)
{
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < kStrategyCount; ++k) {
        cumulative += p[k];
        if (u < cumulative)
            return static_cast<StrategyId>(k);
    }
    // Skip trailing zero-probability strategies (possible under wins_only).
    for (std::size_t k = kStrategyCount; k-- > 0;)
        if (p[k] > 0.0)
            return static_cast<StrategyId>(k);
    return StrategyId::Rand1Bin;
}

ParameterMemory::ParameterMemory(std::size_t size, double initial_f, double initial_cr)
    : mf_(std::max<std::size_t>(size, 1), initial_f), mcr_(std::max<std::size_t>(size, 1), initial_cr)
{
}

std::optional<double> accept_f(double cauchy_draw)
{
    if (!(cauchy_draw > 0.0))
        return std::nullopt;
    return std::min(cauchy_draw, 1.0);
}

double clamp_cr(double normal_draw)
{
    return std::clamp(normal_draw, 0.0, 1.0);
}

ControlParameters ParameterMemory::sample(RngStream& rng) const
{
    const std::size_t r = rng.index(mf_.size());
    ControlParameters out;
    for (;;) {
        if (auto f = accept_f(mf_[r] + kCauchyScale * rng.cauchy())) {
            out.F = *f;
            break;
        }
    }
    out.CR = clamp_cr(mcr_[r] + kNormalScale * rng.normal());
    return out;
}

double weighted_lehmer_mean(std::span<const double> values, std::span<const double> weights)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += weights[i] * values[i] * values[i];
        den += weights[i] * values[i];
    }
    return num / den;
}

double weighted_mean(std::span<const double> values, std::span<const double> weights)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += weights[i] * values[i];
        den += weights[i];
    }
    return num / den;
}

void ParameterMemory::update(std::span<const Success> successes)
{
    if (successes.empty())
        return;
    std::vector<double> f, cr, w;
    for (const auto& s : successes) {
        f.push_back(s.F);
        cr.push_back(s.CR);
        w.push_back(s.weight);
    }
    mf_[cursor_] = std::clamp(weighted_lehmer_mean(f, w), std::nextafter(0.0, 1.0), 1.0);
    mcr_[cursor_] = std::clamp(weighted_mean(cr, w), 0.0, 1.0);
    cursor_ = (cursor_ + 1) % mf_.size();
}

}  // namespace ude
