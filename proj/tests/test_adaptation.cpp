#include <numeric>

#include "doctest.h"

#include "ude/adaptation.hpp"

using namespace ude;

TEST_CASE("SaDE probabilities worked example")
{
    // S = (0.5 + 0.01, 0.25 + 0.01, 0.25 + 0.01) = (0.51, 0.26, 0.26), sum 1.03.
    const std::array<std::size_t, 3> wins{10, 5, 5};
    const std::array<std::size_t, 3> losses{10, 15, 15};
    const auto p = sade_probabilities(wins, losses);
    CHECK(p[0] == doctest::Approx(0.49514).epsilon(1e-5 / 0.49514));
    CHECK(p[1] == doctest::Approx(0.25243).epsilon(1e-5 / 0.25243));
    CHECK(p[2] == doctest::Approx(0.25243).epsilon(1e-5 / 0.25243));
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) <= 1e-12);

    const auto zero = sade_probabilities(std::array<std::size_t, 3>{}, std::array<std::size_t, 3>{});
    for (double v : zero)
        CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ledger is uniform for the first learning period")
{
    StrategyLedger ledger(5);
    for (std::size_t g = 0; g < 5; ++g) {
        const auto p = ledger.probabilities();
        for (double v : p)
            CHECK(v == 1.0 / 3.0);
        ledger.open_generation(g);
        ledger.record_outcome(StrategyId::Rand1Bin, true, g);
        ledger.record_outcome(StrategyId::CurrentToRand1, false, g);
    }
    const auto p = ledger.probabilities();
    CHECK(p[0] > p[1]);
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) <= 1e-12);
}

TEST_CASE("top sub-population contest records one win and two losses")
{
    StrategyLedger ledger(3);
    ledger.open_generation(0);
    ledger.record_outcome(StrategyId::CurrentToPBest1Bin, true, 0);
    ledger.record_outcome(StrategyId::Rand1Bin, false, 0);
    ledger.record_outcome(StrategyId::CurrentToRand1, false, 0);
    const auto w = ledger.window_wins();
    const auto l = ledger.window_losses();
    CHECK(std::accumulate(w.begin(), w.end(), std::size_t{0}) == 1);
    CHECK(std::accumulate(l.begin(), l.end(), std::size_t{0}) == 2);

    // A rejected bottom trial is a loss only.
    ledger.record_outcome(StrategyId::Rand1Bin, false, 0);
    CHECK(ledger.window_wins()[0] == 0);
    CHECK(ledger.window_losses()[0] == 2);
}

TEST_CASE("ledger evicts generations older than the window")
{
    StrategyLedger ledger(2);
    ledger.record_outcome(StrategyId::Rand1Bin, true, 0);
    ledger.record_outcome(StrategyId::Rand1Bin, true, 1);
    CHECK(ledger.window_wins()[0] == 2);
    ledger.record_outcome(StrategyId::CurrentToRand1, true, 2);
    CHECK(ledger.window_wins()[0] == 1);
    CHECK(ledger.window_wins()[1] == 1);
    // Jump past the whole window.
    ledger.record_outcome(StrategyId::CurrentToPBest1Bin, false, 10);
    CHECK(ledger.window_wins() == std::array<std::size_t, 3>{0, 0, 0});
    CHECK(ledger.window_losses() == std::array<std::size_t, 3>{0, 0, 1});
    CHECK(ledger.generations_recorded() == 11);
}

TEST_CASE("wins-only rule uses win shares")
{
    StrategyLedger ledger(1, SuccessRule::wins_only);
    ledger.record_outcome(StrategyId::Rand1Bin, true, 0);
    ledger.record_outcome(StrategyId::Rand1Bin, true, 0);
    ledger.record_outcome(StrategyId::CurrentToRand1, true, 0);
    ledger.record_outcome(StrategyId::CurrentToPBest1Bin, false, 0);
    const auto p = ledger.probabilities();
    CHECK(p[0] == doctest::Approx(2.0 / 3.0));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0));
    CHECK(p[2] == 0.0);
}

TEST_CASE("probabilities never starve a strategy")
{
    RngStream rng(4);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<std::size_t, 3> w{}, l{};
        for (std::size_t k = 0; k < 3; ++k) {
            w[k] = rng.index(200);
            l[k] = rng.index(200);
        }
        const auto p = sade_probabilities(w, l);
        CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) <= 1e-12);
        for (double v : p)
            CHECK(v > 0.0);
    }
}

TEST_CASE("draw_strategy follows the probabilities")
{
    RngStream rng(10);
    const StrategyProbabilities p{0.5, 0.3, 0.2};
    std::array<int, 3> counts{};
    for (int i = 0; i < 100000; ++i)
        ++counts[index_of(draw_strategy(p, rng))];
    CHECK(counts[0] / 1e5 == doctest::Approx(0.5).epsilon(0.02));
    CHECK(counts[1] / 1e5 == doctest::Approx(0.3).epsilon(0.03));
    CHECK(counts[2] / 1e5 == doctest::Approx(0.2).epsilon(0.04));

    const StrategyProbabilities only_first{1.0, 0.0, 0.0};
    for (int i = 0; i < 1000; ++i)
        CHECK(draw_strategy(only_first, rng) == StrategyId::Rand1Bin);
}

TEST_CASE("F and CR sampling rules")
{
    CHECK(accept_f(1.7) == 1.0);
    CHECK_FALSE(accept_f(-0.2).has_value());
    CHECK_FALSE(accept_f(0.0).has_value());
    CHECK(accept_f(0.4) == 0.4);
    CHECK(clamp_cr(-0.05) == 0.0);
    CHECK(clamp_cr(1.2) == 1.0);
    CHECK(clamp_cr(0.3) == 0.3);

    ParameterMemory memory(5);
    RngStream rng(6);
    for (int i = 0; i < 10000; ++i) {
        const auto cp = memory.sample(rng);
        CHECK(cp.F > 0.0);
        CHECK(cp.F <= 1.0);
        CHECK(cp.CR >= 0.0);
        CHECK(cp.CR <= 1.0);
    }
}

TEST_CASE("memory update uses the weighted Lehmer mean for F")
{
    ParameterMemory memory(3);
    const std::vector<Success> two{{0.5, 0.2, 1.0}, {1.0, 0.6, 1.0}};
    memory.update(two);
    CHECK(memory.mf()[0] == doctest::Approx(0.8333).epsilon(1e-4));
    CHECK(memory.mcr()[0] == doctest::Approx(0.4));
    CHECK(memory.cursor() == 1);

    memory.update({});
    CHECK(memory.cursor() == 1);

    const std::vector<Success> one{{0.7, 0.9, 123.0}};
    memory.update(one);
    CHECK(memory.mf()[1] == doctest::Approx(0.7));
    CHECK(memory.mcr()[1] == doctest::Approx(0.9));

    memory.update(one);
    memory.update(one);
    CHECK(memory.cursor() == 1);  // wrapped
}

TEST_CASE("Lehmer mean dominates the arithmetic mean and slots stay in range")
{
    RngStream rng(15);
    ParameterMemory memory(4);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Success> s(1 + rng.index(10));
        std::vector<double> f, w;
        for (auto& x : s) {
            x = {1e-3 + rng.uniform() * (1.0 - 1e-3), rng.uniform(), 1e-12 + rng.uniform()};
            f.push_back(x.F);
            w.push_back(x.weight);
        }
        CHECK(weighted_lehmer_mean(f, w) >= weighted_mean(f, w) - 1e-15);
        memory.update(s);
        for (double v : memory.mf())
            CHECK((v > 0.0 && v <= 1.0));
        for (double v : memory.mcr())
            CHECK((v >= 0.0 && v <= 1.0));
    }
}
