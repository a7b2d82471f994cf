#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"

#include "ude/strategies.hpp"

using namespace ude;

namespace {

[[maybe_unused]] std::vector<Candidate> line_population(std::size_t np, std::size_t d)
{
    std::vector<Candidate> pop(np);
    for (std::size_t i = 0; i < np; ++i) {
        pop[i].x.assign(d, static_cast<double>(i));
        pop[i].f = static_cast<double>(i);
    }
    return pop;
}

}  // namespace

TEST_CASE("rank table acceptance probabilities")
{
    const RankTable t = RankTable::from_sorted(4);
    CHECK(t.accept_prob() == std::vector{1.0, 0.75, 0.5, 0.25});
    const RankTable two = RankTable::from_sorted(2);
    CHECK(two.accept_prob()[1] == 0.5);
    for (std::size_t n : {1u, 5u, 100u}) {
        const auto p = RankTable::from_sorted(n).accept_prob();
        CHECK(p.front() == 1.0);
        CHECK(p.back() == doctest::Approx(1.0 / static_cast<double>(n)));
        for (std::size_t i = 1; i < n; ++i)
            CHECK(p[i] < p[i - 1]);
    }
}

TEST_CASE("rank table from an unsorted population orders by SOF")
{
    std::vector<Candidate> pop(4);
    pop[0].f = 3;
    pop[1].f = 1;
    pop[2].violation = 0.5;
    pop[3].f = 2;
    const RankTable t = RankTable::from_population(pop);
    CHECK(t.order() == std::vector<std::size_t>{1, 3, 0, 2});
    CHECK(t.accept_prob_of(1) == 1.0);
    CHECK(t.accept_prob_of(2) == 0.25);
}

TEST_CASE("rank_select respects exclusions")
{
    const RankTable t = RankTable::from_sorted(4);
    RngStream rng(1);
    const std::vector<std::size_t> exclude{0, 1, 2};
    for (int i = 0; i < 100; ++i)
        CHECK(rank_select(t, rng, exclude) == 3);
}

TEST_CASE("rank_select acceptance frequencies follow (NP - i)/NP")
{
    // Each draw picks j uniformly and accepts with p_j, so the selection
    // frequency of rank i is p_i / sum(p). Chi-square over 1e5 draws, NP = 10.
    const std::size_t np = 10;
    const RankTable t = RankTable::from_sorted(np);
    RngStream rng(12345);
    std::vector<double> counts(np, 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        counts[rank_select(t, rng, {})] += 1.0;
    const double total_p = 5.5;  // sum of (10 - i)/10
    double chi2 = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const double expected = draws * t.accept_prob()[i] / total_p;
        chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    // 9 degrees of freedom, 0.999 quantile is 27.88.
    CHECK(chi2 < 27.88);
}

TEST_CASE("mutation formulas")
{
    CHECK(mutate_rand1(std::vector{1.0, 1.0}, std::vector{2.0, 0.0}, std::vector{0.0, 2.0}, 0.5) ==
          std::vector{2.0, 0.0});
    CHECK(mutate_current_to_rand1(std::vector{0.0, 0.0}, std::vector{2.0, 2.0}, std::vector{1.0, 0.0},
                                  std::vector{0.0, 1.0}, 0.5, 0.5) == std::vector{1.5, 0.5});
    CHECK(mutate_current_to_pbest1(std::vector{0.0, 0.0}, std::vector{1.0, 1.0},
                                   std::vector{1.0, 0.0}, std::vector{0.0, 1.0}, 0.5) ==
          std::vector{1.0, 0.0});
}

TEST_CASE("zero scale factors return the base or current vector exactly")
{
    RngStream rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<double>> v(4, std::vector<double>(5));
        for (auto& vec : v)
            for (auto& x : vec)
                x = (rng.uniform() - 0.5) * 1e3;
        CHECK(mutate_rand1(v[0], v[1], v[2], 0.0) == v[0]);
        CHECK(mutate_rand1(v[0], v[1], v[1], rng.uniform()) == v[0]);
        CHECK(mutate_current_to_rand1(v[0], v[1], v[2], v[3], 0.0, 0.0) == v[0]);
        CHECK(mutate_current_to_pbest1(v[0], v[1], v[2], v[3], 0.0) == v[0]);
        CHECK(mutate_current_to_pbest1(v[0], v[0], v[2], v[2], rng.uniform()) == v[0]);

        const double F = rng.uniform();
        const auto reduced = mutate_current_to_rand1(v[0], v[0], v[2], v[3], rng.uniform(), F);
        CHECK(reduced == mutate_rand1(v[0], v[2], v[3], F));
    }
}

TEST_CASE("binomial crossover trace")
{
    const std::vector target{10.0, 20.0, 30.0};
    const std::vector mutant{1.0, 2.0, 3.0};
    // j_rand = 2 in 1-based terms is index 1.
    CHECK(binomial_crossover(target, mutant, 0.5, 1, std::vector{0.9, 0.1, 0.9}) ==
          std::vector{10.0, 2.0, 30.0});
    CHECK(binomial_crossover(target, mutant, 0.5, 2, std::vector{0.9, 0.9, 0.9}) ==
          std::vector{10.0, 20.0, 3.0});
}

TEST_CASE("exponential crossover trace")
{
    const std::vector target{10.0, 20.0, 30.0, 40.0};
    const std::vector mutant{1.0, 2.0, 3.0, 4.0};
    CHECK(exponential_crossover(target, mutant, 0.5, 1, std::vector{0.2, 0.9}) ==
          std::vector{10.0, 2.0, 3.0, 40.0});
    // Wraps around.
    CHECK(exponential_crossover(target, mutant, 0.5, 3, std::vector{0.2, 0.9}) ==
          std::vector{1.0, 20.0, 30.0, 4.0});
    CHECK(exponential_crossover(target, mutant, 1.0, 2, std::vector{0.1, 0.2, 0.3, 0.4}) == mutant);
}

TEST_CASE("crossover genes come from target or mutant")
{
    RngStream rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t d = 1 + rng.index(12);
        std::vector<double> t(d), m(d);
        for (std::size_t j = 0; j < d; ++j) {
            t[j] = rng.uniform();
            m[j] = 2.0 + rng.uniform();
        }
        const double cr = rng.uniform();
        for (const auto& u : {binomial_crossover(t, m, cr, rng), exponential_crossover(t, m, cr, rng)}) {
            std::size_t from_mutant = 0;
            for (std::size_t j = 0; j < d; ++j) {
                CHECK((u[j] == t[j] || u[j] == m[j]));
                from_mutant += u[j] == m[j];
            }
            CHECK(from_mutant >= 1);
        }
    }
}

TEST_CASE("pbest pool size")
{
    CHECK(pbest_pool_size(100, 0.1) == 10);
    CHECK(pbest_pool_size(10, 0.1) == 2);
    CHECK(pbest_pool_size(4, 1.0) == 4);
}

TEST_CASE("generate_trial picks parents distinct from each other and the target")
{
    // One-hot genes: population member i is e_i, so with CR = 1 the mutant's
    // coefficients name the parents directly.
    const std::size_t np = 8;
    std::vector<Candidate> pop(np);
    for (std::size_t i = 0; i < np; ++i) {
        pop[i].x.assign(np, 0.0);
        pop[i].x[i] = 1.0;
    }
    const RankTable rank = RankTable::from_sorted(np);
    TrialContext ctx{pop, &rank, 2, CrossoverKind::binomial};
    RngStream rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        for (std::size_t target = 0; target < np; ++target) {
            const auto u = generate_trial(StrategyId::Rand1Bin, target, 0.5, 1.0, ctx, rng);
            CHECK(u[target] == 0.0);
            CHECK(std::count(u.begin(), u.end(), 1.0) == 1);
            CHECK(std::count(u.begin(), u.end(), 0.5) == 1);
            CHECK(std::count(u.begin(), u.end(), -0.5) == 1);

            const auto v = generate_trial(StrategyId::CurrentToRand1, target, 0.5, 1.0, ctx, rng);
            CHECK(std::count(v.begin(), v.end(), 0.5) == 1);
            CHECK(std::count(v.begin(), v.end(), -0.5) == 1);
            CHECK(std::count_if(v.begin(), v.end(), [](double c) { return c != 0.0; }) >= 3);
            double sum = 0.0;
            for (double c : v)
                sum += c;
            CHECK(sum == doctest::Approx(1.0));

            // x + F (pbest - x) + F (r1 - r2) keeps coefficient sum 1.
            const auto w = generate_trial(StrategyId::CurrentToPBest1Bin, target, 0.5, 1.0, ctx, rng);
            double wsum = 0.0;
            for (double c : w)
                wsum += c;
            CHECK(wsum == doctest::Approx(1.0));
        }
    }

    RngStream a(9), b(9);
    for (StrategyId s : kAllStrategies)
        CHECK(generate_trial(s, 3, 0.7, 0.4, ctx, a) == generate_trial(s, 3, 0.7, 0.4, ctx, b));
}

TEST_CASE("rand/1 with a narrow rank pool falls back to uniform parents")
{
    // A pool of size 2 cannot serve two rank-selected parents distinct from a
    // target inside the pool.
    const auto pop = line_population(6, 2);
    const RankTable rank = RankTable::from_sorted(2);
    TrialContext ctx{pop, &rank, 2, CrossoverKind::binomial};
    RngStream rng(3);
    for (int i = 0; i < 200; ++i)
        CHECK(generate_trial(StrategyId::Rand1Bin, 0, 0.5, 1.0, ctx, rng).size() == 2);
}

TEST_CASE("strategy ids are stable")
{
    CHECK(index_of(StrategyId::Rand1Bin) == 0);
    CHECK(index_of(StrategyId::CurrentToRand1) == 1);
    CHECK(index_of(StrategyId::CurrentToPBest1Bin) == 2);
    CHECK(kAllStrategies.size() == 3);
}

TEST_CASE("sampled crossover at CR extremes")
{
    RngStream rng(44);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t d = 1 + rng.index(10);
        std::vector<double> t(d, 0.0), m(d, 1.0);
        const auto b0 = binomial_crossover(t, m, 0.0, rng);
        const auto e0 = exponential_crossover(t, m, 0.0, rng);
        CHECK(std::count(b0.begin(), b0.end(), 1.0) == 1);
        CHECK(std::count(e0.begin(), e0.end(), 1.0) == 1);
        CHECK(binomial_crossover(t, m, 1.0, rng) == m);
        CHECK(exponential_crossover(t, m, 1.0, rng) == m);
    }
}
