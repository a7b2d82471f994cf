#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"

#include "ude/engine.hpp"
#include "ude/problems.hpp"

using namespace ude;

namespace {

ProblemSpec sphere(std::size_t d)
{
    ProblemSpec spec;
    spec.name = "sphere";
    spec.dimension = d;
    spec.lower_bounds.assign(d, -5.0);
    spec.upper_bounds.assign(d, 5.0);
    spec.evaluate = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x)
            s += v * v;
        return Evaluation{s, {}, {}};
    };
    return spec;
}

ProblemSpec flat(std::size_t d)
{
    ProblemSpec spec = sphere(d);
    spec.name = "flat";
    spec.evaluate = [](std::span<const double>) { return Evaluation{1.0, {}, {}}; };
    return spec;
}

Candidate point(double f, double violation)
{
    Candidate c;
    c.f = f;
    c.violation = violation;
    return c;
}

EngineState stagnation_state(std::vector<std::size_t> counters, std::size_t archive)
{
    EngineState s;
    for (std::size_t i = 0; i < counters.size(); ++i)
        s.population.push_back(point(static_cast<double>(i), 0.0));
    s.stagnation_counters = std::move(counters);
    for (std::size_t i = 0; i < archive; ++i)
        s.archive.push_back(point(100.0 + static_cast<double>(i), 0.0));
    return s;
}

}  // namespace

TEST_CASE("evaluation accounting")
{
    EngineConfig config;
    CHECK(evaluations_per_generation(config) == 150);
    config.max_fes = 200000;
    // floor(0.8 * floor(199900 / 150)) = floor(0.8 * 1332)
    CHECK(tc_generations(config) == 1065);
    config.top_size = 50;
    CHECK(evaluations_per_generation(config) == 200);
}

TEST_CASE("a budget of np runs no generations and returns the best initial member")
{
    const ProblemSpec spec = sphere(3);
    EngineConfig config;
    config.max_fes = config.np;
    const RunReport report = run(spec, config, 17);
    CHECK(report.generations == 0);
    CHECK(report.fes_used == config.np);

    RngStream rng(17);
    const auto pop = init_population(spec, config.np, rng);
    const auto best = *std::min_element(pop.begin(), pop.end(), SofLess{});
    CHECK(report.best.x == best.x);
    CHECK(report.best.f == best.f);
}

TEST_CASE("sphere in two dimensions converges")
{
    EngineConfig config;
    config.max_fes = 20000;
    const RunReport report = run(sphere(2), config, 1);
    CHECK(report.best.f <= 1e-10);
    CHECK(report.fes_used == 20000);
}

TEST_CASE("runs are deterministic in the seed")
{
    const ProblemSpec spec = find_problem("con-rastrigin").spec(5);
    EngineConfig config;
    config.max_fes = 6000;
    config.trace = true;
    const RunReport a = run(spec, config, 99);
    const RunReport b = run(spec, config, 99);
    const RunReport c = run(spec, config, 100);
    CHECK(a.best.x == b.best.x);
    CHECK(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].best_f == b.trace[i].best_f);
        CHECK(a.trace[i].probabilities == b.trace[i].probabilities);
    }
    CHECK(a.best.x != c.best.x);
}

TEST_CASE("parallel batch evaluation matches serial bit for bit")
{
    const ProblemSpec spec = find_problem("lin-sphere").spec(6);
    EngineConfig config;
    config.max_fes = 8000;
    const RunReport serial = run(spec, config, 5);
    config.parallel_evaluation = true;
    const RunReport parallel = run(spec, config, 5);
    CHECK(serial.best.x == parallel.best.x);
    CHECK(serial.best.f == parallel.best.f);
}

TEST_CASE("stagnation step examples")
{
    EngineConfig config;
    config.sg = 3;
    config.sprop = 0.5;
    RngStream rng(2);

    // Two of four stagnated: not strictly more than half.
    auto s = stagnation_state({3, 3, 0, 0}, 5);
    auto out = stagnation_step(s, config, rng);
    CHECK(out.stagnated == 2);
    CHECK_FALSE(out.replaced);
    CHECK(s.archive.size() == 5);

    s = stagnation_state({3, 4, 3, 0}, 5);
    out = stagnation_step(s, config, rng);
    CHECK(out.stagnated == 3);
    REQUIRE(out.replaced);
    CHECK(out.slot == 1);
    CHECK(s.stagnation_counters[1] == 0);
    CHECK(s.population[1].f >= 100.0);
    CHECK(s.archive.size() == 4);

    // Empty archive: nothing to inject.
    s = stagnation_state({5, 5, 5, 5}, 0);
    out = stagnation_step(s, config, rng);
    CHECK(out.stagnated == 4);
    CHECK_FALSE(out.replaced);
}

TEST_CASE("stagnation ties are broken uniformly")
{
    EngineConfig config;
    config.sg = 1;
    std::array<int, 4> hits{};
    RngStream rng(31);
    for (int i = 0; i < 4000; ++i) {
        auto s = stagnation_state({2, 2, 2, 2}, 1);
        ++hits[stagnation_step(s, config, rng).slot];
    }
    for (int h : hits)
        CHECK(h == doctest::Approx(1000).epsilon(0.15));
}

TEST_CASE("elite keeps the best ever seen")
{
    EngineState s;
    s.elite = point(1.0, 0.0);
    s.population = {point(2.0, 0.0), point(-1.0, 0.1)};
    update_elite(s);
    CHECK(s.elite.f == 1.0);
    s.population.push_back(point(0.5, 0.0));
    update_elite(s);
    CHECK(s.elite.f == 0.5);

    s.elite = point(9.0, 0.3);
    s.population = {point(50.0, 0.2)};
    update_elite(s);
    CHECK(s.elite.violation == 0.2);
}

TEST_CASE("archive pruning keeps the best under SOF")
{
    std::vector<Candidate> archive{point(3, 0), point(1, 0.5), point(2, 0), point(0, 0.1), point(1, 0)};
    prune_archive(archive, 3);
    REQUIRE(archive.size() == 3);
    CHECK(archive[0].f == 1.0);
    CHECK(archive[1].f == 2.0);
    CHECK(archive[2].f == 3.0);
}

TEST_CASE("success weight")
{
    CHECK(success_weight(point(5, 0), point(3, 0)) == 2.0);
    CHECK(success_weight(point(5, 0.4), point(9, 0.1)) == doctest::Approx(0.3));
    CHECK(success_weight(point(5, 0), point(5, 0)) == 1e-12);
}

TEST_CASE("generation invariants over a traced ude3 run")
{
    const ProblemSpec spec = find_problem("lin-sphere").spec(10);
    EngineConfig config;
    config.max_fes = 30000;
    config.trace = true;
    const RunReport report = run(spec, config, 8);
    REQUIRE_FALSE(report.trace.empty());

    std::size_t total = 0;
    double prev_elite_v = std::numeric_limits<double>::infinity();
    double prev_elite_f = std::numeric_limits<double>::infinity();
    for (const auto& r : report.trace) {
        total += r.evaluations;
        CHECK(r.fes_used == config.np + total);
        CHECK(r.fes_used <= config.max_fes);
        if (r.fes_used < config.max_fes)
            CHECK(r.evaluations == 150);
        CHECK(r.archive_size <= config.np);
        CHECK(r.eps == eps_at(report.eps_schedule, r.generation));
        CHECK(r.rank_pool_size == config.np);
        CHECK(r.success_rule == SuccessRule::wins_and_losses);
        CHECK(std::abs(r.probabilities[0] + r.probabilities[1] + r.probabilities[2] - 1.0) <= 1e-12);
        if (r.generation < config.learning_period) {
            for (double p : r.probabilities)
                CHECK(p == 1.0 / 3.0);
            CHECK(r.ledger_window_total == total);
        } else if (r.evaluations == 150) {
            CHECK(r.ledger_window_total == config.learning_period * 150);
        }
        // Elite never gets worse under SOF.
        const bool not_worse = r.elite_violation < prev_elite_v ||
                               (r.elite_violation == prev_elite_v && r.elite_f <= prev_elite_f);
        CHECK(not_worse);
        prev_elite_v = r.elite_violation;
        prev_elite_f = r.elite_f;
    }
    CHECK(report.fes_used == config.max_fes);
}

TEST_CASE("ude2 runs the two-strategy-learning variant without stagnation handling")
{
    const ProblemSpec spec = find_problem("con-rastrigin").spec(5);
    EngineConfig config = EngineConfig::preset(Mode::ude2);
    config.max_fes = 20000;
    config.trace = true;
    const RunReport report = run(spec, config, 4);
    CHECK(report.stagnation_replacements == 0);
    for (const auto& r : report.trace) {
        CHECK(r.rank_pool_size == config.top_size);
        CHECK(r.success_rule == SuccessRule::wins_only);
        CHECK_FALSE(r.stagnation_replacement);
        CHECK(r.archive_size == 0);
        if (r.evaluations == 200)
            CHECK(r.fes_used <= config.max_fes);
    }
}

TEST_CASE("ties keep the incumbent")
{
    EngineConfig config;
    config.np = 8;
    config.top_size = 2;
    config.max_fes = 8 + 12 * 10;
    config.sg = 1000;
    config.trace = true;
    const RunReport report = run(flat(3), config, 3);
    REQUIRE(report.trace.size() == 10);
    for (std::size_t g = 0; g < report.trace.size(); ++g) {
        CHECK(report.trace[g].replacements == 0);
        CHECK(report.trace[g].stagnated == 0);
    }
}

TEST_CASE("stagnation fires on a flat landscape")
{
    EngineConfig config;
    config.np = 8;
    config.top_size = 2;
    config.sg = 3;
    config.max_fes = 8 + 12 * 6;
    config.trace = true;
    const RunReport report = run(flat(2), config, 1);
    REQUIRE(report.trace.size() == 6);
    // Every counter reaches 3 after the third generation.
    CHECK_FALSE(report.trace[1].stagnation_replacement);
    CHECK(report.trace[2].stagnated == 8);
    CHECK(report.trace[2].stagnation_replacement);
    CHECK(report.stagnation_replacements >= 1);
}

TEST_CASE("budget exhaustion truncates the last generation")
{
    EngineConfig config;
    config.max_fes = 100 + 150 + 40;
    config.trace = true;
    const RunReport report = run(sphere(3), config, 2);
    REQUIRE(report.trace.size() == 2);
    CHECK(report.trace[1].evaluations == 40);
    CHECK(report.fes_used == config.max_fes);
}
