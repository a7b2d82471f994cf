#include "ude/core.hpp"

#include <cmath>
#include <limits>

namespace ude {

void ProblemSpec::validate() const
{
    if (dimension == 0)
        throw ConfigError("problem '" + name + "': dimension must be positive");
    if (lower_bounds.size() != dimension || upper_bounds.size() != dimension)
        throw ConfigError("problem '" + name + "': bound vectors must have length " +
                          std::to_string(dimension));
    for (std::size_t j = 0; j < dimension; ++j) {
        if (!(lower_bounds[j] < upper_bounds[j]) || !std::isfinite(lower_bounds[j]) ||
            !std::isfinite(upper_bounds[j]))
            throw ConfigError("problem '" + name + "': invalid bounds for variable " +
                              std::to_string(j));
    }
    if (!(eq_tol >= 0.0))
        throw ConfigError("problem '" + name + "': eq_tol must be nonnegative");
    if (!evaluate)
        throw ConfigError("problem '" + name + "': no evaluator");
}

bool ProblemSpec::contains(std::span<const double> x) const
{
    if (x.size() != dimension)
        return false;
    for (std::size_t j = 0; j < dimension; ++j)
        if (!(x[j] >= lower_bounds[j] && x[j] <= upper_bounds[j]))
            return false;
    return true;
}

std::string_view to_string(Mode mode)
{
    return mode == Mode::ude2 ? "ude2" : "ude3";
}

Mode parse_mode(std::string_view text)
{
    if (text == "ude3")
        return Mode::ude3;
    if (text == "ude2")
        return Mode::ude2;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected ude3 or ude2)");
}

EngineConfig EngineConfig::preset(Mode mode)
{
    EngineConfig config;
    config.mode = mode;
    if (mode == Mode::ude2)
        config.top_size = config.np / 2;
    return config;
}

void EngineConfig::validate() const
{
    auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
    if (np < 4)
        fail("np must be at least 4");
    if (top_size == 0 || top_size >= np)
        fail("top_size must satisfy 0 < top_size < np");
    if (learning_period == 0)
        fail("learning_period must be positive");
    if (!(sprop > 0.0 && sprop <= 1.0))
        fail("sprop must be in (0, 1]");
    if (max_fes < np)
        fail("max_fes must be at least np");
    if (!(eps_p > 0.0 && eps_p < 1.0))
        fail("eps_p must be in (0, 1)");
    if (!(eps_tc_fraction > 0.0 && eps_tc_fraction <= 1.0))
        fail("eps_tc_fraction must be in (0, 1]");
    if (!std::isfinite(eps_lambda))
        fail("eps_lambda must be finite");
    if (!(cp_cap > 0.0))
        fail("cp_cap must be positive");
    if (!(cp_min > 0.0))
        fail("cp_min must be positive");
    if (!(pbest_fraction > 0.0 && pbest_fraction <= 1.0))
        fail("pbest_fraction must be in (0, 1]");
    if (memory_size == 0)
        fail("memory_size must be positive");
}

double compute_violation(std::span<const double> g, std::span<const double> h, double eq_tol)
{
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i]))
            throw EvaluationError("inequality constraint g[" + std::to_string(i) +
                                  "] is not finite");
        total += std::max(0.0, g[i]);
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (!std::isfinite(h[j]))
            throw EvaluationError("equality constraint h[" + std::to_string(j) +
                                  "] is not finite");
        total += std::max(0.0, std::abs(h[j]) - eq_tol);
    }
    return total;
}

Candidate evaluate_candidate(const ProblemSpec& spec, Vector x)
{
    Evaluation e = spec.evaluate(x);
    if (e.g.size() != spec.n_ineq || e.h.size() != spec.n_eq)
        throw EvaluationError("evaluator returned " + std::to_string(e.g.size()) + "+" +
                              std::to_string(e.h.size()) + " constraint values, expected " +
                              std::to_string(spec.n_ineq) + "+" + std::to_string(spec.n_eq));
    if (!std::isfinite(e.f))
        throw EvaluationError("objective value is not finite");
    Candidate c;
    c.violation = compute_violation(e.g, e.h, spec.eq_tol);
    c.x = std::move(x);
    c.f = e.f;
    c.g = std::move(e.g);
    c.h = std::move(e.h);
    return c;
}

std::vector<Candidate> init_population(const ProblemSpec& spec, std::size_t np, RngStream& rng)
{
    if (np < 4)
        throw ConfigError("population size must be at least 4");
    std::vector<Vector> genes(np, Vector(spec.dimension));
    for (auto& x : genes)
        for (std::size_t j = 0; j < spec.dimension; ++j)
            x[j] = sample_gene(spec.lower_bounds[j], spec.upper_bounds[j], rng.uniform());

    std::vector<Candidate> population;
    population.reserve(np);
    for (std::size_t k = 0; k < np; ++k) {
        try {
            population.push_back(evaluate_candidate(spec, std::move(genes[k])));
        } catch (const std::exception& e) {
            throw EvaluationError("initial candidate " + std::to_string(k) + ": " + e.what());
        }
    }
    return population;
}

Vector repair_bounds(std::span<const double> child, std::span<const double> parent,
                     const ProblemSpec& spec)
{
    Vector out(child.begin(), child.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double lo = spec.lower_bounds[j];
        const double hi = spec.upper_bounds[j];
        if (out[j] > hi)
            out[j] = 0.5 * (parent[j] + hi);
        else if (!(out[j] >= lo))
            out[j] = 0.5 * (parent[j] + lo);
    }
    return out;
}

}  // namespace ude
