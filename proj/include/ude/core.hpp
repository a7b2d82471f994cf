#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ude/rng.hpp"

namespace ude {

using Vector = std::vector<double>;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a problem evaluator fails or returns unusable values.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Evaluation {
    double f = 0.0;
    Vector g;  // inequality constraints, satisfied when <= 0
    Vector h;  // equality constraints, satisfied when |h| <= eq_tol
};

using Evaluator = std::function<Evaluation(std::span<const double>)>;

inline constexpr double kDefaultEqTol = 1e-4;

struct ProblemSpec {
    std::string name;
    std::size_t dimension = 0;
    Vector lower_bounds;
    Vector upper_bounds;
    std::size_t n_ineq = 0;
    std::size_t n_eq = 0;
    double eq_tol = kDefaultEqTol;
    Evaluator evaluate;

    // Throws ConfigError when bounds or counts are inconsistent.
    void validate() const;
    bool contains(std::span<const double> x) const;
};

struct Candidate {
    Vector x;
    double f = 0.0;
    Vector g;
    Vector h;
    double violation = 0.0;

    bool feasible() const { return violation == 0.0; }
};

enum class Mode { ude3, ude2 };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct EngineConfig {
    std::size_t np = 100;
    std::size_t top_size = 25;
    std::size_t learning_period = 25;
    std::size_t sg = 35;
    double sprop = 0.5;
    std::size_t max_fes = 200000;
    double eps_lambda = 6.0;
    double eps_p = 0.5;
    double eps_tc_fraction = 0.8;
    double cp_cap = 33.0;
    double cp_min = 2.0;
    double pbest_fraction = 0.1;
    std::size_t memory_size = 5;
    // Exponential crossover replaces binomial from this dimension on.
    std::size_t exponential_crossover_dimension = 100;
    bool parallel_evaluation = false;
    bool trace = false;
    Mode mode = Mode::ude3;

    // Defaults for a mode: ude2 splits the population in equal halves.
    static EngineConfig preset(Mode mode);

    void validate() const;
};

// x_min + u * (x_max - x_min)
inline double sample_gene(double lower, double upper, double u)
{
    return lower + u * (upper - lower);
}

// Sum of positive inequality values plus equality deviations beyond eq_tol.
double compute_violation(std::span<const double> g, std::span<const double> h, double eq_tol);

// Evaluates x and fills in the aggregate violation.
Candidate evaluate_candidate(const ProblemSpec& spec, Vector x);

std::vector<Candidate> init_population(const ProblemSpec& spec, std::size_t np, RngStream& rng);

// Out-of-bounds genes move to the midpoint between the parent gene and the
// violated bound.
Vector repair_bounds(std::span<const double> child, std::span<const double> parent,
                     const ProblemSpec& spec);

}  // namespace ude
