#include "ude/problems.hpp"

#include <cmath>
#include <numbers>

namespace ude {
namespace {

constexpr std::size_t kMaxDimension = 1000;

ProblemSpec box(std::string name, std::size_t d, double lo, double hi)
{
    ProblemSpec spec;
    spec.name = std::move(name);
    spec.dimension = d;
    spec.lower_bounds.assign(d, lo);
    spec.upper_bounds.assign(d, hi);
    return spec;
}

double sum_of_squares(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

std::optional<KnownOptimum> half_plane_optimum(std::size_t d)
{
    // Projection of the origin onto x1 + x2 = 1.
    Vector x(d, 0.0);
    x[0] = 0.5;
    x[1] = 0.5;
    return KnownOptimum{0.5, x, "projection of the origin onto x1 + x2 = 1"};
}

ProblemCatalogEntry lin_sphere()
{
    ProblemCatalogEntry e;
    e.name = "lin-sphere";
    e.description = "sum x^2 subject to x1 + x2 >= 1";
    e.default_dimension = 10;
    e.min_dimension = 2;
    e.max_dimension = kMaxDimension;
    e.make = [](std::size_t d) {
        ProblemSpec spec = box("lin-sphere", d, -5.0, 5.0);
        spec.n_ineq = 1;
        spec.evaluate = [](std::span<const double> x) {
            return Evaluation{sum_of_squares(x), {1.0 - x[0] - x[1]}, {}};
        };
        return spec;
    };
    e.optimum = half_plane_optimum;
    return e;
}

ProblemCatalogEntry eq_sphere()
{
    ProblemCatalogEntry e;
    e.name = "eq-sphere";
    e.description = "sum x^2 subject to x1 + x2 = 1";
    e.default_dimension = 10;
    e.min_dimension = 2;
    e.max_dimension = kMaxDimension;
    e.make = [](std::size_t d) {
        ProblemSpec spec = box("eq-sphere", d, -5.0, 5.0);
        spec.n_eq = 1;
        spec.evaluate = [](std::span<const double> x) {
            return Evaluation{sum_of_squares(x), {}, {x[0] + x[1] - 1.0}};
        };
        return spec;
    };
    e.optimum = half_plane_optimum;
    return e;
}

ProblemCatalogEntry rosenbrock_cd()
{
    ProblemCatalogEntry e;
    e.name = "rosenbrock-cd";
    e.description = "2-D Rosenbrock constrained by a cubic and a line";
    e.make = [](std::size_t) {
        ProblemSpec spec;
        spec.name = "rosenbrock-cd";
        spec.dimension = 2;
        spec.lower_bounds = {-1.5, -0.5};
        spec.upper_bounds = {1.5, 2.5};
        spec.n_ineq = 2;
        spec.evaluate = [](std::span<const double> x) {
            const double a = 1.0 - x[0];
            const double b = x[1] - x[0] * x[0];
            const double c = x[0] - 1.0;
            return Evaluation{a * a + 100.0 * b * b,
                              {c * c * c - x[1] + 1.0, x[0] + x[1] - 2.0},
                              {}};
        };
        return spec;
    };
    e.optimum = [](std::size_t) {
        return std::optional<KnownOptimum>(KnownOptimum{0.0, Vector{1.0, 1.0}, "both squares vanish"});
    };
    return e;
}

ProblemCatalogEntry g6_like()
{
    ProblemCatalogEntry e;
    e.name = "g6-like";
    e.description = "cubic objective on a thin feasible crescent between two circles";
    e.make = [](std::size_t) {
        ProblemSpec spec;
        spec.name = "g6-like";
        spec.dimension = 2;
        spec.lower_bounds = {13.0, 0.0};
        spec.upper_bounds = {100.0, 100.0};
        spec.n_ineq = 2;
        spec.evaluate = [](std::span<const double> x) {
            const double a = x[0] - 10.0;
            const double b = x[1] - 20.0;
            const double p = x[0] - 5.0;
            const double q = x[1] - 5.0;
            const double r = x[0] - 6.0;
            return Evaluation{a * a * a + b * b * b,
                              {-(p * p) - q * q + 100.0, r * r + q * q - 82.81},
                              {}};
        };
        return spec;
    };
    // x* sits where both circles intersect, so only f* is catalogued; the
    // test suite checks it against the grid + Nelder-Mead oracle output.
    e.optimum = [](std::size_t) {
        return std::optional<KnownOptimum>(
            KnownOptimum{-6961.81387558015, std::nullopt, "checked against scripts/g6_oracle.py"});
    };
    return e;
}

ProblemCatalogEntry con_rastrigin()
{
    ProblemCatalogEntry e;
    e.name = "con-rastrigin";
    e.description = "Rastrigin subject to x1 + x2 >= 1";
    e.default_dimension = 10;
    e.min_dimension = 2;
    e.max_dimension = kMaxDimension;
    e.make = [](std::size_t d) {
        ProblemSpec spec = box("con-rastrigin", d, -5.12, 5.12);
        spec.n_ineq = 1;
        spec.evaluate = [](std::span<const double> x) {
            double f = 10.0 * static_cast<double>(x.size());
            for (double v : x)
                f += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
            return Evaluation{f, {1.0 - x[0] - x[1]}, {}};
        };
        return spec;
    };
    e.optimum = [](std::size_t) { return std::optional<KnownOptimum>{}; };
    return e;
}

}  // namespace

ProblemSpec ProblemCatalogEntry::spec(std::size_t dimension) const
{
    if (dimension < min_dimension || dimension > max_dimension) {
        if (min_dimension == max_dimension)
            throw ConfigError("problem '" + name + "' is fixed at dimension " +
                              std::to_string(min_dimension));
        throw ConfigError("problem '" + name + "' supports dimensions " +
                          std::to_string(min_dimension) + ".." + std::to_string(max_dimension));
    }
    ProblemSpec s = make(dimension);
    s.validate();
    return s;
}

void verify_known_optimum(const ProblemCatalogEntry& entry, std::size_t dimension)
{
    const auto optimum = entry.optimum(dimension);
    if (!optimum || !optimum->x)
        return;
    const ProblemSpec s = entry.spec(dimension);
    const Candidate c = evaluate_candidate(s, *optimum->x);
    if (c.violation != 0.0 || std::abs(c.f - optimum->f) > 1e-9)
        throw std::logic_error("problem '" + entry.name + "': catalogued optimum does not verify");
}

const std::vector<ProblemCatalogEntry>& catalog()
{
    static const std::vector<ProblemCatalogEntry> entries = [] {
        std::vector<ProblemCatalogEntry> all{lin_sphere(), eq_sphere(), rosenbrock_cd(), g6_like(),
                                             con_rastrigin()};
        for (const auto& e : all)
            verify_known_optimum(e, e.default_dimension);
        return all;
    }();
    return entries;
}

const ProblemCatalogEntry& find_problem(std::string_view name)
{
    std::string names;
    for (const auto& e : catalog()) {
        if (e.name == name)
            return e;
        names += (names.empty() ? "" : ", ") + e.name;
    }
    throw NotFoundError("unknown problem '" + std::string(name) + "'; valid names: " + names);
}

}  // namespace ude
