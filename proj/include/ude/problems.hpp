#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ude/core.hpp"

namespace ude {

struct KnownOptimum {
    double f = 0.0;
    std::optional<Vector> x;
    std::string provenance;
};

struct ProblemCatalogEntry {
    std::string name;
    std::string description;
    std::size_t default_dimension = 2;
    std::size_t min_dimension = 2;
    std::size_t max_dimension = 2;  // equal to min_dimension for fixed-size problems
    std::function<ProblemSpec(std::size_t)> make;
    std::function<std::optional<KnownOptimum>(std::size_t)> optimum;

    ProblemSpec spec(std::size_t dimension) const;
    ProblemSpec spec() const { return spec(default_dimension); }
};

// Built-in problems. Entries with a known x* are self-checked on first use.
const std::vector<ProblemCatalogEntry>& catalog();

// Throws NotFoundError listing valid names.
const ProblemCatalogEntry& find_problem(std::string_view name);

// Throws std::logic_error when x* is infeasible or |f(x*) - f*| > 1e-9.
void verify_known_optimum(const ProblemCatalogEntry& entry, std::size_t dimension);

}  // namespace ude
