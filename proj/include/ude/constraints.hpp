#pragma once

#include <cstddef>

#include "ude/core.hpp"

namespace ude {

// Outcome of comparing a against b.
enum class Ordering { better, worse, tie };

inline Ordering flip(Ordering o)
{
    return o == Ordering::better ? Ordering::worse
                                 : (o == Ordering::worse ? Ordering::better : Ordering::tie);
}

// Superiority of feasibility: feasible beats infeasible, feasible pairs
// compare by objective, infeasible pairs by violation.
Ordering sof_compare(const Candidate& a, const Candidate& b);

// Violations up to eps count as feasible.
Ordering eps_compare(const Candidate& a, const Candidate& b, double eps);

// Strict weak order usable with std::sort.
struct SofLess {
    bool operator()(const Candidate& a, const Candidate& b) const
    {
        return sof_compare(a, b) == Ordering::better;
    }
};

struct EpsSchedule {
    double eps0 = 0.0;
    double cp = 0.0;
    std::size_t tc = 1;
    double lambda = 6.0;
    double p = 0.5;

    // Distinguished schedule returned when the initial population is feasible.
    static EpsSchedule zero() { return EpsSchedule{}; }

    bool is_zero() const { return eps0 == 0.0; }
};

// cp = -(ln eps0 + lambda) / ln(1 - p), capped at cp_cap and floored at cp_min.
double compute_cp(double eps0, double lambda, double p, double cp_cap, double cp_min = 2.0);

EpsSchedule make_eps_schedule(double eps0, double lambda, double p, std::size_t tc, double cp_cap,
                              double cp_min);

// eps0 * (1 - G/tc)^cp for G < tc, exactly 0 afterwards.
double eps_at(const EpsSchedule& schedule, std::size_t generation);

}  // namespace ude
