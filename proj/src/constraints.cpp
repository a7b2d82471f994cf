#include "ude/constraints.hpp"

#include <algorithm>
#include <cmath>

namespace ude {
namespace {

Ordering by_value(double a, double b)
{
    if (a < b)
        return Ordering::better;
    if (b < a)
        return Ordering::worse;
    return Ordering::tie;
}

}  // namespace

Ordering sof_compare(const Candidate& a, const Candidate& b)
{
    const bool fa = a.violation == 0.0;
    const bool fb = b.violation == 0.0;
    if (fa && fb)
        return by_value(a.f, b.f);
    if (fa != fb)
        return fa ? Ordering::better : Ordering::worse;
    return by_value(a.violation, b.violation);
}

Ordering eps_compare(const Candidate& a, const Candidate& b, double eps)
{
    const bool fa = a.violation <= eps;
    const bool fb = b.violation <= eps;
    if (fa && fb)
        return by_value(a.f, b.f);
    if (fa != fb)
        return fa ? Ordering::better : Ordering::worse;
    return by_value(a.violation, b.violation);
}

double compute_cp(double eps0, double lambda, double p, double cp_cap, double cp_min)
{
    const double raw = -(std::log(eps0) + lambda) / std::log(1.0 - p);
    if (!(raw > 0.0))
        return std::min(cp_min, cp_cap);
    return std::min(raw, cp_cap);
}

EpsSchedule make_eps_schedule(double eps0, double lambda, double p, std::size_t tc, double cp_cap,
                              double cp_min)
{
    if (!(eps0 > 0.0))
        return EpsSchedule::zero();
    EpsSchedule s;
    s.eps0 = eps0;
    s.cp = compute_cp(eps0, lambda, p, cp_cap, cp_min);
    s.tc = std::max<std::size_t>(tc, 1);
    s.lambda = lambda;
    s.p = p;
    return s;
}

double eps_at(const EpsSchedule& schedule, std::size_t generation)
{
    if (schedule.is_zero() || generation >= schedule.tc)
        return 0.0;
    if (generation == 0)
        return schedule.eps0;
    const double remaining =
        1.0 - static_cast<double>(generation) / static_cast<double>(schedule.tc);
    return schedule.eps0 * std::pow(remaining, schedule.cp);
}

}  // namespace ude
