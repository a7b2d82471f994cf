#include "ude/kernels.hpp"

#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ude::kernels {
namespace {

[[noreturn]] void rethrow_indexed(std::size_t index, const std::exception& e)
{
    throw EvaluationError("trial " + std::to_string(index) + ": " + e.what());
}

}  // namespace

bool openmp_enabled()
{
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

std::vector<Candidate> evaluate_serial(const ProblemSpec& spec, std::vector<Vector> xs)
{
    std::vector<Candidate> out;
    out.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        try {
            out.push_back(evaluate_candidate(spec, std::move(xs[k])));
        } catch (const std::exception& e) {
            rethrow_indexed(k, e);
        }
    }
    return out;
}

std::vector<Candidate> evaluate_parallel(const ProblemSpec& spec, std::vector<Vector> xs,
                                         int threads)
{
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    std::vector<Candidate> out(xs.size());
    std::vector<std::exception_ptr> errors(xs.size());

#ifdef _OPENMP
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
#else
    (void)threads;
#endif
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            out[k] = evaluate_candidate(spec, std::move(xs[k]));
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }

    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!errors[k])
            continue;
        try {
            std::rethrow_exception(errors[k]);
        } catch (const std::exception& e) {
            rethrow_indexed(k, e);
        }
    }
    return out;
}

}  // namespace ude::kernels
