#pragma once

#include <vector>

#include "ude/core.hpp"

namespace ude::kernels {

// Batch evaluation of decision vectors. Both variants return candidates in
// input order and, on failure, throw the EvaluationError of the lowest failing
// index, so results never depend on which one ran.

// Reference implementation.
std::vector<Candidate> evaluate_serial(const ProblemSpec& spec, std::vector<Vector> xs);

// OpenMP worksharing over the batch. threads <= 0 uses the OpenMP default.
std::vector<Candidate> evaluate_parallel(const ProblemSpec& spec, std::vector<Vector> xs,
                                         int threads = 0);

inline std::vector<Candidate> evaluate_batch(const ProblemSpec& spec, std::vector<Vector> xs,
                                             bool parallel)
{
    return parallel ? evaluate_parallel(spec, std::move(xs)) : evaluate_serial(spec, std::move(xs));
}

bool openmp_enabled();

}  // namespace ude::kernels
