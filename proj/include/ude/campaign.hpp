#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ude/core.hpp"
#include "ude/engine.hpp"

namespace ude {

struct RunSummary {
    std::uint64_t seed = 0;
    double f = 0.0;
    double violation = 0.0;
    std::size_t fes_used = 0;
    std::size_t generations = 0;
    std::size_t stagnation_replacements = 0;
    Vector x;
    Vector g;
    Vector h;
    std::vector<GenerationRecord> trace;

    bool operator==(const RunSummary&) const = default;
};

struct CampaignResult {
    std::string problem;
    std::size_t dimension = 0;
    Mode mode = Mode::ude3;
    std::size_t runs = 0;
    std::uint64_t seed0 = 0;
    double eq_tol = kDefaultEqTol;
    std::vector<RunSummary> per_run;

    double best = 0.0;
    double mean = 0.0;
    double worst = 0.0;
    double std = 0.0;  // sample standard deviation
    double sr_pct = 0.0;
    double mean_violation = 0.0;
    // Constraints of the median run's best with violation > 1, in (0.01, 1], in (eq_tol, 0.01].
    std::array<std::size_t, 3> c{};
    std::size_t fes = 0;  // largest fes_used over runs

    bool operator==(const CampaignResult&) const = default;
};

struct CampaignSetup {
    std::string problem;
    std::size_t dimension = 0;
    Mode mode = Mode::ude3;
    std::uint64_t seed0 = 0;
    double eq_tol = kDefaultEqTol;
};

// Statistics over final bests. Objective statistics use the feasible runs
// when there are any, otherwise all runs. Independent of run order.
CampaignResult aggregate(const std::vector<RunReport>& reports, const CampaignSetup& setup);

// Per-constraint violation buckets (> 1, (0.01, 1], (eq_tol, 0.01]).
std::array<std::size_t, 3> violation_buckets(const Vector& g, const Vector& h, double eq_tol);

// Run i uses seed seed0 + i. threads > 1 runs independent seeds concurrently;
// results are identical for any thread count.
std::vector<RunReport> run_campaign(const ProblemSpec& spec, const EngineConfig& config,
                                    std::size_t runs, std::uint64_t seed0, int threads = 1);

inline const char* kCsvHeader =
    "problem,dimension,mode,runs,seed0,best,mean,worst,std,sr_pct,mean_violation,c1,c2,c3,fes";

std::string csv_row(const CampaignResult& r);
void write_csv(std::ostream& out, const std::vector<CampaignResult>& results);

nlohmann::json to_json(const CampaignResult& r);
CampaignResult campaign_from_json(const nlohmann::json& j);
// {"campaigns": [...]}
std::string emit_json(const std::vector<CampaignResult>& results);
std::vector<CampaignResult> parse_json(const std::string& text);

// Human-readable Best/Mean/Worst/STD/SR/v/c table.
void print_table(std::ostream& out, const std::vector<CampaignResult>& results);

// Mean +- STD per mode side by side, with SR in parentheses when below 100%.
void print_comparison(std::ostream& out, const CampaignResult& ude3, const CampaignResult& ude2);

}  // namespace ude
