#include "ude/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ude {
namespace {

using nlohmann::json;

std::string number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

// Sum of values in ascending order, so the result ignores input order.
double ordered_sum(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values)
        s += v;
    return s;
}

std::string_view rule_name(SuccessRule rule)
{
    return rule == SuccessRule::wins_only ? "wins_only" : "wins_and_losses";
}

SuccessRule parse_rule(const std::string& s)
{
    return s == "wins_only" ? SuccessRule::wins_only : SuccessRule::wins_and_losses;
}

json record_to_json(const GenerationRecord& r)
{
    return json{{"generation", r.generation},
                {"eps", r.eps},
                {"probabilities", r.probabilities},
                {"evaluations", r.evaluations},
                {"fes_used", r.fes_used},
                {"replacements", r.replacements},
                {"archive_size", r.archive_size},
                {"stagnated", r.stagnated},
                {"stagnation_replacement", r.stagnation_replacement},
                {"rank_pool_size", r.rank_pool_size},
                {"success_rule", rule_name(r.success_rule)},
                {"ledger_window_total", r.ledger_window_total},
                {"best_f", r.best_f},
                {"best_violation", r.best_violation},
                {"elite_f", r.elite_f},
                {"elite_violation", r.elite_violation}};
}

GenerationRecord record_from_json(const json& j)
{
    GenerationRecord r;
    j.at("generation").get_to(r.generation);
    j.at("eps").get_to(r.eps);
    j.at("probabilities").get_to(r.probabilities);
    j.at("evaluations").get_to(r.evaluations);
    j.at("fes_used").get_to(r.fes_used);
    j.at("replacements").get_to(r.replacements);
    j.at("archive_size").get_to(r.archive_size);
    j.at("stagnated").get_to(r.stagnated);
    j.at("stagnation_replacement").get_to(r.stagnation_replacement);
    j.at("rank_pool_size").get_to(r.rank_pool_size);
    r.success_rule = parse_rule(j.at("success_rule").get<std::string>());
    j.at("ledger_window_total").get_to(r.ledger_window_total);
    j.at("best_f").get_to(r.best_f);
    j.at("best_violation").get_to(r.best_violation);
    j.at("elite_f").get_to(r.elite_f);
    j.at("elite_violation").get_to(r.elite_violation);
    return r;
}

}  // namespace

std::array<std::size_t, 3> violation_buckets(const Vector& g, const Vector& h, double eq_tol)
{
    std::array<std::size_t, 3> c{};
    auto bucket = [&](double v) {
        if (v > 1.0)
            ++c[0];
        else if (v > 0.01)
            ++c[1];
        else if (v > eq_tol)
            ++c[2];
    };
    for (double v : g)
        bucket(std::max(0.0, v));
    for (double v : h)
        bucket(std::abs(v));
    return c;
}

CampaignResult aggregate(const std::vector<RunReport>& reports, const CampaignSetup& setup)
{
    CampaignResult r;
    r.problem = setup.problem;
    r.dimension = setup.dimension;
    r.mode = setup.mode;
    r.seed0 = setup.seed0;
    r.eq_tol = setup.eq_tol;
    r.runs = reports.size();
    if (reports.empty())
        return r;

    for (const auto& rep : reports) {
        RunSummary s;
        s.seed = rep.seed;
        s.f = rep.best.f;
        s.violation = rep.best.violation;
        s.fes_used = rep.fes_used;
        s.generations = rep.generations;
        s.stagnation_replacements = rep.stagnation_replacements;
        s.x = rep.best.x;
        s.g = rep.best.g;
        s.h = rep.best.h;
        s.trace = rep.trace;
        r.per_run.push_back(std::move(s));
    }
    std::sort(r.per_run.begin(), r.per_run.end(),
              [](const RunSummary& a, const RunSummary& b) { return a.seed < b.seed; });

    std::vector<const RunSummary*> feasible;
    for (const auto& s : r.per_run)
        if (s.violation == 0.0)
            feasible.push_back(&s);

    std::vector<double> fs;
    if (!feasible.empty()) {
        for (const auto* s : feasible)
            fs.push_back(s->f);
    } else {
        for (const auto& s : r.per_run)
            fs.push_back(s.f);
    }
    std::sort(fs.begin(), fs.end());
    const auto n = static_cast<double>(fs.size());
    r.best = fs.front();
    r.worst = fs.back();
    r.mean = ordered_sum(fs) / n;
    if (fs.size() > 1) {
        std::vector<double> sq;
        for (double f : fs)
            sq.push_back((f - r.mean) * (f - r.mean));
        r.std = std::sqrt(ordered_sum(sq) / (n - 1.0));
    }
    // Keep Best <= Mean <= Worst despite rounding in the mean.
    r.mean = std::clamp(r.mean, r.best, r.worst);

    r.sr_pct = 100.0 * static_cast<double>(feasible.size()) / static_cast<double>(r.per_run.size());

    std::vector<double> violations;
    for (const auto& s : r.per_run)
        violations.push_back(s.violation);
    r.mean_violation = ordered_sum(violations) / static_cast<double>(violations.size());

    // Median run: by f among feasible runs, else by violation; seed breaks ties.
    std::vector<const RunSummary*> ranked;
    if (!feasible.empty()) {
        ranked = feasible;
        std::sort(ranked.begin(), ranked.end(), [](const RunSummary* a, const RunSummary* b) {
            return a->f != b->f ? a->f < b->f : a->seed < b->seed;
        });
    } else {
        for (const auto& s : r.per_run)
            ranked.push_back(&s);
        std::sort(ranked.begin(), ranked.end(), [](const RunSummary* a, const RunSummary* b) {
            return a->violation != b->violation ? a->violation < b->violation : a->seed < b->seed;
        });
    }
    const RunSummary* median = ranked[(ranked.size() - 1) / 2];
    r.c = violation_buckets(median->g, median->h, r.eq_tol);

    for (const auto& s : r.per_run)
        r.fes = std::max(r.fes, s.fes_used);
    return r;
}

std::vector<RunReport> run_campaign(const ProblemSpec& spec, const EngineConfig& config,
                                    std::size_t runs, std::uint64_t seed0, int threads)
{
    config.validate();
    spec.validate();
    std::vector<RunReport> reports(runs);
    std::vector<std::exception_ptr> errors(runs);
    const auto n = static_cast<std::ptrdiff_t>(runs);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(threads, 1))
#else
    (void)threads;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            reports[i] = run(spec, config, seed0 + static_cast<std::uint64_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return reports;
}

std::string csv_row(const CampaignResult& r)
{
    std::string row = r.problem;
    row += ',' + std::to_string(r.dimension);
    row += ',' + std::string(to_string(r.mode));
    row += ',' + std::to_string(r.runs);
    row += ',' + std::to_string(r.seed0);
    for (double v : {r.best, r.mean, r.worst, r.std, r.sr_pct, r.mean_violation})
        row += ',' + number(v);
    for (std::size_t c : r.c)
        row += ',' + std::to_string(c);
    row += ',' + std::to_string(r.fes);
    return row;
}

void write_csv(std::ostream& out, const std::vector<CampaignResult>& results)
{
    out << kCsvHeader << '\n';
    for (const auto& r : results)
        out << csv_row(r) << '\n';
}

json to_json(const CampaignResult& r)
{
    json runs = json::array();
    for (const auto& s : r.per_run) {
        json run{{"seed", s.seed},
                 {"f", s.f},
                 {"violation", s.violation},
                 {"fes_used", s.fes_used},
                 {"generations", s.generations},
                 {"stagnation_replacements", s.stagnation_replacements},
                 {"x", s.x},
                 {"g", s.g},
                 {"h", s.h}};
        if (!s.trace.empty()) {
            json trace = json::array();
            for (const auto& rec : s.trace)
                trace.push_back(record_to_json(rec));
            run["trace"] = std::move(trace);
        }
        runs.push_back(std::move(run));
    }
    return json{{"problem", r.problem},
                {"dimension", r.dimension},
                {"mode", to_string(r.mode)},
                {"runs", r.runs},
                {"seed0", r.seed0},
                {"eq_tol", r.eq_tol},
                {"best", r.best},
                {"mean", r.mean},
                {"worst", r.worst},
                {"std", r.std},
                {"sr_pct", r.sr_pct},
                {"mean_violation", r.mean_violation},
                {"c", r.c},
                {"fes", r.fes},
                {"per_run", std::move(runs)}};
}

CampaignResult campaign_from_json(const json& j)
{
    CampaignResult r;
    j.at("problem").get_to(r.problem);
    j.at("dimension").get_to(r.dimension);
    r.mode = parse_mode(j.at("mode").get<std::string>());
    j.at("runs").get_to(r.runs);
    j.at("seed0").get_to(r.seed0);
    j.at("eq_tol").get_to(r.eq_tol);
    j.at("best").get_to(r.best);
    j.at("mean").get_to(r.mean);
    j.at("worst").get_to(r.worst);
    j.at("std").get_to(r.std);
    j.at("sr_pct").get_to(r.sr_pct);
    j.at("mean_violation").get_to(r.mean_violation);
    j.at("c").get_to(r.c);
    j.at("fes").get_to(r.fes);
    for (const auto& run : j.at("per_run")) {
        RunSummary s;
        run.at("seed").get_to(s.seed);
        run.at("f").get_to(s.f);
        run.at("violation").get_to(s.violation);
        run.at("fes_used").get_to(s.fes_used);
        run.at("generations").get_to(s.generations);
        run.at("stagnation_replacements").get_to(s.stagnation_replacements);
        run.at("x").get_to(s.x);
        run.at("g").get_to(s.g);
        run.at("h").get_to(s.h);
        if (run.contains("trace"))
            for (const auto& rec : run.at("trace"))
                s.trace.push_back(record_from_json(rec));
        r.per_run.push_back(std::move(s));
    }
    return r;
}

std::string emit_json(const std::vector<CampaignResult>& results)
{
    json campaigns = json::array();
    for (const auto& r : results)
        campaigns.push_back(to_json(r));
    return json{{"campaigns", std::move(campaigns)}}.dump(2) + "\n";
}

std::vector<CampaignResult> parse_json(const std::string& text)
{
    const json j = json::parse(text);
    std::vector<CampaignResult> out;
    for (const auto& c : j.at("campaigns"))
        out.push_back(campaign_from_json(c));
    return out;
}

void print_table(std::ostream& out, const std::vector<CampaignResult>& results)
{
    for (const auto& r : results) {
        out << r.problem << " D=" << r.dimension << " mode=" << to_string(r.mode)
            << " runs=" << r.runs << " seed0=" << r.seed0 << " fes=" << r.fes << '\n';
        out << "  Best   " << short_number(r.best) << '\n';
        out << "  Mean   " << short_number(r.mean) << '\n';
        out << "  Worst  " << short_number(r.worst) << '\n';
        out << "  STD    " << short_number(r.std) << '\n';
        out << "  SR     " << short_number(r.sr_pct) << '\n';
        out << "  v      " << short_number(r.mean_violation) << '\n';
        out << "  c      " << r.c[0] << ", " << r.c[1] << ", " << r.c[2] << '\n';
    }
}

void print_comparison(std::ostream& out, const CampaignResult& ude3, const CampaignResult& ude2)
{
    auto cell = [](const CampaignResult& r) {
        std::string s = short_number(r.mean) + " +- " + short_number(r.std);
        if (r.sr_pct < 100.0)
            s += " (" + short_number(r.sr_pct) + "%)";
        return s;
    };
    out << "problem, ude3 Mean +- STD, ude2 Mean +- STD\n";
    out << ude3.problem << ", " << cell(ude3) << ", " << cell(ude2) << '\n';
}

}  // namespace ude
