#include "ude/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "ude/campaign.hpp"
#include "ude/config_io.hpp"
#include "ude/problems.hpp"
#include "ude/subprocess.hpp"

namespace ude::cli {
namespace {

struct Options {
    std::string problem;
    std::string problem_file;
    std::optional<std::size_t> dimension;
    std::size_t runs = 25;
    std::uint64_t seed = 1;
    std::optional<std::size_t> max_fes;
    std::optional<std::string> mode;
    std::string config_file;
    std::string output;
    std::string format = "json";
    bool trace = false;
    bool compare = false;
};

int campaign_threads()
{
    const char* env = std::getenv("UDE3_THREADS");
    if (env == nullptr || *env == '\0')
        return 1;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
        throw ConfigError(std::string("UDE3_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(n);
}

ProblemSpec load_problem(const Options& o)
{
    if (!o.problem.empty() && !o.problem_file.empty())
        throw ConfigError("--problem and --problem-file are mutually exclusive");
    if (!o.problem_file.empty()) {
        ProblemSpec spec = subprocess_evaluator(o.problem_file);
        if (o.dimension && *o.dimension != spec.dimension)
            throw ConfigError("--dimension disagrees with the problem file");
        return spec;
    }
    if (o.problem.empty())
        throw ConfigError("one of --problem or --problem-file is required");
    const ProblemCatalogEntry* entry = nullptr;
    try {
        entry = &find_problem(o.problem);
    } catch (const NotFoundError& e) {
        throw ConfigError(e.what());
    }
    return entry->spec(o.dimension.value_or(entry->default_dimension));
}

CampaignResult run_mode(const ProblemSpec& spec, Mode mode, const Options& o,
                        const nlohmann::json& overrides, int threads)
{
    ConfigRequest request;
    request.mode = mode;
    request.dimension = spec.dimension;
    request.max_fes = o.max_fes;
    request.trace = o.trace;
    const EngineConfig config = resolve_config(request, overrides);
    const auto reports = run_campaign(spec, config, o.runs, o.seed, threads);
    return aggregate(reports, CampaignSetup{spec.name, spec.dimension, mode, o.seed, spec.eq_tol});
}

int execute(const Options& o, std::ostream& out)
{
    if (o.runs == 0)
        throw ConfigError("--runs must be at least 1");
    if (o.format != "json" && o.format != "csv")
        throw ConfigError("--format must be csv or json");
    const int threads = campaign_threads();

    nlohmann::json overrides = nlohmann::json::object();
    if (!o.config_file.empty())
        overrides = load_config_file(o.config_file);

    Mode mode = Mode::ude3;
    if (o.mode)
        mode = parse_mode(*o.mode);
    else if (overrides.contains("mode") && overrides["mode"].is_string())
        mode = parse_mode(overrides["mode"].get<std::string>());
    if (o.compare)
        overrides.erase("mode");

    const ProblemSpec spec = load_problem(o);

    std::vector<CampaignResult> results;
    if (o.compare) {
        results.push_back(run_mode(spec, Mode::ude3, o, overrides, threads));
        results.push_back(run_mode(spec, Mode::ude2, o, overrides, threads));
    } else {
        results.push_back(run_mode(spec, mode, o, overrides, threads));
    }

    print_table(out, results);
    if (o.compare)
        print_comparison(out, results[0], results[1]);

    if (!o.output.empty()) {
        std::ofstream file(o.output, std::ios::binary);
        if (!file)
            throw ConfigError("cannot write output file '" + o.output + "'");
        if (o.format == "csv")
            write_csv(file, results);
        else
            file << emit_json(results);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Constrained differential evolution benchmark harness (UDE-III / UDE-II)", "ude3"};
    Options o;
    app.add_option("--problem", o.problem, "Built-in problem name");
    app.add_option("--problem-file", o.problem_file, "JSON description of a subprocess evaluator");
    app.add_option("--dimension", o.dimension, "Problem dimension");
    app.add_option("--runs", o.runs, "Independent runs")->capture_default_str();
    app.add_option("--seed", o.seed, "Base seed; run i uses seed + i")->capture_default_str();
    app.add_option("--max-fes", o.max_fes, "Evaluation budget per run (default 20000 * D)");
    app.add_option("--mode", o.mode, "ude3 or ude2");
    app.add_option("--config", o.config_file, "JSON file overriding engine settings");
    app.add_option("--output", o.output, "Machine-readable output file");
    app.add_option("--format", o.format, "csv or json")->capture_default_str();
    app.add_flag("--trace", o.trace, "Record per-generation traces");
    app.add_flag("--compare", o.compare, "Run both ude3 and ude2 and compare");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "ude3: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        return execute(o, out);
    } catch (const ConfigError& e) {
        err << "ude3: " << e.what() << '\n';
        return kExitConfig;
    } catch (const EvaluationError& e) {
        err << "ude3: evaluator error: " << e.what() << '\n';
        return kExitEvaluator;
    }
}

}  // namespace ude::cli
