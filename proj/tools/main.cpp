// SPDX-License-Identifier: Apache-2.0
// Batch front end: evaluate, sweep, optimize and validate scenarios.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "selftest.hpp"
#include "wetfbl/cli.hpp"
#include "wetfbl/error.hpp"

using namespace wetfbl;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitEval = 2;

std::string read_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage analysis of wirelessly powered short-packet links"};
    app.set_version_flag("--version", std::string(cli::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::optional<std::string> method;
    std::optional<std::string> target;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "CSV output path (default: [output] path, else stdout)");
        sub->add_option("--seed", seed, "Monte Carlo seed, overrides the config");
        sub->add_option("--workers", workers, "worker threads (0 = all cores)");
        sub->add_option("--method", method, "evaluator")->check(CLI::IsMember({"closed", "quad", "mc"}));
    };
    CLI::App* eval = app.add_subcommand("eval", "single-point evaluation");
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate every point of the [sweep] grid");
    CLI::App* optimize = app.add_subcommand("optimize", "min_delay, min_outage or pilot search");
    CLI::App* validate = app.add_subcommand("validate", "closed form against quadrature (xi report)");
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in oracle checks");
    for (CLI::App* sub : {eval, sweep, optimize, validate})
        add_common(sub);
    optimize->add_option("--target", target, "optimization target")
        ->check(CLI::IsMember({"min_delay", "min_outage", "pilot"}));

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (selftest->parsed())
        return tool::run_selftest(std::cout) == 0 ? 0 : kExitEval;

    cli::Scenario scenario;
    try
    {
        scenario = cli::parse_scenario(read_file(config_path));
        if (eval->parsed())
        {
            scenario.task = cli::Task::eval;
            if (!scenario.sweep.empty())
                throw ConfigError("eval takes a single point; use sweep for a [sweep] grid");
        }
        else if (sweep->parsed())
            scenario.task = cli::Task::sweep;
        else if (validate->parsed())
            scenario.task = cli::Task::validate;
        else
            scenario.task = cli::Task::optimize;
        if (target)
            scenario.optimize.target = cli::parse_opt_target(*target);
        if (seed)
            scenario.evaluator.mc.seed = *seed;
        if (method)
            cli::apply(scenario, "method", *method);
        if (!out_path.empty())
            scenario.output_path = out_path;
    }
    catch (std::exception const& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    cli::Table const table = cli::run(scenario, workers);
    std::string const csv = cli::to_csv(scenario, table);
    if (scenario.output_path.empty())
    {
        std::cout << csv;
    }
    else
    {
        std::ofstream out(scenario.output_path, std::ios::binary);
        if (!out)
        {
            std::cerr << "cannot write " << scenario.output_path << "\n";
            return kExitEval;
        }
        out << csv;
    }
    for (auto const& row : table.rows)
        if (!row.back().empty())
            std::cerr << "row failed: " << row.back() << "\n";
    return cli::exit_code(table);
}
