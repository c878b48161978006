// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wetfbl/energy.hpp"
#include "wetfbl/opt.hpp"
#include "wetfbl/scheme.hpp"

namespace wetfbl::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Task
{
    eval,
    sweep,
    validate,
    optimize,
};

enum class OptTarget
{
    min_delay,
    min_outage,
    pilot,
};

std::string_view to_string(Task task);
std::string_view to_string(OptTarget target);
Task parse_task(std::string_view text);
OptTarget parse_opt_target(std::string_view text);

//! Values of one swept parameter, kept in canonical (SI) text form.
struct SweepAxis
{
    std::string key;
    std::vector<std::string> values;
    friend bool operator==(SweepAxis const&, SweepAxis const&) = default;
};

struct OptimizeSpec
{
    OptTarget target = OptTarget::min_delay;
    double eps0 = 1e-4;
    int delta0 = 4000;
    int delta = 4000;        //!< budget for min_outage
    double pilot_lo = 1e-7;  //!< [W]
    double pilot_hi = 1e-3;  //!< [W]
    friend bool operator==(OptimizeSpec const&, OptimizeSpec const&) = default;
};

struct Scenario
{
    SysParams system;
    SchemeConfig scheme;
    opt::EvalOptions evaluator;
    OptimizeSpec optimize;
    std::vector<SweepAxis> sweep;
    Task task = Task::eval;
    std::string output_path;

    friend bool operator==(Scenario const&, Scenario const&) = default;
};

/*!
 * Parse a sectioned key = value document. Powers need a unit suffix (W,
 * mW, uW or dBm); values are converted to SI. Errors are ConfigError with
 * the offending line number.
 */
Scenario parse_scenario(std::string_view text);

//! Canonical document that parses back to an equal Scenario.
std::string serialize(Scenario const& scenario);

//! Set one parameter from its textual value, as in a config document.
void apply(Scenario& scenario, std::string_view key, std::string_view value);

//! Canonical text of a parameter's current value.
std::string value_string(Scenario const& scenario, std::string_view key);

//! Re-parse the configuration embedded in a CSV metadata header.
Scenario scenario_from_csv_header(std::string_view csv);

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    int failed_rows = 0;
    int infeasible_rows = 0;
};

/*!
 * Evaluate every grid point of the scenario on `workers` threads; rows
 * come back in grid order.
 */
Table run(Scenario const& scenario, int workers = 1);

//! CSV text with the '#' metadata header.
std::string to_csv(Scenario const& scenario, Table const& table);

//! 0 success, 2 if any row failed, 3 if an optimization was infeasible.
int exit_code(Table const& table);

}  // namespace wetfbl::cli
