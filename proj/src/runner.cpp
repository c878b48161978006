// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "wetfbl/cli.hpp"
#include "wetfbl/dc.hpp"
#include "wetfbl/error.hpp"

namespace wetfbl::cli {
namespace {

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

bool is_grid_axis(std::string const& key)
{
    return key == "v" || key == "n" || key == "n1" || key == "n2";
}

bool consumes_grid(Scenario const& s)
{
    return s.task == Task::optimize && s.optimize.target != OptTarget::pilot;
}

std::vector<SweepAxis> outer_axes(Scenario const& s)
{
    std::vector<SweepAxis> out;
    for (SweepAxis const& a : s.sweep)
        if (!(consumes_grid(s) && is_grid_axis(a.key)))
            out.push_back(a);
    return out;
}

std::vector<int> grid_values(Scenario const& point, Scenario const& base, std::string const& key)
{
    for (SweepAxis const& a : base.sweep)
    {
        if (a.key != key)
            continue;
        std::vector<int> out;
        for (std::string const& v : a.values)
            out.push_back(std::stoi(v));
        return out;
    }
    return {std::stoi(value_string(point, key))};
}

std::vector<std::string> result_columns(Scenario const& s)
{
    switch (s.task)
    {
        case Task::eval:
        case Task::sweep: return {"p_total", "p_energy", "p_error", "method", "bound", "seed"};
        case Task::validate: return {"p_quad", "quad_bound", "p_closed", "xi"};
        case Task::optimize:
            if (s.optimize.target == OptTarget::pilot)
                return {"pcsi_dbm", "pcsi_w", "p_out", "bracketed", "evaluations"};
            return {"feasible", "v", "u", "n", "n1", "n2", "delta", "beta", "p_out", "bound", "evaluated"};
    }
    return {};
}

std::vector<std::string> evaluate_row(Scenario const& base, Scenario const& point, int workers)
{
    opt::EvalOptions options = point.evaluator;
    options.workers = workers;
    switch (point.task)
    {
        case Task::eval:
        case Task::sweep:
        {
            point.system.validate();
            point.scheme.validate();
            opt::Evaluation const e = opt::evaluate_outage(point.system, point.scheme, options);
            return {num(e.p_total), num(e.p_energy), num(e.p_error), e.method, num(e.bound),
                    std::to_string(point.evaluator.mc.seed)};
        }
        case Task::validate:
        {
            dc::DcOutage const q = dc::avg_error_quadrature(point.system, point.scheme, point.evaluator.quad);
            dc::DcOutage const c = dc::closed_form(point.system, point.scheme, point.evaluator.i_max);
            return {num(q.p_total), num(q.err_bound), num(c.p_total), num(dc::xi_metric(q.p_total, c.p_total))};
        }
        case Task::optimize: break;
    }

    if (point.optimize.target == OptTarget::pilot)
    {
        opt::PilotOptimum const r = opt::optimal_pilot_power(
            point.system, point.scheme, watt_to_dbm(point.optimize.pilot_lo),
            watt_to_dbm(point.optimize.pilot_hi), options);
        return {num(r.dbm), num(r.watt), num(r.p_out), r.bracketed ? "true" : "false",
                std::to_string(r.profile.size())};
    }

    opt::SearchGrid grid;
    grid.v_values = grid_values(point, base, "v");
    if (point.scheme.is_relay())
    {
        grid.n_values = grid_values(point, base, "n1");
        bool const has_n2 = std::any_of(base.sweep.begin(), base.sweep.end(),
                                        [](SweepAxis const& a) { return a.key == "n2"; });
        if (has_n2)
            grid.n2_values = grid_values(point, base, "n2");
    }
    else
    {
        grid.n_values = grid_values(point, base, "n");
    }
    opt::OperatingPoint const p
        = point.optimize.target == OptTarget::min_delay
              ? opt::min_delay(point.system, point.scheme,
                               {point.optimize.eps0, point.optimize.delta0}, grid, options)
              : opt::min_outage_at_delay(point.system, point.scheme, point.optimize.delta, grid, options);
    bool const relay = p.scheme.is_relay();
    bool const found = p.evaluated > 0;
    auto len = [&](bool show, int value) { return show && found ? std::to_string(value) : std::string(); };
    return {p.feasible ? "true" : "false",
            len(true, p.scheme.v),
            len(true, p.scheme.u),
            len(!relay, p.scheme.n),
            len(relay, p.scheme.n1),
            len(relay, p.scheme.n2),
            found ? std::to_string(p.delta) : "",
            found ? num(p.beta) : "",
            found ? num(p.p_out) : "",
            found ? num(p.bound) : "",
            std::to_string(p.evaluated)};
}

std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

Table run(Scenario const& scenario, int workers)
{
    std::vector<SweepAxis> const axes = outer_axes(scenario);
    std::size_t total = 1;
    for (SweepAxis const& a : axes)
        total *= a.values.size();

    Table table;
    for (SweepAxis const& a : axes)
        table.columns.push_back(a.key);
    std::vector<std::string> const results = result_columns(scenario);
    table.columns.insert(table.columns.end(), results.begin(), results.end());
    table.columns.push_back("error");

    std::vector<std::vector<std::string>> rows(total);
    std::vector<char> failed(total, 0);
    std::vector<char> infeasible(total, 0);

    int const threads = static_cast<int>(std::min<std::size_t>(std::max(1, workers), total));
    // A single point keeps every worker for its own Monte Carlo batches.
    int const inner_workers = threads == 1 ? std::max(1, workers) : 1;

    auto evaluate = [&](std::size_t index) {
        Scenario point = scenario;
        std::vector<std::string> row;
        std::size_t rem = index;
        std::vector<std::string> values(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;)
        {
            values[a] = axes[a].values[rem % axes[a].values.size()];
            rem /= axes[a].values.size();
        }
        try
        {
            for (std::size_t a = 0; a < axes.size(); ++a)
                apply(point, axes[a].key, values[a]);
            for (std::size_t a = 0; a < axes.size(); ++a)
                row.push_back(value_string(point, axes[a].key));
            std::vector<std::string> r = evaluate_row(scenario, point, inner_workers);
            if (scenario.task == Task::optimize && scenario.optimize.target != OptTarget::pilot
                && r.front() == "false")
                infeasible[index] = 1;
            row.insert(row.end(), r.begin(), r.end());
            row.push_back("");
        }
        catch (std::exception const& e)
        {
            row = values;
            row.resize(table.columns.size() - 1);
            row.push_back(e.what());
            failed[index] = 1;
        }
        rows[index] = std::move(row);
    };

    if (threads == 1)
    {
        for (std::size_t i = 0; i < total; ++i)
            evaluate(i);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++)
                    evaluate(i);
            });
        for (auto& th : pool)
            th.join();
    }
    table.rows = std::move(rows);
    for (std::size_t i = 0; i < total; ++i)
    {
        table.failed_rows += failed[i];
        table.infeasible_rows += infeasible[i];
    }
    return table;
}

std::string to_csv(Scenario const& scenario, Table const& table)
{
    std::ostringstream out;
    out << "# wetfbl " << kVersion << "\n";
    out << "# task: " << to_string(scenario.task) << "\n";
    out << "# config:\n";
    std::istringstream cfg(serialize(scenario));
    std::string line;
    while (std::getline(cfg, line))
        out << "#   " << line << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << csv_field(table.columns[i]);
    out << "\n";
    for (auto const& row : table.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
    }
    return out.str();
}

int exit_code(Table const& table)
{
    if (table.failed_rows > 0)
        return 2;
    if (table.infeasible_rows > 0)
        return 3;
    return 0;
}

}  // namespace wetfbl::cli
