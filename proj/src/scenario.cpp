// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "wetfbl/cli.hpp"
#include "wetfbl/error.hpp"

namespace wetfbl::cli {
namespace {

enum class Kind
{
    power,
    energy,
    time,
    distance,
    real,
    integer,
    word,
};

struct Key
{
    std::string_view section;
    std::string_view name;
    Kind kind;
    std::function<void(Scenario&, double, std::string const&)> set;
    std::function<std::string(Scenario const&)> get;  // empty for write-only aliases
};

std::string trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto const e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(std::string const& text, std::string_view key)
{
    if (text == "inf" || text == "+inf")
        return std::numeric_limits<double>::infinity();
    double x = 0;
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last)
        throw ConfigError("invalid number '" + text + "' for " + std::string(key));
    return x;
}

long long parse_int(std::string const& text, std::string_view key)
{
    long long x = 0;
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, x);
    if (ec != std::errc() || ptr != last)
        throw ConfigError("invalid integer '" + text + "' for " + std::string(key));
    return x;
}

// Split "50 dBm" / "50dBm" into number and unit.
std::pair<std::string, std::string> split_unit(std::string const& text)
{
    std::size_t i = text.size();
    while (i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1])))
        --i;
    std::string number = trim(text.substr(0, i));
    std::string unit = text.substr(i);
    if (number.empty() || number.back() == '+' || number.back() == '-')
    {
        // Bare "inf" or a number without unit whose tail is alphabetic.
        return {text, ""};
    }
    return {number, unit};
}

double parse_quantity(std::string const& text, Kind kind, std::string_view key)
{
    auto [number, unit] = split_unit(text);
    switch (kind)
    {
        case Kind::power:
        {
            if (unit.empty())
                throw ConfigError(std::string(key) + " needs a power unit (W, mW, uW or dBm), got '"
                                  + text + "'");
            double const x = parse_real(number, key);
            if (unit == "W")
                return x;
            if (unit == "mW")
                return x * 1e-3;
            if (unit == "uW")
                return x * 1e-6;
            if (unit == "dBm")
                return dbm_to_watt(x);
            break;
        }
        case Kind::energy:
        {
            if (unit.empty() && number != "inf")
                throw ConfigError(std::string(key) + " needs an energy unit (J, mJ or uJ), got '"
                                  + text + "'");
            double const x = parse_real(number, key);
            if (unit.empty() || unit == "J")
                return x;
            if (unit == "mJ")
                return x * 1e-3;
            if (unit == "uJ")
                return x * 1e-6;
            break;
        }
        case Kind::time:
        {
            double const x = parse_real(number, key);
            if (unit.empty() || unit == "s")
                return x;
            if (unit == "ms")
                return x * 1e-3;
            if (unit == "us")
                return x * 1e-6;
            break;
        }
        case Kind::distance:
        {
            double const x = parse_real(number, key);
            if (unit.empty() || unit == "m")
                return x;
            if (unit == "km")
                return x * 1e3;
            break;
        }
        case Kind::real:
        {
            if (!unit.empty() && number != "inf")
                break;
            return parse_real(text, key);
        }
        case Kind::integer:
        {
            long long const v = parse_int(text, key);
            if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
                throw ConfigError(std::string(key) + " is out of range");
            return static_cast<double>(v);
        }
        case Kind::word: return 0.0;
    }
    throw ConfigError("unsupported unit '" + unit + "' for " + std::string(key));
}

std::string canonical(double x, Kind kind)
{
    switch (kind)
    {
        case Kind::power: return fmt(x) + " W";
        case Kind::energy: return fmt(x) + " J";
        case Kind::time: return fmt(x) + " s";
        case Kind::distance: return fmt(x) + " m";
        case Kind::integer:
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x));
            return buf;
        }
        default: return fmt(x);
    }
}

std::vector<Key> const& keys()
{
    static std::vector<Key> const table = [] {
        std::vector<Key> t;
        auto add_real = [&t](std::string_view sec, std::string_view name, Kind kind, auto setter,
                             auto getter) {
            t.push_back({sec, name, kind,
                         [setter](Scenario& s, double x, std::string const&) { setter(s, x); },
                         [getter, kind](Scenario const& s) { return canonical(getter(s), kind); }});
        };
        auto add_word
            = [&t](std::string_view sec, std::string_view name, auto setter, auto getter) {
                  t.push_back({sec, name, Kind::word,
                               [setter](Scenario& s, double, std::string const& w) { setter(s, w); },
                               [getter](Scenario const& s) { return std::string(getter(s)); }});
              };
#define WETFBL_REAL(sec, name, kind, expr)                                                       \
    add_real(sec, name, kind, [](Scenario& s, double x) { expr = x; },                          \
             [](Scenario const& s) { return double(expr); })
#define WETFBL_INT(sec, name, expr)                                                              \
    add_real(sec, name, Kind::integer, [](Scenario& s, double x) { expr = static_cast<int>(x); }, \
             [](Scenario const& s) { return double(expr); })

        WETFBL_REAL("system", "Tc", Kind::time, s.system.tc);
        WETFBL_REAL("system", "eta", Kind::real, s.system.eta);
        WETFBL_REAL("system", "PD", Kind::power, s.system.pd);
        WETFBL_REAL("system", "Pc", Kind::power, s.system.pc);
        WETFBL_REAL("system", "Pcsi", Kind::power, s.system.pcsi);
        WETFBL_REAL("system", "sigma2_D", Kind::power, s.system.sigma2_d);
        WETFBL_REAL("system", "sigma2_R", Kind::power, s.system.sigma2_r);
        WETFBL_REAL("system", "Bmax", Kind::energy, s.system.bmax);
        WETFBL_REAL("system", "kappa", Kind::real, s.system.kappa);
        WETFBL_REAL("system", "alpha", Kind::real, s.system.alpha);
        WETFBL_REAL("system", "d_SD", Kind::distance, s.system.d_sd);
        WETFBL_REAL("system", "d_SR", Kind::distance, s.system.d_sr);
        WETFBL_REAL("system", "d_RD", Kind::distance, s.system.d_rd);
        // Alias setting every distance at once; serialized through d_SD/d_SR/d_RD.
        t.push_back({"system", "d", Kind::distance,
                     [](Scenario& s, double x, std::string const&) {
                         s.system.d_sd = s.system.d_sr = s.system.d_rd = x;
                     },
                     {}});

        add_word(
            "scheme", "kind", [](Scenario& s, std::string const& w) { s.scheme.kind = parse_scheme_kind(w); },
            [](Scenario const& s) { return to_string(s.scheme.kind); });
        WETFBL_INT("scheme", "v", s.scheme.v);
        WETFBL_INT("scheme", "u", s.scheme.u);
        WETFBL_INT("scheme", "n", s.scheme.n);
        WETFBL_INT("scheme", "n1", s.scheme.n1);
        WETFBL_INT("scheme", "n2", s.scheme.n2);
        WETFBL_INT("scheme", "k", s.scheme.k);
        add_word(
            "scheme", "csi", [](Scenario& s, std::string const& w) { s.scheme.csi = parse_csi_mode(w); },
            [](Scenario const& s) { return to_string(s.scheme.csi); });

        add_word(
            "evaluator", "method",
            [](Scenario& s, std::string const& w) { s.evaluator.method = opt::parse_evaluator(w); },
            [](Scenario const& s) { return opt::to_string(s.evaluator.method); });
        WETFBL_INT("evaluator", "i_max", s.evaluator.i_max);
        add_real(
            "evaluator", "samples", Kind::integer,
            [](Scenario& s, double x) { s.evaluator.mc.samples = static_cast<long>(x); },
            [](Scenario const& s) { return double(s.evaluator.mc.samples); });
        add_real(
            "evaluator", "batch", Kind::integer,
            [](Scenario& s, double x) { s.evaluator.mc.batch = static_cast<long>(x); },
            [](Scenario const& s) { return double(s.evaluator.mc.batch); });
        add_word(
            "evaluator", "seed",
            [](Scenario& s, std::string const& w) {
                std::uint64_t x = 0;
                auto const* last = w.data() + w.size();
                auto [ptr, ec] = std::from_chars(w.data(), last, x);
                if (ec != std::errc() || ptr != last)
                    throw ConfigError("invalid seed '" + w + "'");
                s.evaluator.mc.seed = x;
            },
            [](Scenario const& s) { return std::to_string(s.evaluator.mc.seed); });
        WETFBL_REAL("evaluator", "ci_level", Kind::real, s.evaluator.mc.ci_level);
        WETFBL_REAL("evaluator", "rel_tol", Kind::real, s.evaluator.quad.rel_tol);
        WETFBL_REAL("evaluator", "abs_tol", Kind::real, s.evaluator.quad.abs_tol);
        WETFBL_REAL("evaluator", "truncation", Kind::real, s.evaluator.quad.truncation_point);
        WETFBL_INT("evaluator", "max_subdivisions", s.evaluator.quad.max_subdivisions);

        add_word(
            "optimize", "target",
            [](Scenario& s, std::string const& w) { s.optimize.target = parse_opt_target(w); },
            [](Scenario const& s) { return to_string(s.optimize.target); });
        WETFBL_REAL("optimize", "eps0", Kind::real, s.optimize.eps0);
        WETFBL_INT("optimize", "delta0", s.optimize.delta0);
        WETFBL_INT("optimize", "delta", s.optimize.delta);
        WETFBL_REAL("optimize", "pilot_lo", Kind::power, s.optimize.pilot_lo);
        WETFBL_REAL("optimize", "pilot_hi", Kind::power, s.optimize.pilot_hi);

        add_word(
            "output", "task", [](Scenario& s, std::string const& w) { s.task = parse_task(w); },
            [](Scenario const& s) { return to_string(s.task); });
        add_word(
            "output", "path", [](Scenario& s, std::string const& w) { s.output_path = w; },
            [](Scenario const& s) { return s.output_path; });
#undef WETFBL_REAL
#undef WETFBL_INT
        return t;
    }();
    return table;
}

Key const* find_key(std::string_view name, std::string_view section = {})
{
    for (Key const& k : keys())
        if (k.name == name && (section.empty() || k.section == section))
            return &k;
    return nullptr;
}

std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

std::vector<std::string> parse_axis(Key const& key, std::string const& text)
{
    std::vector<std::string> out;
    for (std::string const& item : split_list(text))
    {
        if (item.empty())
            throw ConfigError("empty value in sweep list for " + std::string(key.name));
        auto const colon = item.find(':');
        if (colon != std::string::npos)
        {
            if (key.kind != Kind::integer)
                throw ConfigError("ranges a:b:step are only supported for integer keys, not "
                                  + std::string(key.name));
            auto const colon2 = item.find(':', colon + 1);
            if (colon2 == std::string::npos)
                throw ConfigError("range for " + std::string(key.name) + " must be a:b:step");
            long long const a = parse_int(trim(item.substr(0, colon)), key.name);
            long long const b = parse_int(trim(item.substr(colon + 1, colon2 - colon - 1)), key.name);
            long long const step = parse_int(trim(item.substr(colon2 + 1)), key.name);
            if (step < 1 || b < a)
                throw ConfigError("range for " + std::string(key.name) + " needs a <= b and step >= 1");
            for (long long x = a; x <= b; x += step)
                out.push_back(std::to_string(x));
            continue;
        }
        if (key.kind == Kind::word)
        {
            // Validate through a scratch scenario.
            Scenario scratch;
            key.set(scratch, 0.0, item);
            out.push_back(item);
        }
        else
        {
            out.push_back(canonical(parse_quantity(item, key.kind, key.name), key.kind));
        }
    }
    if (out.empty())
        throw ConfigError("sweep axis " + std::string(key.name) + " has no values");
    return out;
}

void validate(Scenario const& s)
{
    s.system.validate();
    s.scheme.validate();
    s.evaluator.quad.validate();
    s.evaluator.mc.validate();
    if (s.evaluator.i_max < 0)
        throw ConfigError("i_max must be >= 0");
    if (s.task == Task::optimize)
    {
        opt::Constraint{s.optimize.eps0, s.optimize.delta0}.validate();
        if (!(s.optimize.pilot_lo > 0.0 && s.optimize.pilot_lo < s.optimize.pilot_hi))
            throw ConfigError("pilot search needs 0 < pilot_lo < pilot_hi");
    }
}

}  // namespace

std::string_view to_string(Task task)
{
    switch (task)
    {
        case Task::eval: return "eval";
        case Task::sweep: return "sweep";
        case Task::validate: return "validate";
        case Task::optimize: return "optimize";
    }
    return "?";
}

std::string_view to_string(OptTarget target)
{
    switch (target)
    {
        case OptTarget::min_delay: return "min_delay";
        case OptTarget::min_outage: return "min_outage";
        case OptTarget::pilot: return "pilot";
    }
    return "?";
}

Task parse_task(std::string_view text)
{
    for (Task t : {Task::eval, Task::sweep, Task::validate, Task::optimize})
        if (text == to_string(t))
            return t;
    throw ConfigError("unknown task '" + std::string(text) + "'");
}

OptTarget parse_opt_target(std::string_view text)
{
    for (OptTarget t : {OptTarget::min_delay, OptTarget::min_outage, OptTarget::pilot})
        if (text == to_string(t))
            return t;
    throw ConfigError("unknown optimize target '" + std::string(text)
                      + "' (expected min_delay, min_outage or pilot)");
}

void apply(Scenario& scenario, std::string_view key, std::string_view value)
{
    Key const* k = find_key(key);
    if (k == nullptr || k->section == "output")
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    std::string const text = trim(value);
    double const x = k->kind == Kind::word ? 0.0 : parse_quantity(text, k->kind, k->name);
    k->set(scenario, x, text);
}

std::string value_string(Scenario const& scenario, std::string_view key)
{
    Key const* k = find_key(key);
    if (k == nullptr)
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    if (!k->get)
        return find_key("d_SD")->get(scenario);
    return k->get(scenario);
}

Scenario parse_scenario(std::string_view text)
{
    Scenario s;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string line = raw;
        if (auto const hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        try
        {
            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw ConfigError("malformed section header '" + line + "'");
                section = trim(line.substr(1, line.size() - 2));
                static constexpr std::string_view kSections[]
                    = {"system", "scheme", "evaluator", "sweep", "optimize", "output"};
                if (std::find(std::begin(kSections), std::end(kSections), section) == std::end(kSections))
                    throw ConfigError("unknown section [" + section + "]");
                continue;
            }
            auto const eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected key = value, got '" + line + "'");
            std::string const key = trim(line.substr(0, eq));
            std::string const value = trim(line.substr(eq + 1));
            if (section.empty())
                throw ConfigError("key '" + key + "' appears before any section");
            if (value.empty())
                throw ConfigError("key '" + key + "' has no value");

            if (section == "sweep")
            {
                Key const* k = find_key(key);
                if (k == nullptr || k->section == "output")
                    throw ConfigError("unknown sweep parameter '" + key + "'");
                SweepAxis axis{key, parse_axis(*k, value)};
                auto it = std::find_if(s.sweep.begin(), s.sweep.end(),
                                       [&](SweepAxis const& a) { return a.key == key; });
                if (it != s.sweep.end())
                    throw ConfigError("sweep axis '" + key + "' given twice");
                s.sweep.push_back(std::move(axis));
                continue;
            }
            Key const* k = find_key(key, section);
            if (k == nullptr)
                throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            double const x = k->kind == Kind::word ? 0.0 : parse_quantity(value, k->kind, k->name);
            k->set(s, x, value);
        }
        catch (ConfigError const& e)
        {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(s);
    return s;
}

std::string serialize(Scenario const& scenario)
{
    std::ostringstream out;
    std::string_view current;
    for (Key const& k : keys())
    {
        if (!k.get)
            continue;
        if (k.section == "output" && k.name == "path" && scenario.output_path.empty())
            continue;
        if (k.section != current)
        {
            if (k.section == "output" && !scenario.sweep.empty())
            {
                out << "[sweep]\n";
                for (SweepAxis const& a : scenario.sweep)
                {
                    out << a.key << " =";
                    for (std::size_t i = 0; i < a.values.size(); ++i)
                        out << (i ? ", " : " ") << a.values[i];
                    out << "\n";
                }
            }
            current = k.section;
            out << "[" << current << "]\n";
        }
        out << k.name << " = " << k.get(scenario) << "\n";
    }
    return out.str();
}

Scenario scenario_from_csv_header(std::string_view csv)
{
    std::istringstream in{std::string(csv)};
    std::string line;
    std::string doc;
    bool in_config = false;
    while (std::getline(in, line))
    {
        if (line.rfind("#", 0) != 0)
            break;
        if (line == "# config:")
        {
            in_config = true;
            continue;
        }
        if (in_config && line.rfind("#   ", 0) == 0)
            doc += line.substr(4) + "\n";
    }
    if (!in_config)
        throw ConfigError("CSV header carries no configuration block");
    return parse_scenario(doc);
}

}  // namespace wetfbl::cli
