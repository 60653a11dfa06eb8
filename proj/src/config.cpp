#include "qcorr/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qcorr {

using nlohmann::json;

std::string_view scenario_name(Scenario s)
{
    switch (s) {
    case Scenario::Evolve:
        return "evolve";
    case Scenario::Sweep:
        return "sweep";
    case Scenario::Figure1:
        return "figure1";
    case Scenario::Figure2:
        return "figure2";
    case Scenario::Audit:
        return "audit";
    case Scenario::CompareBackends:
        return "compare-backends";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what)
{
    throw ConfigError("config error at \"" + key + "\": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.count(key))
            fail(where.empty() ? key : where + "." + key, "unknown field");
}

const json& require_object(const json& v, const std::string& key)
{
    if (!v.is_object())
        fail(key, "expected an object");
    return v;
}

double number(const json& v, const std::string& key)
{
    if (!v.is_number())
        fail(key, "expected a number");
    return v.get<double>();
}

Complex complex_value(const json& v, const std::string& key)
{
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    fail(key, "expected a number or a [re, im] pair");
}

std::string short_number(double v)
{
    std::ostringstream out;
    out << v;
    return out.str();
}

void parse_state(const json& v, RunConfig& cfg)
{
    const std::string key = "state";
    require_object(v, key);
    if (v.size() != 1)
        fail(key, "expected exactly one state constructor");
    const std::string name = v.begin().key();
    const json& args = v.begin().value();
    const std::string where = key + "." + name;
    require_object(args, where);

    if (name == "yu_eberly") {
        reject_unknown(args, where, {"alpha"});
        if (!args.contains("alpha"))
            fail(where + ".alpha", "missing");
        const double alpha = number(args["alpha"], where + ".alpha");
        if (!(alpha >= 0.0 && alpha <= 1.0))
            fail(where + ".alpha", "alpha out of range [0, 1]");
        cfg.state0 = yu_eberly_state(alpha);
        cfg.state_label = "yu_eberly(alpha=" + short_number(alpha) + ")";
    } else if (name == "thermal") {
        reject_unknown(args, where, {"m"});
        const double m = args.contains("m") ? number(args["m"], where + ".m") : 0.0;
        if (!(m >= 0.0))
            fail(where + ".m", "m must be >= 0");
        cfg.state0 = thermal_product_state(m);
        cfg.state_label = "thermal(m=" + short_number(m) + ")";
    } else if (name == "bell_phi_plus") {
        reject_unknown(args, where, {});
        cfg.state0 = bell_phi_plus();
        cfg.state_label = "bell_phi_plus";
    } else if (name == "maximally_mixed") {
        reject_unknown(args, where, {});
        cfg.state0 = maximally_mixed();
        cfg.state_label = "maximally_mixed";
    } else if (name == "explicit") {
        reject_unknown(args, where, {"a", "b", "c", "d", "w", "z"});
        XState s;
        for (const char* k : {"a", "b", "c", "d"})
            if (!args.contains(k))
                fail(where + "." + k, "missing");
        s.a = number(args["a"], where + ".a");
        s.b = number(args["b"], where + ".b");
        s.c = number(args["c"], where + ".c");
        s.d = number(args["d"], where + ".d");
        if (args.contains("w"))
            s.w = complex_value(args["w"], where + ".w");
        if (args.contains("z"))
            s.z = complex_value(args["z"], where + ".z");
        if (auto err = check_xstate(s); !err.empty())
            fail(where, err);
        cfg.state0 = s;
        cfg.state_label = "explicit";
    } else {
        fail(where, "unknown state constructor");
    }
}

Backend parse_backend(const json& v, double gamma)
{
    const std::string key = "backend";
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        if (name == "repaired")
            return RepairedClosedForm{};
        if (name == "literal")
            return PaperLiteral{};
        if (name == "ode")
            return OdeOracle{default_ode_step(gamma)};
        fail(key, "unknown backend \"" + name + "\"");
    }
    if (v.is_object() && v.size() == 1 && v.contains("ode")) {
        const auto& args = require_object(v["ode"], key + ".ode");
        reject_unknown(args, key + ".ode", {"step"});
        double step = default_ode_step(gamma);
        if (args.contains("step"))
            step = number(args["step"], key + ".ode.step");
        if (!(step > 0.0))
            fail(key + ".ode.step", "step must be positive");
        return OdeOracle{step};
    }
    fail(key, "expected \"repaired\", \"literal\", \"ode\" or {\"ode\": {\"step\": ...}}");
}

std::vector<Measure> default_measures(Scenario s)
{
    switch (s) {
    case Scenario::Figure1:
        return {Measure::GmodXState};
    case Scenario::Figure2:
        return {Measure::MinPaper, Measure::MinGeneral};
    default:
        return {Measure::GmodXState, Measure::MinPaper, Measure::MinGeneral, Measure::Concurrence};
    }
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line and column.
        const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(col)
                          + ": " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config error: top level must be a JSON object");

    reject_unknown(doc, "",
        {"scenario", "state", "m", "gamma", "grid", "backend", "measures", "output", "emit_svg"});

    RunConfig cfg;
    if (!doc.contains("scenario"))
        fail("scenario", "missing");
    if (!doc["scenario"].is_string())
        fail("scenario", "expected a string");
    {
        const auto name = doc["scenario"].get<std::string>();
        bool found = false;
        for (auto s : {Scenario::Evolve, Scenario::Sweep, Scenario::Figure1, Scenario::Figure2, Scenario::Audit,
                 Scenario::CompareBackends}) {
            if (scenario_name(s) == name) {
                cfg.scenario = s;
                found = true;
            }
        }
        if (!found)
            fail("scenario", "unknown scenario \"" + name + "\"");
    }

    cfg.state0 = yu_eberly_state(0.5);
    cfg.state_label = "yu_eberly(alpha=0.5)";
    if (doc.contains("state"))
        parse_state(doc["state"], cfg);

    if (doc.contains("m")) {
        const auto& v = doc["m"];
        if (!v.is_array() || v.empty())
            fail("m", "expected a non-empty array of numbers");
        cfg.m_values.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double m = number(v[i], "m[" + std::to_string(i) + "]");
            if (!(m >= 0.0) || !std::isfinite(m))
                fail("m[" + std::to_string(i) + "]", "m must be finite and >= 0");
            cfg.m_values.push_back(m);
        }
    }

    if (doc.contains("gamma")) {
        cfg.gamma = number(doc["gamma"], "gamma");
        if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma))
            fail("gamma", "gamma must be positive");
    }

    if (doc.contains("grid")) {
        const auto& g = require_object(doc["grid"], "grid");
        reject_unknown(g, "grid", {"points", "x_min", "x_max"});
        if (g.contains("points")) {
            if (!g["points"].is_number_integer())
                fail("grid.points", "expected an integer");
            cfg.grid.points = g["points"].get<int>();
            if (cfg.grid.points < 2)
                fail("grid.points", "need at least 2 points");
        }
        if (g.contains("x_min"))
            cfg.grid.x_min = number(g["x_min"], "grid.x_min");
        if (g.contains("x_max"))
            cfg.grid.x_max = number(g["x_max"], "grid.x_max");
        if (!(cfg.grid.x_min >= 0.0 && cfg.grid.x_min <= 1.0))
            fail("grid.x_min", "must lie in [0, 1]");
        if (!(cfg.grid.x_max >= 0.0 && cfg.grid.x_max <= 1.0))
            fail("grid.x_max", "must lie in [0, 1]");
        if (!(cfg.grid.x_min < cfg.grid.x_max))
            fail("grid", "x_min must be below x_max");
    }

    if (doc.contains("backend"))
        cfg.backend = parse_backend(doc["backend"], cfg.gamma);

    cfg.measures = default_measures(cfg.scenario);
    if (doc.contains("measures")) {
        const auto& v = doc["measures"];
        if (!v.is_array() || v.empty())
            fail("measures", "expected a non-empty array of measure names");
        cfg.measures.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string key = "measures[" + std::to_string(i) + "]";
            if (!v[i].is_string())
                fail(key, "expected a string");
            try {
                cfg.measures.push_back(parse_measure(v[i].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                fail(key, e.what());
            }
        }
    }
    if (cfg.scenario == Scenario::Figure2) {
        const auto has = [&](Measure m) { return std::find(cfg.measures.begin(), cfg.measures.end(), m) != cfg.measures.end(); };
        if (!has(Measure::MinPaper) || !has(Measure::MinGeneral))
            fail("measures", "figure2 requires both min_paper and min_general");
    }

    cfg.output = std::string(scenario_name(cfg.scenario));
    if (doc.contains("output")) {
        if (!doc["output"].is_string() || doc["output"].get<std::string>().empty())
            fail("output", "expected a non-empty string");
        cfg.output = doc["output"].get<std::string>();
    }
    if (doc.contains("emit_svg")) {
        if (!doc["emit_svg"].is_boolean())
            fail("emit_svg", "expected true or false");
        cfg.emit_svg = doc["emit_svg"].get<bool>();
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace qcorr
