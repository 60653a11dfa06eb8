// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "qcorr/analysis.hpp"
#include "qcorr/run.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace qcorr;
namespace fs = std::filesystem;
using qcorr::testing::max_abs_diff;
using qcorr::testing::random_xstate;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string num(double v)
{
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

const std::vector<double> kDefaultM{0.0, 0.1, 0.5, 1.0};

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(QCORR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch()
{
    auto dir = fs::temp_directory_path() / ("qcorr_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    return dir;
}

// Shared by criteria 1 and 2.
struct OracleRun {
    double max_dev = 0.0;
    double seconds = 0.0;
    std::vector<XState> propagated;
};

OracleRun oracle_run()
{
    static std::optional<OracleRun> cached;
    if (cached)
        return *cached;
    OracleRun run;
    std::mt19937_64 rng(2024);
    const double gamma = 1.0;
    const auto start = std::chrono::steady_clock::now();
    for (int n = 0; n < 100; ++n) {
        const auto s0 = random_xstate(rng);
        const auto rho0 = xstate_to_matrix(s0);
        for (double m : {0.0, 0.1, 0.5, 1.0, 2.0}) {
            const ReservoirParams params{gamma, m};
            const LindbladGenerator gen(params);
            for (double gt : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                const double t = gt / gamma;
                const auto ode = matrix_to_xstate(integrate_ode(rho0, gen, t, 1e-3 / gamma));
                const auto exact = propagate_repaired(s0, m, decay_parameter(params, t));
                run.max_dev = std::max(run.max_dev, max_abs_diff(ode, exact));
                run.propagated.push_back(exact);
                run.propagated.push_back(ode);
            }
        }
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cached = run;
    return run;
}

Outcome criterion_oracle_equivalence()
{
    const auto run = oracle_run();
    return {run.max_dev <= 1e-8 && run.seconds < 10.0,
        "max deviation " + num(run.max_dev) + " (tol 1e-8), runtime " + num(run.seconds) + " s (limit 10 s)"};
}

Outcome criterion_physicality()
{
    double worst_trace = 0.0, worst_eig = 0.0, worst_semigroup = 0.0;
    auto inspect = [&](const XState& s) {
        const auto report = validate(xstate_to_matrix_unchecked(s));
        worst_trace = std::max(worst_trace, report.trace_defect);
        worst_eig = std::min(worst_eig, report.min_eigenvalue);
    };
    for (const auto& s : oracle_run().propagated)
        inspect(s);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < 2000; ++n) {
        const auto s0 = random_xstate(rng);
        const double m = 2.0 * unit(rng);
        const double x1 = unit(rng), x2 = unit(rng);
        const auto s1 = propagate_repaired(s0, m, DecayParameter::from_value(x1));
        inspect(s1);
        const auto both = propagate_repaired(s1, m, DecayParameter::from_value(x2));
        const auto direct = propagate_repaired(s0, m, DecayParameter::from_value(x1 * x2));
        worst_semigroup = std::max(worst_semigroup, max_abs_diff(both, direct));
    }
    for (double m : kDefaultM)
        for (double x : uniform_grid(201))
            for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
                inspect(propagate_repaired(yu_eberly_state(alpha), m, DecayParameter::from_value(x)));

    const bool pass = worst_trace <= 1e-12 && worst_eig >= -1e-10 && worst_semigroup <= 1e-13;
    return {pass, "trace defect " + num(worst_trace) + ", min eigenvalue " + num(worst_eig) + ", semigroup "
            + num(worst_semigroup)};
}

Outcome criterion_literal_pinning()
{
    std::mt19937_64 rng(3);
    double worst_sum = 0.0, worst_identity = 0.0;
    for (int n = 0; n < 100; ++n) {
        const auto s0 = random_xstate(rng);
        for (double x : uniform_grid(21)) {
            const auto lit = propagate_paper_literal(s0, 0.0, DecayParameter::from_value(x));
            worst_sum = std::max(worst_sum, std::abs(lit.elements.trace() - x));
        }
        for (double m : {0.0, 0.1, 0.5, 1.0, 2.0}) {
            const auto lit = propagate_paper_literal(s0, m, DecayParameter::from_value(1.0));
            worst_identity = std::max(worst_identity, max_abs_diff(lit.elements, s0));
        }
    }
    return {worst_sum <= 1e-12 && worst_identity <= 1e-12,
        "m=0 |sum - X| " + num(worst_sum) + ", X=1 identity " + num(worst_identity) + " (tol 1e-12)"};
}

Outcome criterion_spot_values()
{
    const auto bell = bell_phi_plus();
    const auto bell_rho = xstate_to_matrix(bell);
    const auto ye_half = yu_eberly_state(0.5);
    const std::vector<std::pair<double, double>> checks{
        {gmod_xstate(bell).value, 0.5},
        {gmod_general(bell_rho).value, 0.5},
        {min_xstate_paper(bell).value, 0.5},
        {min_general(bell_rho).value, 0.5},
        {gmod_xstate(ye_half).value, 5.0 / 36.0},
        {min_xstate_paper(ye_half).value, 2.0 / 9.0},
        {concurrence_xstate(yu_eberly_state(1.0)).value, 2.0 / 3.0},
    };
    double worst = 0.0;
    for (const auto& [got, want] : checks)
        worst = std::max(worst, std::abs(got - want));
    return {worst <= 1e-12, "max |value - expected| " + num(worst) + " over 7 spot values (tol 1e-12)"};
}

SweepSetup ye_setup(double alpha, double m, Measure measure, Backend backend = RepairedClosedForm{})
{
    return {yu_eberly_state(alpha), "yu_eberly", {1.0, m}, measure, backend};
}

Outcome criterion_paper_claims()
{
    std::ostringstream detail;
    bool pass = true;

    // (a)
    bool a_ok = true;
    for (double m : kDefaultM)
        a_ok &= std::holds_alternative<AsymptoticDecay>(classify(ye_setup(0.5, m, Measure::GmodXState)));
    detail << "(a) GMOD asymptotic decay for all m: " << (a_ok ? "yes" : "no");
    pass &= a_ok;

    // (b)
    std::vector<double> g1, g0, m1, m0;
    for (double m : kDefaultM) {
        g1.push_back(measure_at(ye_setup(0.5, m, Measure::GmodXState), 1.0));
        g0.push_back(measure_at(ye_setup(0.5, m, Measure::GmodXState), 0.0));
        m1.push_back(measure_at(ye_setup(0.5, m, Measure::MinPaper), 1.0));
        m0.push_back(measure_at(ye_setup(0.5, m, Measure::MinPaper), 0.0));
    }
    auto spread = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
    };
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m0.size(); ++i)
        for (std::size_t j = i + 1; j < m0.size(); ++j)
            min_gap = std::min(min_gap, std::abs(m0[i] - m0[j]));
    const bool b_ok = spread(g1) <= 1e-12 && spread(g0) <= 1e-12 && spread(m1) <= 1e-12 && min_gap >= 1e-6;
    detail << "; (b) spreads GMOD(1) " << num(spread(g1)) << ", GMOD(0) " << num(spread(g0)) << ", MIN(1) "
           << num(spread(m1)) << ", min pairwise MIN(0) gap " << num(min_gap);
    pass &= b_ok;

    // (c)
    double worst = 0.0;
    bool c_ok = true;
    for (double m : kDefaultM) {
        const auto c = classify(ye_setup(0.5, m, Measure::MinPaper));
        if (!std::holds_alternative<PersistentPlateau>(c)) {
            c_ok = false;
            continue;
        }
        worst = std::max(worst, std::abs(std::get<PersistentPlateau>(c).limit - 0.25 / std::pow(1 + 2 * m, 4)));
    }
    c_ok &= worst <= 1e-10;
    detail << "; (c) MIN-paper plateau error " << num(worst);
    pass &= c_ok;
    return {pass, detail.str()};
}

std::map<std::string, std::vector<std::string>> parse_audit_verdicts(const std::string& text)
{
    std::map<std::string, std::vector<std::string>> verdicts;
    std::istringstream in(text);
    std::string line, current;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '[')
            current = line.substr(1, line.find(']') - 1);
        const auto pos = line.find("verdict:");
        if (pos != std::string::npos) {
            std::istringstream rest(line.substr(pos + 8));
            std::string word;
            rest >> word;
            verdicts[current].push_back(word);
        }
    }
    return verdicts;
}

Outcome criterion_audit()
{
    const auto dir = scratch();
    write_file(dir / "audit.json", R"({"scenario":"audit","state":{"yu_eberly":{"alpha":0.5}},"m":[0.1,0.5,1]})");
    const int code = run_cli((dir / "audit.json").string() + " --out " + dir.string());
    const auto text = read_file(dir / "audit.txt");
    fs::remove_all(dir);
    if (code != 0)
        return {false, "qcorr audit exited with " + std::to_string(code)};

    const auto verdicts = parse_audit_verdicts(text);
    const std::map<std::string, std::string> expected{
        {"gmod_initial_positive", "reproduced"},
        {"min_initial_positive/min_paper", "reproduced"},
        {"min_initial_positive/min_general", "reproduced"},
        {"gmod_asymptotic_decay", "reproduced"},
        {"gmod_no_sudden_death", "reproduced"},
        {"min_no_sudden_death/min_paper", "reproduced"},
        {"min_no_sudden_death/min_general", "reproduced"},
        {"min_no_asymptotic_decay/min_paper", "reproduced"},
        {"min_no_asymptotic_decay/min_general", "contradicted"},
        {"min_infinity_value/min_paper", "contradicted"},
        {"min_infinity_value/min_general", "contradicted"},
        {"min_decay_condition", "not-applicable"},
    };
    std::vector<std::string> problems;
    for (const auto& [id, want] : expected) {
        auto it = verdicts.find(id);
        if (it == verdicts.end() || it->second.size() != 3) {
            problems.push_back(id + " missing");
            continue;
        }
        for (const auto& got : it->second)
            if (got != want)
                problems.push_back(id + " = " + got);
    }
    if (verdicts.size() != expected.size())
        problems.push_back("unexpected claim count " + std::to_string(verdicts.size()));
    const bool unphysical = text.find("outside physical state space") != std::string::npos;
    if (!unphysical)
        problems.push_back("a0 condition not flagged unphysical");

    std::string detail = "12 claims x m in {0.1, 0.5, 1}";
    for (const auto& p : problems)
        detail += "; " + p;
    return {problems.empty(), detail};
}

Outcome criterion_esd_contrast()
{
    const auto rep = classify(ye_setup(1.0, 0.0, Measure::Concurrence));
    const auto ode = classify(ye_setup(1.0, 0.0, Measure::Concurrence, OdeOracle{}));
    if (!std::holds_alternative<SuddenDeath>(rep) || !std::holds_alternative<SuddenDeath>(ode))
        return {false, "alpha=1 concurrence: " + describe(rep) + " / " + describe(ode)};
    const double x_rep = std::get<SuddenDeath>(rep).x_death;
    const double x_ode = std::get<SuddenDeath>(ode).x_death;

    const auto long_lived = classify(ye_setup(0.25, 0.0, Measure::Concurrence));
    const auto series = sweep(ye_setup(0.25, 0.0, Measure::Concurrence), uniform_grid(kClassifyGridPoints));
    bool crossing = false;
    for (std::size_t i = 1; i < series.grid.size(); ++i)
        crossing |= series.values[i] <= kZeroThreshold;

    const bool pass = x_rep > 0.0 && x_rep < 1.0 && std::abs(x_rep - x_ode) <= 1e-6
        && std::holds_alternative<AsymptoticDecay>(long_lived) && !crossing;
    return {pass, "alpha=1 X* = " + num(x_rep) + " (ODE diff " + num(std::abs(x_rep - x_ode))
            + "); alpha=1/4: " + describe(long_lived) + (crossing ? ", zero on (0,1]" : ", no zero on (0,1]")};
}

Outcome criterion_determinism()
{
    const auto dir = scratch();
    write_file(dir / "figure1.json", R"({"scenario":"figure1"})");
    write_file(dir / "figure2.json", R"({"scenario":"figure2"})");
    bool ok = true;
    std::string detail;
    for (const std::string name : {"figure1", "figure2"}) {
        const auto cfg = (dir / (name + ".json")).string();
        const int c1 = run_cli(cfg + " --out " + (dir / "run1").string());
        const int c2 = run_cli(cfg + " --out " + (dir / "run2").string());
        const auto f1 = read_file(dir / "run1" / (name + ".csv"));
        const auto f2 = read_file(dir / "run2" / (name + ".csv"));
        const bool same = c1 == 0 && c2 == 0 && !f1.empty() && f1 == f2;
        ok &= same;
        detail += name + (same ? " identical (" + std::to_string(f1.size()) + " bytes); " : " differs; ");
    }
    fs::remove_all(dir);
    return {ok, detail};
}

} // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 oracle equivalence", criterion_oracle_equivalence},
        {"2 physicality", criterion_physicality},
        {"3 literal-form pinning", criterion_literal_pinning},
        {"4 spot values", criterion_spot_values},
        {"5 paper-claim reproduction", criterion_paper_claims},
        {"6 claims audit", criterion_audit},
        {"7 ESD contrast", criterion_esd_contrast},
        {"8 determinism", criterion_determinism},
    };

    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome out;
        try {
            out = check();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        failures += out.pass ? 0 : 1;
        std::cout << (out.pass ? "PASS " : "FAIL ") << name << ": " << out.detail << std::endl;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "acceptance runtime " << num(seconds) << " s; " << failures << " failing criteria" << std::endl;
    return failures == 0 ? 0 : 1;
}
