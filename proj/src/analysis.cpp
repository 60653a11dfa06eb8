#include "qcorr/analysis.hpp"

#include "qcorr/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcorr {

namespace {

bool is_literal(const Backend& b) { return std::holds_alternative<PaperLiteral>(b); }

int branch_of(Measure measure, const XState& s)
{
    switch (measure) {
    case Measure::GmodXState:
        return gmod_active_branch(s);
    case Measure::MinPaper:
        return min_paper_active_branch(s);
    default:
        return -1;
    }
}

double value_of(const SweepSetup& setup, const XState& s)
{
    return evaluate_measure(setup.measure, s, !is_literal(setup.backend));
}

XState state_at(const SweepSetup& setup, double X) { return evolve(setup.state0, setup.params, X, setup.backend); }

} // namespace

std::vector<double> uniform_grid(int points, double x_min, double x_max)
{
    if (points < 2)
        throw std::invalid_argument("grid needs at least 2 points");
    if (!(x_min >= 0.0 && x_max <= 1.0 && x_min < x_max))
        throw std::invalid_argument("grid bounds must satisfy 0 <= x_min < x_max <= 1");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double span = x_max - x_min;
    for (int i = 0; i < points; ++i)
        grid[i] = x_min + span * i / (points - 1);
    grid.back() = x_max;
    return grid;
}

double measure_at(const SweepSetup& setup, double X) { return value_of(setup, state_at(setup, X)); }

std::vector<XState> trajectory(
    const XState& state0, const ReservoirParams& params, const Backend& backend, const std::vector<double>& grid)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw std::invalid_argument("sweep grid must lie within [0, 1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("sweep grid must be strictly ascending");
    }
    if (!is_literal(backend))
        require_valid(state0);

    std::vector<XState> states(grid.size());
    if (const auto* ode = std::get_if<OdeOracle>(&backend)) {
        const LindbladGenerator gen(params);
        const double dt = ode->step > 0.0 ? ode->step : default_ode_step(params.gamma);
        const double rate = params.gamma * (1.0 + 2.0 * params.m);
        DensityMatrix4 rho = xstate_to_matrix(state0);
        double t_now = 0.0;
        for (std::size_t k = grid.size(); k-- > 0;) {
            const double X = grid[k];
            const double t = X == 0.0 ? kOdeHorizon / rate : time_for(params, X);
            rho = integrate_ode(rho, gen, t - t_now, dt);
            t_now = t;
            states[k] = matrix_to_xstate(rho);
        }
        return states;
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        states[i] = evolve(state0, params, grid[i], backend);
    return states;
}

SweepSeries sweep(const SweepSetup& setup, const std::vector<double>& grid)
{
    const auto states = trajectory(setup.state0, setup.params, setup.backend, grid);
    SweepSeries series;
    series.grid = grid;
    series.values.reserve(grid.size());
    series.branches.reserve(grid.size());
    for (const auto& s : states) {
        series.values.push_back(value_of(setup, s));
        series.branches.push_back(branch_of(setup.measure, s));
    }
    series.setup = setup;
    return series;
}

std::string describe(const DecayClassification& c)
{
    std::ostringstream out;
    if (const auto* sd = std::get_if<SuddenDeath>(&c))
        out << "sudden death at X = " << format_number(sd->x_death);
    else if (std::holds_alternative<AsymptoticDecay>(c))
        out << "asymptotic decay";
    else
        out << "persistent plateau at " << format_number(std::get<PersistentPlateau>(c).limit);
    return out.str();
}

DecayClassification classify(const SweepSetup& setup)
{
    const auto series = sweep(setup, uniform_grid(kClassifyGridPoints));
    const auto& X = series.grid;
    const auto& v = series.values;

    bool seen_positive = false;
    for (std::size_t i = X.size() - 1; i > 0; --i) {
        if (v[i] > kZeroThreshold) {
            seen_positive = true;
            continue;
        }
        if (!seen_positive)
            continue;
        // v(hi) > threshold, v(lo) <= threshold.
        double lo = X[i];
        double hi = X[i + 1];
        while (hi - lo > kBisectionTol) {
            const double mid = 0.5 * (lo + hi);
            (measure_at(setup, mid) > kZeroThreshold ? hi : lo) = mid;
        }
        return SuddenDeath{0.5 * (lo + hi)};
    }
    if (v.front() <= kZeroThreshold)
        return AsymptoticDecay{};
    return PersistentPlateau{v.front()};
}

std::vector<TurningPoint> turning_points(const SweepSeries& series)
{
    const auto& X = series.grid;
    const auto& v = series.values;
    if (X.size() != v.size())
        throw std::invalid_argument("series grid and values differ in length");
    std::vector<TurningPoint> out;
    if (X.size() < 3)
        return out;

    // Differences at roundoff scale count as flat.
    constexpr double kFlat = 1e-14;
    int last_sign = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double diff = v[i + 1] - v[i];
        const int sign = diff > kFlat ? 1 : (diff < -kFlat ? -1 : 0);
        if (sign == 0)
            continue;
        if (last_sign != 0 && sign != last_sign)
            out.push_back({X[i], TurningKind::SlopeSignChange});
        last_sign = sign;
    }

    if (series.branches.size() == v.size()) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const int lower = series.branches[i];
            const int upper = series.branches[i + 1];
            if (lower < 0 || upper < 0 || lower == upper)
                continue;
            double lo = X[i];
            double hi = X[i + 1];
            if (series.setup) {
                const auto& setup = *series.setup;
                while (hi - lo > kBisectionTol) {
                    const double mid = 0.5 * (lo + hi);
                    (branch_of(setup.measure, state_at(setup, mid)) == upper ? hi : lo) = mid;
                }
            }
            out.push_back({0.5 * (lo + hi), TurningKind::BranchSwitch, upper, lower});
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.X < r.X; });
    return out;
}

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Reproduced:
        return "reproduced";
    case Verdict::Contradicted:
        return "contradicted";
    case Verdict::NotApplicable:
        return "not-applicable";
    }
    return "unknown";
}

const AuditEntry& AuditReport::entry(std::string_view id) const
{
    for (const auto& e : entries)
        if (e.id == id)
            return e;
    throw std::out_of_range("no audit entry " + std::string(id));
}

double claimed_min_limit(double a0, double m)
{
    const double num = 1.0 + m * a0 * (1.0 + m);
    const double den = 1.0 + 2.0 * m;
    return num * num / (4.0 * den * den * den * den);
}

namespace {

constexpr double kValueMatchTol = 1e-10;

Verdict any_of(bool repaired, bool literal) { return repaired || literal ? Verdict::Reproduced : Verdict::Contradicted; }

std::string render_class(const DecayClassification& c) { return describe(c); }

} // namespace

AuditReport audit(const XState& state0, const ReservoirParams& params, std::string state_label)
{
    require_valid(state0);
    require_valid(params);

    AuditReport report;
    report.state_label = std::move(state_label);
    report.state0 = state0;
    report.params = params;

    const Backend repaired = RepairedClosedForm{};
    const Backend literal = PaperLiteral{};
    auto setup = [&](Measure m, const Backend& b) { return SweepSetup{state0, report.state_label, params, m, b}; };
    auto fmt = [](double v) { return format_number(v); };

    {
        const double g0 = gmod_xstate(state0).value;
        const double lit = measure_at(setup(Measure::GmodXState, literal), 1.0);
        report.entries.push_back({"gmod_initial_positive", "GMOD is positive at t = 0", "GMOD(X=1) > 0", fmt(g0),
            fmt(lit), any_of(g0 > kZeroThreshold, lit > kZeroThreshold), {}});
    }

    for (Measure mv : {Measure::MinPaper, Measure::MinGeneral}) {
        const std::string tag = "/" + std::string(measure_name(mv));
        const double r = measure_at(setup(mv, repaired), 1.0);
        const double l = measure_at(setup(mv, literal), 1.0);
        report.entries.push_back({"min_initial_positive" + tag, "MIN is positive at t = 0", "MIN(X=1) > 0", fmt(r),
            fmt(l), any_of(r > kZeroThreshold, l > kZeroThreshold), {}});
    }

    {
        const double r = measure_at(setup(Measure::GmodXState, repaired), 0.0);
        const double l = measure_at(setup(Measure::GmodXState, literal), 0.0);
        report.entries.push_back({"gmod_asymptotic_decay", "GMOD vanishes as X -> 0", "GMOD(X=0) = 0", fmt(r),
            fmt(l), any_of(std::abs(r) <= kZeroThreshold, std::abs(l) <= kZeroThreshold), {}});
    }

    {
        const auto r = classify(setup(Measure::GmodXState, repaired));
        const auto l = classify(setup(Measure::GmodXState, literal));
        report.entries.push_back({"gmod_no_sudden_death", "GMOD does not reach zero at any 0 < X < 1",
            "no zero in (0, 1)", render_class(r), render_class(l),
            any_of(!std::holds_alternative<SuddenDeath>(r), !std::holds_alternative<SuddenDeath>(l)), {}});
    }

    const double claimed = claimed_min_limit(state0.a, params.m);
    for (Measure mv : {Measure::MinPaper, Measure::MinGeneral}) {
        const std::string tag = "/" + std::string(measure_name(mv));
        const auto r_class = classify(setup(mv, repaired));
        const auto l_class = classify(setup(mv, literal));
        report.entries.push_back({"min_no_sudden_death" + tag, "MIN does not reach zero at any 0 < X < 1",
            "no zero in (0, 1)", render_class(r_class), render_class(l_class),
            any_of(!std::holds_alternative<SuddenDeath>(r_class), !std::holds_alternative<SuddenDeath>(l_class)),
            {}});

        const double r = measure_at(setup(mv, repaired), 0.0);
        const double l = measure_at(setup(mv, literal), 0.0);
        report.entries.push_back({"min_no_asymptotic_decay" + tag, "MIN stays positive as X -> 0", "MIN(X=0) > 0",
            fmt(r), fmt(l), any_of(r > kZeroThreshold, l > kZeroThreshold), {}});

        report.entries.push_back({"min_infinity_value" + tag,
            "MIN converges to [1 + m a0 (1+m)]^2 / [4 (1+2m)^4] as X -> 0", fmt(claimed), fmt(r), fmt(l),
            any_of(std::abs(r - claimed) <= kValueMatchTol, std::abs(l - claimed) <= kValueMatchTol),
            "(1+2m)^-4/4 = " + fmt(0.25 / std::pow(1.0 + 2.0 * params.m, 4))});
    }

    {
        AuditEntry e{"min_decay_condition", "MIN decays asymptotically only if a0 = -1/(m + m^2)", {}, "-", "-",
            Verdict::NotApplicable, {}};
        if (params.m > 0.0) {
            const double a0 = -1.0 / (params.m + params.m * params.m);
            e.paper = "a0 = " + fmt(a0);
            e.note = "outside physical state space: required a0 < 0";
        } else {
            e.paper = "a0 = -1/0";
            e.note = "undefined at m = 0";
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::string render_audit(const AuditReport& report)
{
    const auto& s = report.state0;
    std::ostringstream out;
    out << "claims audit\n";
    out << "state: " << report.state_label << " (a=" << format_number(s.a) << ", b=" << format_number(s.b)
        << ", c=" << format_number(s.c) << ", d=" << format_number(s.d) << ", |w|=" << format_number(std::abs(s.w))
        << ", |z|=" << format_number(std::abs(s.z)) << ")\n";
    out << "m: " << format_number(report.params.m) << "\n";
    out << "gamma: " << format_number(report.params.gamma) << "\n";
    for (const auto& e : report.entries) {
        out << "\n[" << e.id << "] " << e.claim << "\n";
        out << "  paper:    " << e.paper << "\n";
        out << "  repaired: " << e.repaired << "\n";
        out << "  literal:  " << e.literal << "\n";
        out << "  verdict:  " << verdict_name(e.verdict);
        if (!e.note.empty())
            out << " (" << e.note << ")";
        out << "\n";
    }
    return out.str();
}

} // namespace qcorr
