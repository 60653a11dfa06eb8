#pragma once

#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qcorr {

inline constexpr double kZeroThreshold = 1e-12;
inline constexpr int kClassifyGridPoints = 2001;
inline constexpr double kBisectionTol = 1e-10;

/// Everything needed to re-evaluate a series at an arbitrary X.
struct SweepSetup {
    XState state0;
    std::string state_label;
    ReservoirParams params;
    Measure measure = Measure::GmodXState;
    Backend backend = RepairedClosedForm{};
};

struct SweepSeries {
    std::vector<double> grid; // strictly ascending in [0, 1]
    std::vector<double> values;
    // Active selector candidate of the X-state GMOD/MIN formulas per grid
    // point; -1 for measures without one.
    std::vector<int> branches;
    std::optional<SweepSetup> setup;
};

std::vector<double> uniform_grid(int points, double x_min = 0.0, double x_max = 1.0);

/// Measure at a single decay parameter. The literal backend is evaluated
/// without state validation.
double measure_at(const SweepSetup& setup, double X);

/// Propagated states at each grid point (grid strictly ascending in [0, 1]).
/// The ODE backend integrates forward in time, continuing from the previous
/// grid point.
std::vector<XState> trajectory(
    const XState& state0, const ReservoirParams& params, const Backend& backend, const std::vector<double>& grid);

SweepSeries sweep(const SweepSetup& setup, const std::vector<double>& grid);

struct SuddenDeath {
    double x_death;
};
struct AsymptoticDecay {};
struct PersistentPlateau {
    double limit;
};
using DecayClassification = std::variant<SuddenDeath, AsymptoticDecay, PersistentPlateau>;

std::string describe(const DecayClassification& c);

/// Scan a 2001-point uniform grid from X = 1 towards X = 0. The first drop to
/// or below the zero threshold at some X > 0 after a positive value is refined
/// by bisection to 1e-10 and reported as sudden death; otherwise the value at
/// X = 0 decides between asymptotic decay and a plateau.
DecayClassification classify(const SweepSetup& setup);

enum class TurningKind { SlopeSignChange, BranchSwitch };

struct TurningPoint {
    double X;
    TurningKind kind;
    int from_branch = -1; // branch at the larger X side; BranchSwitch only
    int to_branch = -1;
};

std::vector<TurningPoint> turning_points(const SweepSeries& series);

enum class Verdict { Reproduced, Contradicted, NotApplicable };
std::string_view verdict_name(Verdict v);

struct AuditEntry {
    std::string id;
    std::string claim;
    std::string paper;
    std::string repaired;
    std::string literal;
    Verdict verdict;
    std::string note;
};

struct AuditReport {
    std::string state_label;
    XState state0;
    ReservoirParams params;
    std::vector<AuditEntry> entries;

    const AuditEntry& entry(std::string_view id) const;
};

/// Evaluate the asymptotic claims about GMOD and MIN for one initial state
/// and occupation number, using both closed-form backends and both MIN
/// variants. A claim counts as reproduced when at least one backend bears it
/// out.
AuditReport audit(const XState& state0, const ReservoirParams& params, std::string state_label = "state");

/// [1 + m a0 (1 + m)]^2 / [4 (1 + 2m)^4], the claimed long-time MIN value.
double claimed_min_limit(double a0, double m);

std::string render_audit(const AuditReport& report);

} // namespace qcorr
