#pragma once

#include "qcorr/qstate.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcorr {

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical time variable X = exp[-t gamma (1 + 2m)], X in [0, 1].
class DecayParameter {
public:
    struct Origin {
        ReservoirParams params;
        double t;
    };

    static DecayParameter from_value(double X);

    double value() const noexcept { return X_; }
    const std::optional<Origin>& origin() const noexcept { return origin_; }

private:
    friend DecayParameter decay_parameter(const ReservoirParams& params, double t);
    DecayParameter(double X, std::optional<Origin> origin)
        : X_(X)
        , origin_(origin)
    {
    }

    double X_;
    std::optional<Origin> origin_;
};

DecayParameter decay_parameter(const ReservoirParams& params, double t);

/// Inverse of decay_parameter: t = -ln(X) / (gamma (1 + 2m)); +inf at X = 0.
double time_for(const ReservoirParams& params, double X);

/// Column-stochastic population map of one qubit: p[to][from] with index 0 =
/// excited, 1 = ground.
struct SingleQubitTransition {
    std::array<std::array<double, 2>, 2> p{};
};

SingleQubitTransition single_qubit_transition(double m, DecayParameter X);

/// Exact X-state solution of the thermal master equation: populations are
/// mapped by the Kronecker square of the single-qubit transition matrix and
/// both coherences are scaled by X.
XState propagate_repaired(const XState& s0, double m, DecayParameter X);

struct LiteralElements {
    XState elements;    // not a valid state in general
    double trace_defect; // 1 - (a + b + c + d)
};

/// The closed-form element polynomials exactly as printed in the source
/// derivation, defects included. Kept for auditing only.
LiteralElements propagate_paper_literal(const XState& s0, double m, DecayParameter X);

/// Right-hand side of the two-qubit thermal Lindblad equation. Throws
/// std::invalid_argument if rho is not Hermitian within 1e-12.
Matrix4 lindblad_rhs(const DensityMatrix4& rho, const ReservoirParams& params);

/// The Lindblad right-hand side as a sparse linear map on the 16 matrix
/// elements, assembled by evaluating the dissipator on each matrix unit.
class LindbladGenerator {
public:
    explicit LindbladGenerator(const ReservoirParams& params);

    Matrix4 apply(const Matrix4& rho) const;
    const ReservoirParams& params() const noexcept { return params_; }
    std::size_t nonzeros() const noexcept { return terms_.size(); }

private:
    struct Term {
        int out;
        int in;
        Complex coeff;
    };
    ReservoirParams params_;
    std::vector<Term> terms_;
};

/// Classical fourth-order Runge-Kutta on lindblad_rhs with a fixed step no
/// larger than dt (the final step count is ceil(t / dt)). The result is
/// re-Hermitized and validated; NumericalError signals a step too large.
DensityMatrix4 integrate_ode(const DensityMatrix4& rho0, const ReservoirParams& params, double t, double dt);
DensityMatrix4 integrate_ode(const DensityMatrix4& rho0, const LindbladGenerator& gen, double t, double dt);

inline double default_ode_step(double gamma) { return 1e-3 / gamma; }

// X = 0 is t = infinity. The ODE backend integrates until
// gamma (1 + 2m) t = kOdeHorizon instead, where exp(-40) ~ 4e-18 is below
// double resolution of every element.
inline constexpr double kOdeHorizon = 40.0;

struct OdeOracle {
    double step = 0.0; // absolute time step; <= 0 selects default_ode_step(gamma)
};
struct RepairedClosedForm {};
struct PaperLiteral {};

using Backend = std::variant<OdeOracle, RepairedClosedForm, PaperLiteral>;

std::string backend_name(const Backend& backend);

/// Propagate an X state to decay parameter X with any backend. The ODE and
/// repaired backends return validated states; the literal backend returns
/// raw elements.
XState evolve(const XState& s0, const ReservoirParams& params, double X, const Backend& backend);

} // namespace qcorr
