#include "qcorr/dynamics.hpp"

#include <cmath>
#include <limits>

namespace qcorr {

DecayParameter DecayParameter::from_value(double X)
{
    if (!(X >= 0.0 && X <= 1.0))
        throw std::invalid_argument("decay parameter X must lie in [0, 1], got " + std::to_string(X));
    return DecayParameter(X, std::nullopt);
}

DecayParameter decay_parameter(const ReservoirParams& params, double t)
{
    require_valid(params);
    if (!(t >= 0.0))
        throw std::invalid_argument("time must be non-negative, got " + std::to_string(t));
    const double X = std::exp(-t * params.gamma * (1.0 + 2.0 * params.m));
    return DecayParameter(X, DecayParameter::Origin{params, t});
}

double time_for(const ReservoirParams& params, double X)
{
    require_valid(params);
    if (!(X >= 0.0 && X <= 1.0))
        throw std::invalid_argument("decay parameter X must lie in [0, 1], got " + std::to_string(X));
    if (X == 0.0)
        return std::numeric_limits<double>::infinity();
    return -std::log(X) / (params.gamma * (1.0 + 2.0 * params.m));
}

SingleQubitTransition single_qubit_transition(double m, DecayParameter X)
{
    if (!(m >= 0.0))
        throw std::invalid_argument("mean occupation number m must be >= 0");
    const double x = X.value();
    const double p = m / (1.0 + 2.0 * m);
    SingleQubitTransition T;
    T.p[0][0] = p + (1.0 - p) * x;
    T.p[1][0] = 1.0 - T.p[0][0];
    T.p[0][1] = p * (1.0 - x);
    T.p[1][1] = 1.0 - T.p[0][1];
    return T;
}

XState propagate_repaired(const XState& s0, double m, DecayParameter X)
{
    require_valid(s0);
    const auto T = single_qubit_transition(m, X).p;

    // Two-qubit populations in (ee, eg, ge, gg) order; level index 0 = e.
    const std::array<double, 4> in{s0.a, s0.b, s0.c, s0.d};
    std::array<double, 4> out{};
    for (int to = 0; to < 4; ++to) {
        double acc = 0.0;
        for (int from = 0; from < 4; ++from)
            acc += T[to >> 1][from >> 1] * T[to & 1][from & 1] * in[from];
        out[to] = acc;
    }

    XState s;
    s.a = out[0];
    s.b = out[1];
    s.c = out[2];
    s.d = out[3];
    s.w = X.value() * s0.w;
    s.z = X.value() * s0.z;
    return s;
}

LiteralElements propagate_paper_literal(const XState& s0, double m, DecayParameter X)
{
    const double x = X.value();
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double a0 = s0.a, b0 = s0.b, c0 = s0.c, d0 = s0.d;
    const double norm = 1.0 / ((1.0 + 2.0 * m) * (1.0 + 2.0 * m));

    // The X^2 bracket shared by a[t] and d[t].
    const double shared_x2 = a0 + m * (-1.0 + 3.0 * a0 + d0) + m * m * (-1.0 + 2.0 * a0 + 2.0 * d0);

    LiteralElements out;
    XState& s = out.elements;
    s.a = norm * (m * m + m * x * (1.0 + a0 + 2.0 * m * a0 - d0 * (1.0 + 2.0 * m)) + x2 * shared_x2);
    s.b = norm
        * (x * (m * (1.0 + m) + (b0 + a0 * (1.0 + m) + m * (-d0 + 2.0 * b0 * (1.0 + m) - 2.0 * c0 * (1.0 + m))))
            + x2 * (-a0 * (1.0 + m) * (1.0 + 2.0 * m) + m * (1.0 + m - d0 * (1.0 + 2.0 * m))));
    s.c = norm
        * (x
                * (m * (1.0 + m) * (1.0 - a0)
                    + (a0 * (1.0 + m) * (1.0 + m) + c0 * (1.0 + 2.0 * m + 2.0 * m * m)
                        - m * (d0 + 2.0 * b0 * (1.0 + m))))
            + x2 * (-a0 * (1.0 + m) * (1.0 + m) + m * (1.0 + m - d0 * (1.0 + 2.0 * m))) - x3 * m * a0 * (1.0 + m));
    // The printed d[t] never closes its brace; it is read as closing after
    // the X^2 term.
    s.d = norm
        * (x * ((1.0 + m) * (1.0 + m) + (-1.0 - m) * (b0 + c0 - 2.0 * d0 * m + 2.0 * a0 * (1.0 + m))) + x2 * shared_x2);
    s.w = x * s0.w;
    s.z = x * s0.z;
    out.trace_defect = 1.0 - s.trace();
    return out;
}

namespace {

const Matrix2 kIdentity2{{{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{1, 0}}}};
// sigma_+ = |1><0| (ground -> excited), sigma_- = |0><1|, levels ordered (e, g).
const Matrix2 kRaise{{{Complex{0, 0}, Complex{1, 0}}, {Complex{0, 0}, Complex{0, 0}}}};
const Matrix2 kLower{{{Complex{0, 0}, Complex{0, 0}}, {Complex{1, 0}, Complex{0, 0}}}};

Matrix4 mul(const Matrix4& lhs, const Matrix4& rhs)
{
    Matrix4 out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (lhs[i][k] == Complex{})
                continue;
            for (int j = 0; j < 4; ++j)
                out[i][j] += lhs[i][k] * rhs[k][j];
        }
    return out;
}

Matrix4 commutator(const Matrix4& lhs, const Matrix4& rhs)
{
    Matrix4 out = mul(lhs, rhs);
    const Matrix4 back = mul(rhs, lhs);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out[i][j] -= back[i][j];
    return out;
}

void accumulate(Matrix4& acc, double scale, const Matrix4& term)
{
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            acc[i][j] += scale * term[i][j];
}

// 1/2 (m+1) gamma sum_i {[s-_i, rho s+_i] + [s-_i rho, s+_i]}
//   + 1/2 m gamma sum_i {[s+_i, rho s-_i] + [s+_i rho, s-_i]}
Matrix4 dissipator(const Matrix4& rho, const ReservoirParams& params)
{
    static const std::array<Matrix4, 2> lower{kron(kLower, kIdentity2), kron(kIdentity2, kLower)};
    static const std::array<Matrix4, 2> raise{kron(kRaise, kIdentity2), kron(kIdentity2, kRaise)};

    const double emit = 0.5 * (params.m + 1.0) * params.gamma;
    const double absorb = 0.5 * params.m * params.gamma;
    Matrix4 out{};
    for (int i = 0; i < 2; ++i) {
        accumulate(out, emit, commutator(lower[i], mul(rho, raise[i])));
        accumulate(out, emit, commutator(mul(lower[i], rho), raise[i]));
        if (absorb != 0.0) {
            accumulate(out, absorb, commutator(raise[i], mul(rho, lower[i])));
            accumulate(out, absorb, commutator(mul(raise[i], rho), lower[i]));
        }
    }
    return out;
}

} // namespace

Matrix4 lindblad_rhs(const DensityMatrix4& rho, const ReservoirParams& params)
{
    require_valid(params);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (std::abs(rho(r, c) - std::conj(rho(c, r))) > kPopulationTol)
                throw std::invalid_argument("lindblad_rhs requires a Hermitian input");
    return dissipator(rho.m, params);
}

LindbladGenerator::LindbladGenerator(const ReservoirParams& params)
    : params_(params)
{
    require_valid(params);
    for (int in = 0; in < 16; ++in) {
        Matrix4 unit{};
        unit[in / 4][in % 4] = 1.0;
        const Matrix4 image = dissipator(unit, params);
        for (int out = 0; out < 16; ++out) {
            const Complex v = image[out / 4][out % 4];
            if (v != Complex{})
                terms_.push_back({out, in, v});
        }
    }
}

Matrix4 LindbladGenerator::apply(const Matrix4& rho) const
{
    Matrix4 out{};
    for (const auto& t : terms_) {
        // Written out to skip the inf/nan recovery of operator*.
        const Complex v = rho[t.in >> 2][t.in & 3];
        out[t.out >> 2][t.out & 3] += Complex{t.coeff.real() * v.real() - t.coeff.imag() * v.imag(),
            t.coeff.real() * v.imag() + t.coeff.imag() * v.real()};
    }
    return out;
}

namespace {

Matrix4 axpy(const Matrix4& y, double h, const Matrix4& k)
{
    Matrix4 out = y;
    accumulate(out, h, k);
    return out;
}

void check_step(const Matrix4& rho, double t)
{
    Complex tr{};
    for (int i = 0; i < 4; ++i) {
        const Complex v = rho[i][i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v.real() < -kEigenvalueTol)
            throw NumericalError("ODE integration left the state space at t = " + std::to_string(t)
                                 + " (step too large?)");
        tr += v;
    }
    if (std::abs(tr - 1.0) > 1e-9)
        throw NumericalError("ODE integration lost trace at t = " + std::to_string(t));
}

} // namespace

DensityMatrix4 integrate_ode(const DensityMatrix4& rho0, const LindbladGenerator& gen, double t, double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("ODE step must be positive");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("integration time must be finite and non-negative");

    Matrix4 y = rho0.m;
    const auto steps = static_cast<long long>(std::ceil(t / dt - 1e-9));
    if (steps > 0) {
        const double h = t / static_cast<double>(steps);
        for (long long n = 0; n < steps; ++n) {
            const Matrix4 k1 = gen.apply(y);
            const Matrix4 k2 = gen.apply(axpy(y, 0.5 * h, k1));
            const Matrix4 k3 = gen.apply(axpy(y, 0.5 * h, k2));
            const Matrix4 k4 = gen.apply(axpy(y, h, k3));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    y[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
            check_step(y, h * static_cast<double>(n + 1));
        }
    }

    DensityMatrix4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = 0.5 * (y[i][j] + std::conj(y[j][i]));
    const auto report = validate(out);
    if (!report.passed())
        throw NumericalError("ODE result failed validation: trace defect " + std::to_string(report.trace_defect)
                             + ", min eigenvalue " + std::to_string(report.min_eigenvalue));
    return out;
}

DensityMatrix4 integrate_ode(const DensityMatrix4& rho0, const ReservoirParams& params, double t, double dt)
{
    return integrate_ode(rho0, LindbladGenerator(params), t, dt);
}

std::string backend_name(const Backend& backend)
{
    struct Visitor {
        std::string operator()(const OdeOracle&) const { return "ode"; }
        std::string operator()(const RepairedClosedForm&) const { return "repaired"; }
        std::string operator()(const PaperLiteral&) const { return "literal"; }
    };
    return std::visit(Visitor{}, backend);
}

XState evolve(const XState& s0, const ReservoirParams& params, double X, const Backend& backend)
{
    require_valid(params);
    const auto decay = DecayParameter::from_value(X);
    if (std::holds_alternative<RepairedClosedForm>(backend))
        return propagate_repaired(s0, params.m, decay);
    if (std::holds_alternative<PaperLiteral>(backend))
        return propagate_paper_literal(s0, params.m, decay).elements;

    const double step = std::get<OdeOracle>(backend).step;
    const double dt = step > 0.0 ? step : default_ode_step(params.gamma);
    const double rate = params.gamma * (1.0 + 2.0 * params.m);
    const double t = X == 0.0 ? kOdeHorizon / rate : time_for(params, X);
    return matrix_to_xstate(integrate_ode(xstate_to_matrix(s0), params, t, dt));
}

} // namespace qcorr
