#include "qcorr/qstate.hpp"

#include "qcorr/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qcorr {

namespace {

bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Positions of the seven X parameters; everything else must vanish.
bool on_x_pattern(int r, int c) { return r == c || r + c == 3; }

} // namespace

NotXShaped::NotXShaped(double max_off_pattern)
    : std::invalid_argument("matrix is not X-shaped: largest off-pattern entry has magnitude "
                            + std::to_string(max_off_pattern))
    , max_off_pattern_(max_off_pattern)
{
}

std::string check_xstate(const XState& s)
{
    std::ostringstream msg;
    msg.precision(17);
    if (!std::isfinite(s.a) || !std::isfinite(s.b) || !std::isfinite(s.c) || !std::isfinite(s.d) || !finite(s.w)
        || !finite(s.z))
        return "non-finite X-state parameter";
    if (std::abs(s.trace() - 1.0) > kPopulationTol) {
        msg << "trace defect: a+b+c+d = " << s.trace();
        return msg.str();
    }
    const std::array<std::pair<const char*, double>, 4> pops{{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}}};
    for (const auto& [name, v] : pops) {
        if (v < -kPopulationTol) {
            msg << "negative population " << name << " = " << v;
            return msg.str();
        }
    }
    if (std::norm(s.w) > s.a * s.d + kPopulationTol) {
        msg << "|w|^2 = " << std::norm(s.w) << " exceeds a*d = " << s.a * s.d;
        return msg.str();
    }
    if (std::norm(s.z) > s.b * s.c + kPopulationTol) {
        msg << "|z|^2 = " << std::norm(s.z) << " exceeds b*c = " << s.b * s.c;
        return msg.str();
    }
    return {};
}

void require_valid(const XState& s)
{
    if (auto err = check_xstate(s); !err.empty())
        throw InvalidState(err);
}

void require_valid(const ReservoirParams& p)
{
    if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
        throw std::invalid_argument("gamma must be positive and finite");
    if (!(p.m >= 0.0) || !std::isfinite(p.m))
        throw std::invalid_argument("mean occupation number m must be >= 0");
}

Complex DensityMatrix4::trace() const
{
    return m[0][0] + m[1][1] + m[2][2] + m[3][3];
}

bool ValidityReport::passed() const noexcept
{
    return finite && hermiticity_defect <= kPopulationTol && trace_defect <= kPopulationTol
        && min_eigenvalue >= -kEigenvalueTol;
}

std::array<double, 4> hermitian_eigenvalues(const DensityMatrix4& rho)
{
    SymMatrix<8> embed{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            // Hermitian part, so a slightly non-Hermitian input still gives a
            // symmetric embedding.
            const Complex h = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
            embed[r][c] = h.real();
            embed[r + 4][c + 4] = h.real();
            embed[r][c + 4] = -h.imag();
            embed[r + 4][c] = h.imag();
        }
    }
    const auto doubled = jacobi_eigenvalues<8>(embed);
    std::array<double, 4> eig{};
    for (int i = 0; i < 4; ++i)
        eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return eig;
}

ValidityReport validate(const DensityMatrix4& rho)
{
    ValidityReport report;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (!finite(rho(r, c)))
                report.finite = false;
            report.hermiticity_defect = std::max(report.hermiticity_defect, std::abs(rho(r, c) - std::conj(rho(c, r))));
        }
    }
    if (!report.finite) {
        report.trace_defect = std::numeric_limits<double>::infinity();
        report.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return report;
    }
    report.trace_defect = std::abs(rho.trace() - 1.0);
    report.min_eigenvalue = hermitian_eigenvalues(rho)[3];
    return report;
}

DensityMatrix4 xstate_to_matrix_unchecked(const XState& s)
{
    using namespace basis;
    DensityMatrix4 rho;
    rho(kEE, kEE) = s.a;
    rho(kEG, kEG) = s.b;
    rho(kGE, kGE) = s.c;
    rho(kGG, kGG) = s.d;
    rho(kEE, kGG) = s.w;
    rho(kGG, kEE) = std::conj(s.w);
    rho(kEG, kGE) = s.z;
    rho(kGE, kEG) = std::conj(s.z);
    return rho;
}

DensityMatrix4 xstate_to_matrix(const XState& s)
{
    require_valid(s);
    return xstate_to_matrix_unchecked(s);
}

XState matrix_to_xstate(const DensityMatrix4& rho)
{
    using namespace basis;
    double worst = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (!on_x_pattern(r, c))
                worst = std::max(worst, std::abs(rho(r, c)));
    if (worst > kOffPatternTol)
        throw NotXShaped(worst);

    XState s;
    s.a = rho(kEE, kEE).real();
    s.b = rho(kEG, kEG).real();
    s.c = rho(kGE, kGE).real();
    s.d = rho(kGG, kGG).real();
    s.w = rho(kEE, kGG);
    s.z = rho(kEG, kGE);
    return s;
}

const Matrix2& pauli(int i)
{
    static const std::array<Matrix2, 3> kPauli{{
        {{{Complex{0, 0}, Complex{1, 0}}, {Complex{1, 0}, Complex{0, 0}}}},
        {{{Complex{0, 0}, Complex{0, -1}}, {Complex{0, 1}, Complex{0, 0}}}},
        {{{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{-1, 0}}}},
    }};
    return kPauli.at(static_cast<std::size_t>(i));
}

Matrix4 kron(const Matrix2& lhs, const Matrix2& rhs)
{
    Matrix4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[2 * i + k][2 * j + l] = lhs[i][j] * rhs[k][l];
    return out;
}

namespace {

double expectation(const DensityMatrix4& rho, const Matrix4& op)
{
    Complex tr{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            tr += rho(r, c) * op[c][r];
    return tr.real();
}

const Matrix2 kIdentity2{{{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{1, 0}}}};

} // namespace

BlochDecomposition bloch_decompose(const DensityMatrix4& rho)
{
    BlochDecomposition out;
    for (int i = 0; i < 3; ++i) {
        out.x[i] = expectation(rho, kron(pauli(i), kIdentity2));
        out.y[i] = expectation(rho, kron(kIdentity2, pauli(i)));
        for (int j = 0; j < 3; ++j)
            out.T[i][j] = expectation(rho, kron(pauli(i), pauli(j)));
    }
    return out;
}

XState yu_eberly_state(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha out of range [0, 1]: " + std::to_string(alpha));
    XState s;
    s.a = alpha / 3.0;
    s.b = 1.0 / 3.0;
    s.c = 1.0 / 3.0;
    s.d = (1.0 - alpha) / 3.0;
    s.z = 1.0 / 3.0;
    return s;
}

XState thermal_product_state(double m)
{
    if (!(m >= 0.0))
        throw std::invalid_argument("mean occupation number m must be >= 0");
    XState s;
    if (std::isinf(m)) {
        s.a = s.b = s.c = s.d = 0.25;
        return s;
    }
    const double p = m / (1.0 + 2.0 * m);
    const double q = (1.0 + m) / (1.0 + 2.0 * m);
    s.a = p * p;
    s.b = p * q;
    s.c = p * q;
    s.d = q * q;
    return s;
}

XState bell_phi_plus()
{
    XState s;
    s.a = 0.5;
    s.d = 0.5;
    s.w = 0.5;
    return s;
}

XState maximally_mixed()
{
    XState s;
    s.a = s.b = s.c = s.d = 0.25;
    return s;
}

} // namespace qcorr
