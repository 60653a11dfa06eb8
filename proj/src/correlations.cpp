#include "qcorr/correlations.hpp"

#include "qcorr/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace qcorr {

std::string_view measure_name(Measure m)
{
    switch (m) {
    case Measure::GmodXState:
        return "gmod";
    case Measure::GmodGeneral:
        return "gmod_general";
    case Measure::MinPaper:
        return "min_paper";
    case Measure::MinGeneral:
        return "min_general";
    case Measure::Concurrence:
        return "concurrence";
    }
    return "unknown";
}

Measure parse_measure(std::string_view name)
{
    for (auto m : {Measure::GmodXState, Measure::GmodGeneral, Measure::MinPaper, Measure::MinGeneral,
             Measure::Concurrence})
        if (measure_name(m) == name)
            return m;
    throw std::invalid_argument("unknown measure: " + std::string(name));
}

Sym3::Sym3(const Mat3& full)
{
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            upper_[index(i, j)] = full[i][j];
}

Sym3 Sym3::gram(const Mat3& T)
{
    Sym3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            out.set(i, j, T[i][0] * T[j][0] + T[i][1] * T[j][1] + T[i][2] * T[j][2]);
    return out;
}

Sym3 Sym3::outer(const Vec3& x)
{
    Sym3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            out.set(i, j, x[i] * x[j]);
    return out;
}

Sym3 Sym3::operator+(const Sym3& rhs) const
{
    Sym3 out;
    for (std::size_t k = 0; k < upper_.size(); ++k)
        out.upper_[k] = upper_[k] + rhs.upper_[k];
    return out;
}

std::array<double, 3> sym3_eigenvalues(const Sym3& M)
{
    SymMatrix<3> A{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            A[i][j] = M(i, j);
    return jacobi_eigenvalues<3>(A);
}

namespace {

struct GmodTerms {
    double populations;
    std::array<double, 3> candidates;
};

GmodTerms gmod_terms(const XState& s)
{
    const double aw = std::abs(s.w), az = std::abs(s.z);
    const double pop = 2.0 * (s.a - s.c) * (s.a - s.c) + 2.0 * (s.b - s.d) * (s.b - s.d);
    return {pop, {pop, 4.0 * (aw - az) * (aw - az), 4.0 * (aw + az) * (aw + az)}};
}

struct MinTerms {
    double t33;
    std::array<double, 3> candidates;
};

MinTerms min_terms(const XState& s)
{
    const double aw = std::abs(s.w), az = std::abs(s.z);
    const double t33 = s.a - s.b - s.c + s.d;
    return {t33, {0.25 * t33 * t33, (aw - az) * (aw - az), (aw + az) * (aw + az)}};
}

double coherence_weight(const XState& s) { return 8.0 * (std::norm(s.w) + std::norm(s.z)); }

double frob2(const Mat3& T)
{
    double acc = 0.0;
    for (const auto& row : T)
        for (double v : row)
            acc += v * v;
    return acc;
}

} // namespace

double gmod_xstate_unchecked(const XState& s)
{
    const auto t = gmod_terms(s);
    const double top = *std::max_element(t.candidates.begin(), t.candidates.end());
    return 0.25 * (t.populations + coherence_weight(s) - top);
}

int gmod_active_branch(const XState& s)
{
    // Candidate 1 never exceeds candidate 2, so it only ever ties.
    const auto& c = gmod_terms(s).candidates;
    return c[0] >= c[2] ? 0 : 2;
}

MeasureValue gmod_xstate(const XState& s)
{
    require_valid(s);
    return {std::max(0.0, gmod_xstate_unchecked(s)), Measure::GmodXState};
}

MeasureValue gmod_general(const DensityMatrix4& rho)
{
    const auto bloch = bloch_decompose(rho);
    const double x2 = bloch.x[0] * bloch.x[0] + bloch.x[1] * bloch.x[1] + bloch.x[2] * bloch.x[2];
    const double kmax = sym3_eigenvalues(Sym3::outer(bloch.x) + Sym3::gram(bloch.T))[0];
    return {std::max(0.0, 0.25 * (x2 + frob2(bloch.T) - kmax)), Measure::GmodGeneral};
}

double min_xstate_paper_unchecked(const XState& s)
{
    const auto t = min_terms(s);
    const double low = *std::min_element(t.candidates.begin(), t.candidates.end());
    return 0.25 * (t.t33 * t.t33 + coherence_weight(s) - 4.0 * low);
}

int min_paper_active_branch(const XState& s)
{
    const auto t = min_terms(s);
    return static_cast<int>(std::min_element(t.candidates.begin(), t.candidates.end()) - t.candidates.begin());
}

MeasureValue min_xstate_paper(const XState& s)
{
    require_valid(s);
    return {std::max(0.0, min_xstate_paper_unchecked(s)), Measure::MinPaper};
}

MeasureValue min_general(const DensityMatrix4& rho)
{
    const auto bloch = bloch_decompose(rho);
    const auto& x = bloch.x;
    const double xnorm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const Sym3 ttt = Sym3::gram(bloch.T);

    double subtracted;
    if (xnorm > kBlochZeroThreshold) {
        double quad = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                quad += x[i] * ttt(i, j) * x[j];
        subtracted = quad / (xnorm * xnorm);
    } else {
        if (xnorm >= kBlochWarnFloor)
            std::clog << "warning: min_general: |x| = " << xnorm
                      << " is near the branch threshold; the two MIN branches may disagree\n";
        subtracted = sym3_eigenvalues(ttt)[2];
    }
    return {std::max(0.0, 0.25 * (frob2(bloch.T) - subtracted)), Measure::MinGeneral};
}

double concurrence_xstate_unchecked(const XState& s)
{
    const double one = std::abs(s.w) - std::sqrt(std::max(0.0, s.b * s.c));
    const double two = std::abs(s.z) - std::sqrt(std::max(0.0, s.a * s.d));
    return 2.0 * std::max({0.0, one, two});
}

MeasureValue concurrence_xstate(const XState& s)
{
    require_valid(s);
    return {concurrence_xstate_unchecked(s), Measure::Concurrence};
}

double evaluate_measure(Measure measure, const XState& s, bool checked)
{
    if (checked)
        require_valid(s);
    switch (measure) {
    case Measure::GmodXState:
        return checked ? std::max(0.0, gmod_xstate_unchecked(s)) : gmod_xstate_unchecked(s);
    case Measure::MinPaper:
        return checked ? std::max(0.0, min_xstate_paper_unchecked(s)) : min_xstate_paper_unchecked(s);
    case Measure::Concurrence:
        return concurrence_xstate_unchecked(s);
    case Measure::GmodGeneral:
        return gmod_general(xstate_to_matrix_unchecked(s)).value;
    case Measure::MinGeneral:
        return min_general(xstate_to_matrix_unchecked(s)).value;
    }
    throw std::logic_error("unhandled measure");
}

} // namespace qcorr
