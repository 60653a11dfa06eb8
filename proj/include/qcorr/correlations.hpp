#pragma once

#include "qcorr/qstate.hpp"

#include <array>
#include <string>
#include <string_view>

namespace qcorr {

enum class Measure {
    GmodXState,
    GmodGeneral,
    MinPaper,
    MinGeneral,
    Concurrence,
};

std::string_view measure_name(Measure m);
/// Accepts the names produced by measure_name ("gmod", "gmod_general",
/// "min_paper", "min_general", "concurrence").
Measure parse_measure(std::string_view name);

struct MeasureValue {
    double value = 0.0;
    Measure measure = Measure::GmodXState;
};

// Symmetric 3x3 matrix: only the upper triangle is stored.
class Sym3 {
public:
    Sym3() = default;
    explicit Sym3(const Mat3& full);

    double operator()(int i, int j) const { return i <= j ? upper_[index(i, j)] : upper_[index(j, i)]; }
    void set(int i, int j, double v) { i <= j ? upper_[index(i, j)] = v : upper_[index(j, i)] = v; }

    static Sym3 gram(const Mat3& T);                       // T T^T
    static Sym3 outer(const Vec3& x);                      // x x^T
    Sym3 operator+(const Sym3& rhs) const;

private:
    static int index(int i, int j) { return i * 3 - i * (i + 1) / 2 + j; }
    std::array<double, 6> upper_{};
};

/// Eigenvalues of a symmetric 3x3 matrix in descending order (cyclic Jacobi).
std::array<double, 3> sym3_eigenvalues(const Sym3& M);

/// Geometric discord of an X state:
/// 1/4 {2(a-c)^2 + 2(b-d)^2 + 8(|w|^2+|z|^2)
///       - max(2(a-c)^2 + 2(b-d)^2, 4(|w|-|z|)^2, 4(|w|+|z|)^2)}
MeasureValue gmod_xstate(const XState& s);
/// 1/4 (|x|^2 + |T|^2 - k_max), k_max the top eigenvalue of x x^T + T T^T.
MeasureValue gmod_general(const DensityMatrix4& rho);

/// X-state MIN with the min-over-three subtraction applied unconditionally:
/// 1/4 {(a-b-c+d)^2 + 8(|w|^2+|z|^2)
///       - 4 min(1/4 (a-b-c+d)^2, (|w|-|z|)^2, (|w|+|z|)^2)}
MeasureValue min_xstate_paper(const XState& s);

inline constexpr double kBlochZeroThreshold = 1e-9;
inline constexpr double kBlochWarnFloor = 1e-12;

/// MIN from the Bloch form. |x| > 1e-9: 1/4 (|T|^2 - x^T T T^T x / |x|^2);
/// otherwise 1/4 (|T|^2 - lambda_min(T T^T)). Norms of x between 1e-12 and
/// 1e-9 log a warning to std::clog since the branches can disagree there.
MeasureValue min_general(const DensityMatrix4& rho);

/// 2 max(0, |w| - sqrt(b c), |z| - sqrt(a d))
MeasureValue concurrence_xstate(const XState& s);

// Formula-level evaluation without the invariant check, for auditing the
// literal closed form (whose elements do not form a valid state).
double gmod_xstate_unchecked(const XState& s);
double min_xstate_paper_unchecked(const XState& s);
double concurrence_xstate_unchecked(const XState& s);

/// Which candidate is active in the selector of an X-state formula:
/// GMOD max: 0 = populations, 1 = 4(|w|-|z|)^2, 2 = 4(|w|+|z|)^2.
/// MIN min:  0 = 1/4 (a-b-c+d)^2, 1 = (|w|-|z|)^2, 2 = (|w|+|z|)^2.
/// Ties go to the lower index, except that the GMOD middle candidate is never
/// reported (it cannot exceed candidate 2).
int gmod_active_branch(const XState& s);
int min_paper_active_branch(const XState& s);

/// Evaluate any measure on an X state. The general forms go through the
/// 4x4 matrix; `checked` = false skips state validation.
double evaluate_measure(Measure measure, const XState& s, bool checked = true);

} // namespace qcorr
