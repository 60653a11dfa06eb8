#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcorr {

using Complex = std::complex<double>;

// Computational basis used everywhere: index 0 = |11>, 1 = |10>, 2 = |01>,
// 3 = |00>, with |1> the excited level. The first tensor factor is qubit A.
namespace basis {
inline constexpr int kEE = 0; // |11>
inline constexpr int kEG = 1; // |10>
inline constexpr int kGE = 2; // |01>
inline constexpr int kGG = 3; // |00>
} // namespace basis

inline constexpr double kPopulationTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kOffPatternTol = 1e-10;

class InvalidState : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotXShaped : public std::invalid_argument {
public:
    explicit NotXShaped(double max_off_pattern);
    double max_off_pattern() const noexcept { return max_off_pattern_; }

private:
    double max_off_pattern_;
};

/// X-shaped two-qubit state: populations a (|11>), b (|10>), c (|01>),
/// d (|00>), coherence w = <11|rho|00> and z = <10|rho|01>.
///
/// This is a plain value; nothing is checked on construction so that
/// unphysical tuples (e.g. the literal closed form) can share the type.
/// Use check_xstate / require_valid before treating it as a density matrix.
struct XState {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    Complex w{};
    Complex z{};

    double trace() const noexcept { return a + b + c + d; }
    bool operator==(const XState&) const = default;
};

/// Empty string when `s` satisfies every XState invariant, otherwise a
/// description of the first violation.
std::string check_xstate(const XState& s);
void require_valid(const XState& s);

struct ReservoirParams {
    double gamma = 1.0;
    double m = 0.0;
};
void require_valid(const ReservoirParams& p);

using Matrix4 = std::array<std::array<Complex, 4>, 4>;

// Full 4x4 density matrix. Like XState it is an unchecked value; validate()
// reports on it.
struct DensityMatrix4 {
    Matrix4 m{};

    Complex& operator()(int r, int c) { return m[r][c]; }
    const Complex& operator()(int r, int c) const { return m[r][c]; }
    Complex trace() const;
};

struct ValidityReport {
    double hermiticity_defect = 0.0; // max |rho_ij - conj(rho_ji)|
    double trace_defect = 0.0;       // |tr rho - 1|
    double min_eigenvalue = 0.0;
    bool finite = true;

    bool passed() const noexcept;
};

ValidityReport validate(const DensityMatrix4& rho);

/// Eigenvalues of a Hermitian 4x4 matrix, descending. Uses the real 8x8
/// embedding [[Re, -Im], [Im, Re]], whose spectrum is the doubled spectrum.
std::array<double, 4> hermitian_eigenvalues(const DensityMatrix4& rho);

DensityMatrix4 xstate_to_matrix(const XState& s);
/// Same layout as xstate_to_matrix without the invariant check.
DensityMatrix4 xstate_to_matrix_unchecked(const XState& s);
XState matrix_to_xstate(const DensityMatrix4& rho);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct BlochDecomposition {
    Vec3 x{};
    Vec3 y{};
    Mat3 T{};
};

BlochDecomposition bloch_decompose(const DensityMatrix4& rho);

/// Single-qubit Pauli matrices in the (excited, ground) ordering; index 0..2
/// = sigma_x, sigma_y, sigma_z.
using Matrix2 = std::array<std::array<Complex, 2>, 2>;
const Matrix2& pauli(int i);
Matrix4 kron(const Matrix2& lhs, const Matrix2& rhs);

// Named states.
XState yu_eberly_state(double alpha);
XState thermal_product_state(double m);
XState bell_phi_plus();
XState maximally_mixed();

} // namespace qcorr
