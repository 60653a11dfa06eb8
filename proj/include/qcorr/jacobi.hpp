#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace qcorr {

template <std::size_t N>
using SymMatrix = std::array<std::array<double, N>, N>;

// Cyclic Jacobi rotations on a real symmetric matrix. Only the upper triangle
// is read. Sweeps stop once every off-diagonal element is below
// `threshold` times the Frobenius norm of the input. Eigenvalues come back in
// descending order.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(SymMatrix<N> A, double threshold = 1e-14)
{
    for (std::size_t p = 0; p < N; ++p)
        for (std::size_t q = p + 1; q < N; ++q)
            A[q][p] = A[p][q];

    double frob = 0.0;
    for (const auto& row : A)
        for (double v : row)
            frob += v * v;
    frob = std::sqrt(frob);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q)
                off = std::max(off, std::abs(A[p][q]));
        if (off <= threshold * frob)
            break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = A[p][q];
                if (apq == 0.0)
                    continue;
                const double theta = (A[q][q] - A[p][p]) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                A[p][p] -= t * apq;
                A[q][q] += t * apq;
                A[p][q] = A[q][p] = 0.0;
                for (std::size_t r = 0; r < N; ++r) {
                    if (r == p || r == q)
                        continue;
                    const double arp = A[r][p];
                    const double arq = A[r][q];
                    A[r][p] = A[p][r] = arp - s * (arq + tau * arp);
                    A[r][q] = A[q][r] = arq + s * (arp - tau * arq);
                }
            }
        }
    }

    std::array<double, N> eig{};
    for (std::size_t i = 0; i < N; ++i)
        eig[i] = A[i][i];
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

} // namespace qcorr
