#pragma once

// Index bookkeeping shared by the DensityMatrix API and the fixed-size
// sampling loops.  All functions accept any Eigen complex matrix expression so
// the hot path can use stack-allocated fixed-size matrices.
//
// Row-major tensor order: |a b> <-> a*dB + b.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace sepscan::kernels {

/// out(a, a') = sum_b rho(a dB + b, a' dB + b).
template <class In, class Out>
void reduce_to_a(const Eigen::MatrixBase<In>& rho, int dA, int dB, Eigen::MatrixBase<Out>& out) {
    for (int a = 0; a < dA; ++a)
        for (int ap = 0; ap < dA; ++ap) {
            std::complex<double> s = 0.0;
            for (int b = 0; b < dB; ++b) s += rho(a * dB + b, ap * dB + b);
            out(a, ap) = s;
        }
}

/// out(b, b') = sum_a rho(a dB + b, a dB + b').
template <class In, class Out>
void reduce_to_b(const Eigen::MatrixBase<In>& rho, int dA, int dB, Eigen::MatrixBase<Out>& out) {
    for (int b = 0; b < dB; ++b)
        for (int bp = 0; bp < dB; ++bp) {
            std::complex<double> s = 0.0;
            for (int a = 0; a < dA; ++a) s += rho(a * dB + b, a * dB + bp);
            out(b, bp) = s;
        }
}

/// Tr(sigma^2) of a reduced state without materializing it.
template <class In>
double reduced_purity(const Eigen::MatrixBase<In>& rho, int dA, int dB, bool keep_a) {
    double p = 0.0;
    if (keep_a) {
        for (int a = 0; a < dA; ++a)
            for (int ap = 0; ap < dA; ++ap) {
                std::complex<double> s = 0.0;
                for (int b = 0; b < dB; ++b) s += rho(a * dB + b, ap * dB + b);
                p += std::norm(s);
            }
    } else {
        for (int b = 0; b < dB; ++b)
            for (int bp = 0; bp < dB; ++bp) {
                std::complex<double> s = 0.0;
                for (int a = 0; a < dA; ++a) s += rho(a * dB + b, a * dB + bp);
                p += std::norm(s);
            }
    }
    return p;
}

/// out(a dB + b, a' dB + b') = rho(a dB + b', a' dB + b).
template <class In, class Out>
void transpose_b(const Eigen::MatrixBase<In>& rho, int dA, int dB, Eigen::MatrixBase<Out>& out) {
    for (int a = 0; a < dA; ++a)
        for (int ap = 0; ap < dA; ++ap)
            for (int b = 0; b < dB; ++b)
                for (int bp = 0; bp < dB; ++bp) out(a * dB + b, ap * dB + bp) = rho(a * dB + bp, ap * dB + b);
}

/// out(a dB + b, a' dB + b') = rho(a' dB + b, a dB + b').
template <class In, class Out>
void transpose_a(const Eigen::MatrixBase<In>& rho, int dA, int dB, Eigen::MatrixBase<Out>& out) {
    for (int a = 0; a < dA; ++a)
        for (int ap = 0; ap < dA; ++ap)
            for (int b = 0; b < dB; ++b)
                for (int bp = 0; bp < dB; ++bp) out(a * dB + b, ap * dB + bp) = rho(ap * dB + b, a * dB + bp);
}

template <class M>
double min_eigenvalue(const M& h) {
    Eigen::SelfAdjointEigenSolver<M> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// Smallest eigenvalue over all 2x2 principal submatrices.  By Cauchy
/// interlacing this is an upper bound on the smallest eigenvalue of h.
template <class M>
double min_principal_2x2(const M& h) {
    double best = INFINITY;
    const auto n = h.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double p = h(i, i).real();
            const double q = h(j, j).real();
            const double lam = 0.5 * (p + q) - std::hypot(0.5 * (p - q), std::abs(h(i, j)));
            if (lam < best) best = lam;
        }
    return best;
}

/// min eig(h) >= -tol, rejecting early on a negative 2x2 principal block.
template <class M>
bool min_eigenvalue_at_least(const M& h, double tol) {
    if (min_principal_2x2(h) < -tol) return false;
    return min_eigenvalue(h) >= -tol;
}

/// PPT test for a two-qubit partial transpose.  Such a matrix has at most
/// one negative eigenvalue, so the sign of its determinant decides; near
/// zero the eigenvalue test with tolerance is used instead.
template <class M>
bool two_qubit_ppt(const M& pt, double tol) {
    const double det = pt.determinant().real();
    if (det > 1e-12) return true;
    if (det < -1e-12) return false;
    return min_eigenvalue(pt) >= -tol;
}

}  // namespace sepscan::kernels
