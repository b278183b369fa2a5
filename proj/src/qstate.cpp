#include "sepscan/qstate.hpp"

#include "sepscan/detail/kernels.hpp"
#include "sepscan/error.hpp"

#include <cmath>
#include <sstream>

namespace sepscan {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << std::scientific << v;
    return os.str();
}

const Split& require_split(const DensityMatrix& rho) {
    if (!rho.split()) throw Error(ErrorKind::NoSplit, "density matrix has no bipartite split");
    return *rho.split();
}

double hermiticity_defect(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

DensityMatrix DensityMatrix::trusted(ComplexMatrix m, std::optional<Split> split) {
    return DensityMatrix(std::move(m), split);
}

DensityMatrix DensityMatrix::with_split(Split s) const {
    if (s.dA < 1 || s.dB < 1 || s.dA * s.dB != dim())
        throw Error(ErrorKind::WrongDim, "split " + std::to_string(s.dA) + "x" + std::to_string(s.dB) +
                                             " does not factor dimension " + std::to_string(dim()));
    return DensityMatrix(m_, s);
}

DensityMatrix validate(const ComplexMatrix& m, std::optional<Split> split, double tol, double psd_tol) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorKind::NotSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (split && split->dA * split->dB != m.rows())
        throw Error(ErrorKind::WrongDim, "split does not factor dimension " + std::to_string(m.rows()));

    const double herm = hermiticity_defect(m);
    if (herm > tol) throw Error(ErrorKind::NotHermitian, "max |m - m^dagger| = " + fmt(herm));

    ComplexMatrix h = 0.5 * (m + m.adjoint());
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > tol) throw Error(ErrorKind::NotUnitTrace, "|trace - 1| = " + fmt(std::abs(tr - 1.0)));
    h /= tr;

    const double lam = kernels::min_eigenvalue(h);
    if (lam < -psd_tol) throw Error(ErrorKind::NotPositive, "min eigenvalue = " + fmt(lam));
    return DensityMatrix::trusted(std::move(h), split);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    const Split& s = require_split(rho);
    if (keep == Subsystem::A) {
        ComplexMatrix out(s.dA, s.dA);
        kernels::reduce_to_a(rho.matrix(), s.dA, s.dB, out);
        return DensityMatrix::trusted(std::move(out));
    }
    ComplexMatrix out(s.dB, s.dB);
    kernels::reduce_to_b(rho.matrix(), s.dA, s.dB, out);
    return DensityMatrix::trusted(std::move(out));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    const Split& s = require_split(rho);
    ComplexMatrix out(rho.dim(), rho.dim());
    if (which == Subsystem::B) {
        kernels::transpose_b(rho.matrix(), s.dA, s.dB, out);
    } else {
        kernels::transpose_a(rho.matrix(), s.dA, s.dB, out);
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& h, double herm_tol) {
    if (h.rows() != h.cols() || h.rows() == 0) throw Error(ErrorKind::NotSquare, "min_eigenvalue needs a square matrix");
    const double herm = hermiticity_defect(h);
    if (herm > herm_tol) throw Error(ErrorKind::NotHermitian, "max |h - h^dagger| = " + fmt(herm));
    return kernels::min_eigenvalue(h);
}

bool is_ppt(const DensityMatrix& rho, double tol) {
    return kernels::min_eigenvalue_at_least(partial_transpose(rho, Subsystem::B), tol);
}

double purity(const DensityMatrix& rho) { return rho.matrix().cwiseAbs2().sum(); }

void validate_xstate(const XStateParams& x, double tol) {
    for (double v : {x.a, x.b, x.c, x.d})
        if (v < -tol) throw Error(ErrorKind::NotPositive, "negative diagonal entry " + fmt(v));
    const double tr = x.a + x.b + x.c + x.d;
    if (std::abs(tr - 1.0) > tol) throw Error(ErrorKind::NotUnitTrace, "|trace - 1| = " + fmt(std::abs(tr - 1.0)));
    const double g14 = std::norm(x.z14) - x.a * x.d;
    const double g23 = std::norm(x.z23) - x.b * x.c;
    if (g14 > tol) throw Error(ErrorKind::NotPositive, "|z14|^2 - a d = " + fmt(g14));
    if (g23 > tol) throw Error(ErrorKind::NotPositive, "|z23|^2 - b c = " + fmt(g23));
}

DensityMatrix xstate_to_density(const XStateParams& x) {
    validate_xstate(x);
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = x.a;
    m(1, 1) = x.b;
    m(2, 2) = x.c;
    m(3, 3) = x.d;
    m(0, 3) = x.z14;
    m(3, 0) = std::conj(x.z14);
    m(1, 2) = x.z23;
    m(2, 1) = std::conj(x.z23);
    return validate(m, Split{2, 2});
}

namespace {
// Smaller eigenvalue of [[p, z], [conj z, q]].
double block_min(double p, double q, Complex z) { return 0.5 * (p + q) - std::hypot(0.5 * (p - q), std::abs(z)); }
}  // namespace

bool xstate_is_separable(const XStateParams& x, double tol) {
    // Transposing B moves z14 into the {|01>,|10>} block and z23 into the
    // {|00>,|11>} block.
    return block_min(x.b, x.c, x.z14) >= -tol && block_min(x.a, x.d, x.z23) >= -tol;
}

double xstate_determinant(const XStateParams& x) {
    return (x.a * x.d - std::norm(x.z14)) * (x.b * x.c - std::norm(x.z23));
}

}  // namespace sepscan
