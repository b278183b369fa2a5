#pragma once

// Density matrices on bipartite Hilbert spaces C^dA (x) C^dB.
//
// Basis ordering is row-major tensor order: the product basis vector
// |iA iB> sits at row/column index iA*dB + iB.  For two qubits this is
// |00>, |01>, |10>, |11> at indices 0..3.

#include <Eigen/Dense>

#include <complex>
#include <optional>

namespace sepscan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct Split {
    int dA = 0;
    int dB = 0;
    friend bool operator==(const Split&, const Split&) = default;
};

enum class Subsystem { A, B };

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double ppt = 1e-10;
}  // namespace tolerance

/// Hermitian, unit-trace, positive semidefinite matrix with optional
/// bipartite split.  Instances are only produced by validate() or by the
/// samplers, whose constructions are PSD by design.
class DensityMatrix {
public:
    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }
    const std::optional<Split>& split() const { return split_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    /// Same state with split metadata attached; throws WrongDim unless dA*dB == dim.
    DensityMatrix with_split(Split s) const;

    /// Skips validation.  Callers guarantee the invariants by construction.
    static DensityMatrix trusted(ComplexMatrix m, std::optional<Split> split = std::nullopt);

private:
    DensityMatrix(ComplexMatrix m, std::optional<Split> split) : m_(std::move(m)), split_(split) {}
    ComplexMatrix m_;
    std::optional<Split> split_;
};

/// Checks the three invariants.  Hermiticity and trace are tested at `tol`,
/// positivity at `psd_tol`.  A trace within `tol` of one is renormalized.
DensityMatrix validate(const ComplexMatrix& m, std::optional<Split> split = std::nullopt,
                       double tol = tolerance::hermitian, double psd_tol = tolerance::psd);

/// Reduced state of the kept subsystem (traces out the other one).
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Transposes the indices of one tensor factor.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);

/// Smallest eigenvalue by a Hermitian eigensolver.  Throws NotHermitian if
/// `h` deviates from its adjoint by more than `herm_tol`.
double min_eigenvalue(const ComplexMatrix& h, double herm_tol = 1e-10);

/// Peres-Horodecki test: min eigenvalue of the partial transpose over B is
/// at least -tol.  Equivalent to separability for dA*dB <= 6.
bool is_ppt(const DensityMatrix& rho, double tol = tolerance::ppt);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Two-qubit state whose only nonzero entries lie on the diagonal and the
/// anti-diagonal.  z14 sits at (1,4) and z23 at (2,3) in 1-based indexing.
struct XStateParams {
    double a = 0.25, b = 0.25, c = 0.25, d = 0.25;
    Complex z14{0.0, 0.0};
    Complex z23{0.0, 0.0};
};

/// Throws NotUnitTrace / NotPositive when the parameters leave the X body.
void validate_xstate(const XStateParams& x, double tol = tolerance::trace);

DensityMatrix xstate_to_density(const XStateParams& x);

/// Closed-form PPT test.  Partial transposition swaps which diagonal pair
/// bounds each coherence: separable iff |z14|^2 <= b c and |z23|^2 <= a d.
/// Evaluated as the minimum eigenvalue of the two 2x2 blocks of the partial
/// transpose against -tol so it matches is_ppt(xstate_to_density(x)).
bool xstate_is_separable(const XStateParams& x, double tol = tolerance::ppt);

/// det(rho) = (a d - |z14|^2)(b c - |z23|^2).
double xstate_determinant(const XStateParams& x);

}  // namespace sepscan
