#pragma once

#include "sepscan/qstate.hpp"
#include "sepscan/radii.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace sepscan {

enum class Family {
    GinibreInduced,  ///< G G^dagger / Tr with G an N x K complex Ginibre matrix; K = N is Hilbert-Schmidt
    RealHS,          ///< G G^T / Tr with G a real N x (N+1) Ginibre matrix: flat measure on two-rebit states
    Bures,           ///< (I + U) G G^dagger (I + U^dagger) / Tr with U Haar
    XFlat,           ///< Lebesgue measure on the 7-dimensional X-state body
    XInduced,        ///< X states with density proportional to det(rho)^(K - 4)
};

std::string to_string(Family f);

/// How X-state families are drawn.  Both produce the same measure.
enum class XMethod {
    /// Uniform proposals on the simplex and coherence squares, accepted when
    /// they land in the X body (then det-weighted accept-reject for XInduced).
    Rejection,
    /// Exact transform: diagonal ~ Dirichlet(K-2, ..., K-2), each coherence
    /// uniform in phase with |z|^2 = (product of its diagonal pair) * Beta(1, K-3).
    Direct,
};

struct MeasureSpec {
    Family family = Family::GinibreInduced;
    int N = 4;
    int K = 4;
    Split split{2, 2};
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    XMethod x_method = XMethod::Rejection;
};

/// Throws InvalidSpec when the family constraints are violated.
void validate_spec(const MeasureSpec& spec);

/// Owns one random stream; successive calls walk the (seed, stream)
/// sequence.  Not thread-safe; use one sampler per worker.
class Sampler {
public:
    explicit Sampler(const MeasureSpec& spec);
    ~Sampler();
    Sampler(Sampler&&) noexcept;
    Sampler& operator=(Sampler&&) noexcept;

    const MeasureSpec& spec() const;

    /// Next state as a full density matrix (split attached).
    DensityMatrix next_density();
    /// Next X state; X families only.
    XStateParams next_xstate();
    /// Subsystem radii and PPT verdict of the next state without
    /// materializing a validated DensityMatrix.  Equivalent to
    /// next_density() followed by partial traces, radii and is_ppt.
    RadiusPair next_radii();

    /// Proposals drawn and accepted by the X-state rejection loops.
    std::uint64_t proposals() const;
    std::uint64_t accepted() const;

    class Engine;

private:
    MeasureSpec spec_;
    std::unique_ptr<Engine> engine_;
};

/// First draw of the (seed, stream) sequence for each family.
DensityMatrix sample_induced(const MeasureSpec& spec);
DensityMatrix sample_real_hs(const MeasureSpec& spec);
DensityMatrix sample_bures(const MeasureSpec& spec);
XStateParams sample_x_flat(const MeasureSpec& spec);
XStateParams sample_x_induced(const MeasureSpec& spec);

/// Maximum of det over 4x4 density matrices, (1/4)^4.
inline constexpr double kXDetMax = 1.0 / 256.0;

}  // namespace sepscan
