#include "sepscan/measures.hpp"

#include "sepscan/detail/kernels.hpp"
#include "sepscan/error.hpp"
#include "sepscan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sepscan {

std::string to_string(Family f) {
    switch (f) {
        case Family::GinibreInduced: return "GinibreInduced";
        case Family::RealHS: return "RealHS";
        case Family::Bures: return "Bures";
        case Family::XFlat: return "XFlat";
        case Family::XInduced: return "XInduced";
    }
    return "?";
}

void validate_spec(const MeasureSpec& spec) {
    auto bad = [&](const std::string& why) { return Error(ErrorKind::InvalidSpec, to_string(spec.family) + ": " + why); };
    if (spec.N < 2) throw bad("N must be at least 2");
    if (spec.split.dA < 1 || spec.split.dB < 1 || spec.split.dA * spec.split.dB != spec.N)
        throw bad("split does not factor N = " + std::to_string(spec.N));
    switch (spec.family) {
        case Family::GinibreInduced:
            if (spec.K < 1) throw bad("K must be at least 1");
            break;
        case Family::RealHS:
        case Family::Bures:
            if (spec.N != 4) throw bad("only N = 4 is supported");
            break;
        case Family::XFlat:
        case Family::XInduced:
            if (spec.N != 4 || !(spec.split == Split{2, 2})) throw bad("X states need N = 4 with split (2,2)");
            if (spec.family == Family::XInduced && spec.K < spec.N) throw bad("K must be at least N");
            break;
    }
}

class Sampler::Engine {
public:
    virtual ~Engine() = default;
    virtual DensityMatrix next_density() = 0;
    virtual RadiusPair next_radii() = 0;
    virtual XStateParams next_xstate() {
        throw Error(ErrorKind::InvalidSpec, "next_xstate is only available for X-state families");
    }
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
};

namespace {

using Eigen::Dynamic;

template <class Mat>
RadiusPair analyze(const Mat& rho, Split s) {
    const double pa = kernels::reduced_purity(rho, s.dA, s.dB, true);
    const double pb = kernels::reduced_purity(rho, s.dA, s.dB, false);
    Mat pt(rho.rows(), rho.cols());
    kernels::transpose_b(rho, s.dA, s.dB, pt);
    const bool ppt = s.dA == 2 && s.dB == 2 ? kernels::two_qubit_ppt(pt, tolerance::ppt)
                                            : kernels::min_eigenvalue_at_least(pt, tolerance::ppt);
    return {radius_from_purity(pa, s.dA), radius_from_purity(pb, s.dB), ppt};
}

template <class M>
void fill_complex_gaussian(StreamRng& rng, M& g) {
    for (Eigen::Index j = 0; j < g.cols(); ++j)
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = {re, im};
        }
}

/// Base for the matrix families: subclasses produce an unnormalized PSD
/// matrix W; the state is W / Tr W.
template <int N>
class MatrixEngine : public Sampler::Engine {
public:
    using Mat = Eigen::Matrix<Complex, N, N>;

    MatrixEngine(const MeasureSpec& spec) : rng_(spec.seed, spec.stream), n_(spec.N), split_(spec.split) {}

    DensityMatrix next_density() override {
        Mat rho = draw();
        return DensityMatrix::trusted(ComplexMatrix(rho), split_);
    }

    RadiusPair next_radii() override { return analyze(draw(), split_); }

protected:
    virtual void draw_unnormalized(Mat& w) = 0;

    Mat draw() {
        Mat w(n_, n_);
        draw_unnormalized(w);
        w /= w.trace().real();
        return w;
    }

    StreamRng rng_;
    int n_;
    Split split_;
};

template <int N, int K>
class GinibreEngine final : public MatrixEngine<N> {
public:
    using typename MatrixEngine<N>::Mat;
    GinibreEngine(const MeasureSpec& spec) : MatrixEngine<N>(spec), k_(spec.K) {}

private:
    void draw_unnormalized(Mat& w) override {
        Eigen::Matrix<Complex, N, K> g(this->n_, k_);
        fill_complex_gaussian(this->rng_, g);
        w.noalias() = g * g.adjoint();
    }
    int k_;
};

class RealEngine final : public MatrixEngine<4> {
public:
    using MatrixEngine<4>::MatrixEngine;

private:
    void draw_unnormalized(Mat& w) override {
        Eigen::Matrix<double, 4, 5> g;
        for (int j = 0; j < 5; ++j)
            for (int i = 0; i < 4; ++i) g(i, j) = rng_.normal();
        w = (g * g.transpose()).cast<Complex>();
    }
};

class BuresEngine final : public MatrixEngine<4> {
public:
    using MatrixEngine<4>::MatrixEngine;

private:
    void draw_unnormalized(Mat& w) override {
        Mat g;
        fill_complex_gaussian(rng_, g);
        Mat z;
        fill_complex_gaussian(rng_, z);
        // Haar unitary: Q of a Ginibre matrix with R's diagonal made positive.
        Eigen::HouseholderQR<Mat> qr(z);
        Mat q = qr.householderQ();
        for (int j = 0; j < 4; ++j) {
            const Complex rjj = qr.matrixQR()(j, j);
            const double mag = std::abs(rjj);
            if (mag > 0.0) q.col(j) *= rjj / mag;
        }
        Mat a = (Mat::Identity() + q) * g;
        w.noalias() = a * a.adjoint();
    }
};

class XEngine final : public Sampler::Engine {
public:
    XEngine(const MeasureSpec& spec)
        : rng_(spec.seed, spec.stream),
          weight_power_(spec.family == Family::XInduced ? spec.K - 4 : 0),
          method_(spec.x_method) {}

    XStateParams next_xstate() override {
        XStateParams x = method_ == XMethod::Direct ? draw_direct() : draw_rejection();
        ++accepted;
        return x;
    }

    DensityMatrix next_density() override { return xstate_to_density(next_xstate()); }
    RadiusPair next_radii() override { return xstate_radii(next_xstate()); }

private:
    XStateParams draw_flat_proposal_until_inside() {
        for (;;) {
            ++proposals;
            double u[3] = {rng_.uniform(), rng_.uniform(), rng_.uniform()};
            std::sort(u, u + 3);
            XStateParams x;
            x.a = u[0];
            x.b = u[1] - u[0];
            x.c = u[2] - u[1];
            x.d = 1.0 - u[2];
            const double r14 = rng_.uniform() - 0.5;
            const double i14 = rng_.uniform() - 0.5;
            const double r23 = rng_.uniform() - 0.5;
            const double i23 = rng_.uniform() - 0.5;
            x.z14 = {r14, i14};
            x.z23 = {r23, i23};
            if (std::norm(x.z14) <= x.a * x.d && std::norm(x.z23) <= x.b * x.c) return x;
        }
    }

    XStateParams draw_rejection() {
        for (;;) {
            XStateParams x = draw_flat_proposal_until_inside();
            if (weight_power_ == 0) return x;
            const double ratio = std::max(0.0, xstate_determinant(x)) / kXDetMax;
            if (rng_.uniform() < std::pow(ratio, weight_power_)) return x;
        }
    }

    XStateParams draw_direct() {
        ++proposals;
        const int shape = weight_power_ + 2;
        double g[4];
        double total = 0.0;
        for (double& v : g) total += (v = rng_.gamma_integer(shape));
        XStateParams x;
        x.a = g[0] / total;
        x.b = g[1] / total;
        x.c = g[2] / total;
        x.d = g[3] / total;
        x.z14 = coherence(x.a * x.d);
        x.z23 = coherence(x.b * x.c);
        return x;
    }

    // |z|^2 = bound * s with s ~ Beta(1, m + 1), uniform phase.
    Complex coherence(double bound) {
        const double u = rng_.uniform_positive();
        const double s = weight_power_ == 0 ? u : 1.0 - std::pow(u, 1.0 / (weight_power_ + 1));
        const double phase = 2.0 * std::numbers::pi * rng_.uniform();
        return std::polar(std::sqrt(bound * s), phase);
    }

    StreamRng rng_;
    int weight_power_;
    XMethod method_;
};

template <int N, int K>
bool try_fixed(const MeasureSpec& spec, std::unique_ptr<Sampler::Engine>& out) {
    if (spec.N != N || spec.K != K) return false;
    out = std::make_unique<GinibreEngine<N, K>>(spec);
    return true;
}

std::unique_ptr<Sampler::Engine> make_engine(const MeasureSpec& spec) {
    validate_spec(spec);
    std::unique_ptr<Sampler::Engine> e;
    switch (spec.family) {
        case Family::GinibreInduced:
            if (try_fixed<4, 3>(spec, e) || try_fixed<4, 4>(spec, e) || try_fixed<4, 5>(spec, e) ||
                try_fixed<6, 6>(spec, e) || try_fixed<9, 9>(spec, e) || try_fixed<9, 24>(spec, e))
                return e;
            return std::make_unique<GinibreEngine<Dynamic, Dynamic>>(spec);
        case Family::RealHS: return std::make_unique<RealEngine>(spec);
        case Family::Bures: return std::make_unique<BuresEngine>(spec);
        case Family::XFlat:
        case Family::XInduced: return std::make_unique<XEngine>(spec);
    }
    throw Error(ErrorKind::InvalidSpec, "unknown family");
}

}  // namespace

Sampler::Sampler(const MeasureSpec& spec) : spec_(spec), engine_(make_engine(spec)) {}
Sampler::~Sampler() = default;
Sampler::Sampler(Sampler&&) noexcept = default;
Sampler& Sampler::operator=(Sampler&&) noexcept = default;

const MeasureSpec& Sampler::spec() const { return spec_; }
DensityMatrix Sampler::next_density() { return engine_->next_density(); }
XStateParams Sampler::next_xstate() { return engine_->next_xstate(); }
RadiusPair Sampler::next_radii() { return engine_->next_radii(); }
std::uint64_t Sampler::proposals() const { return engine_->proposals; }
std::uint64_t Sampler::accepted() const { return engine_->accepted; }

namespace {
void require_family(const MeasureSpec& spec, Family f) {
    if (spec.family != f) throw Error(ErrorKind::InvalidSpec, "expected family " + to_string(f) + ", got " + to_string(spec.family));
}
}  // namespace

DensityMatrix sample_induced(const MeasureSpec& spec) {
    require_family(spec, Family::GinibreInduced);
    return Sampler(spec).next_density();
}

DensityMatrix sample_real_hs(const MeasureSpec& spec) {
    require_family(spec, Family::RealHS);
    return Sampler(spec).next_density();
}

DensityMatrix sample_bures(const MeasureSpec& spec) {
    require_family(spec, Family::Bures);
    return Sampler(spec).next_density();
}

XStateParams sample_x_flat(const MeasureSpec& spec) {
    require_family(spec, Family::XFlat);
    return Sampler(spec).next_xstate();
}

XStateParams sample_x_induced(const MeasureSpec& spec) {
    require_family(spec, Family::XInduced);
    return Sampler(spec).next_xstate();
}

}  // namespace sepscan
