#include "doctest.h"

#include "sepscan/error.hpp"
#include "sepscan/measures.hpp"
#include "sepscan/qstate.hpp"

using namespace sepscan;

namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<int>(v.size()), static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) m(i, i) = x, ++i;
    return m;
}

ComplexMatrix bell() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("validate accepts the maximally mixed and pure boundary states") {
    const DensityMatrix mm = validate(ComplexMatrix::Identity(4, 4) / 4.0);
    CHECK(mm.matrix().trace().real() == doctest::Approx(1.0));
    CHECK(min_eigenvalue(mm.matrix()) == doctest::Approx(0.25));
    const DensityMatrix pure = validate(diag({1, 0, 0, 0}));
    CHECK(min_eigenvalue(pure.matrix()) == doctest::Approx(0.0));
}

TEST_CASE("validate names each violated invariant") {
    CHECK(kind_of([] { validate(diag({1.5, -0.5, 0, 0})); }) == ErrorKind::NotPositive);
    CHECK(kind_of([] { validate(diag({0.5, 0.2, 0, 0})); }) == ErrorKind::NotUnitTrace);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
    m(0, 1) = 0.1;
    CHECK(kind_of([&] { validate(m); }) == ErrorKind::NotHermitian);
    CHECK(kind_of([] { validate(ComplexMatrix::Identity(4, 4) / 4.0, Split{3, 2}); }) == ErrorKind::WrongDim);
}

TEST_CASE("validate renormalizes a trace within tolerance") {
    const DensityMatrix r = validate(diag({0.5 + 4e-13, 0.5}));
    CHECK(std::abs(r.matrix().trace().real() - 1.0) < 1e-15);
}

TEST_CASE("partial trace of product, mixed and X states") {
    const DensityMatrix p = validate(diag({1, 0, 0, 0}), Split{2, 2});
    const DensityMatrix ra = partial_trace(p, Subsystem::A);
    CHECK(ra.dim() == 2);
    CHECK(ra(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(ra(1, 1)) < 1e-15);

    const DensityMatrix mm = validate(ComplexMatrix::Identity(4, 4) / 4.0, Split{2, 2});
    CHECK(partial_trace(mm, Subsystem::A)(0, 0).real() == doctest::Approx(0.5));

    XStateParams x{0.4, 0.3, 0.2, 0.1, {0.1, 0.05}, {0.05, -0.1}};
    const DensityMatrix rho = xstate_to_density(x);
    const DensityMatrix a = partial_trace(rho, Subsystem::A);
    const DensityMatrix b = partial_trace(rho, Subsystem::B);
    CHECK(a(0, 0).real() == doctest::Approx(0.7));
    CHECK(a(1, 1).real() == doctest::Approx(0.3));
    CHECK(b(0, 0).real() == doctest::Approx(0.6));
    CHECK(b(1, 1).real() == doctest::Approx(0.4));
    CHECK(std::abs(a(0, 1)) < 1e-15);
    CHECK(std::abs(b(0, 1)) < 1e-15);
}

TEST_CASE("partial trace requires a split") {
    const DensityMatrix mm = validate(ComplexMatrix::Identity(4, 4) / 4.0);
    CHECK(kind_of([&] { partial_trace(mm, Subsystem::A); }) == ErrorKind::NoSplit);
    CHECK(kind_of([&] { partial_transpose(mm, Subsystem::B); }) == ErrorKind::NoSplit);
}

TEST_CASE("partial trace over a 2x3 split matches brute-force sums") {
    Sampler s(MeasureSpec{Family::GinibreInduced, 6, 6, {2, 3}, 11, 0});
    const DensityMatrix rho = s.next_density();
    const DensityMatrix a = partial_trace(rho, Subsystem::A);
    const DensityMatrix b = partial_trace(rho, Subsystem::B);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex acc = 0;
            for (int k = 0; k < 3; ++k) acc += rho(i * 3 + k, j * 3 + k);
            CHECK(std::abs(acc - a(i, j)) < 1e-14);
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex acc = 0;
            for (int k = 0; k < 2; ++k) acc += rho(k * 3 + i, k * 3 + j);
            CHECK(std::abs(acc - b(i, j)) < 1e-14);
        }
}

TEST_CASE("partial transpose") {
    const DensityMatrix d = validate(diag({0.1, 0.2, 0.3, 0.4}), Split{2, 2});
    CHECK((partial_transpose(d, Subsystem::B) - d.matrix()).norm() < 1e-15);

    const DensityMatrix b = validate(bell(), Split{2, 2});
    const ComplexMatrix pt = partial_transpose(b, Subsystem::B);
    CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5));
    CHECK(pt.trace().real() == doctest::Approx(1.0));

    Sampler s(MeasureSpec{Family::GinibreInduced, 4, 4, {2, 2}, 3, 1});
    const DensityMatrix rho = s.next_density();
    const ComplexMatrix once = partial_transpose(rho, Subsystem::A);
    const DensityMatrix again = DensityMatrix::trusted(once, Split{2, 2});
    CHECK((partial_transpose(again, Subsystem::A) - rho.matrix()).norm() < 1e-15);
    CHECK((once - once.adjoint()).norm() < 1e-15);
}

TEST_CASE("min_eigenvalue") {
    CHECK(min_eigenvalue(ComplexMatrix::Identity(4, 4) / 4.0) == doctest::Approx(0.25));
    CHECK(std::abs(min_eigenvalue(diag({0.7, 0.3, 0, 0}))) < 1e-15);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = Complex(0, 1e-6);
    CHECK(kind_of([&] { min_eigenvalue(m); }) == ErrorKind::NotHermitian);
}

TEST_CASE("is_ppt") {
    CHECK_FALSE(is_ppt(validate(bell(), Split{2, 2})));
    CHECK(is_ppt(validate(ComplexMatrix::Identity(9, 9) / 9.0, Split{3, 3})));

    Sampler sa(MeasureSpec{Family::GinibreInduced, 2, 2, {1, 2}, 5, 0});
    Sampler sb(MeasureSpec{Family::GinibreInduced, 3, 3, {1, 3}, 5, 1});
    for (int k = 0; k < 50; ++k) {
        const ComplexMatrix prod = kron(sa.next_density().matrix(), sb.next_density().matrix());
        CHECK(is_ppt(validate(prod, Split{2, 3})));
    }
}

TEST_CASE("two-qubit PPT agrees with the eigenvalue definition") {
    Sampler s(MeasureSpec{Family::GinibreInduced, 4, 4, {2, 2}, 9, 0});
    for (int k = 0; k < 2000; ++k) {
        const DensityMatrix rho = s.next_density();
        const bool by_eig = min_eigenvalue(partial_transpose(rho, Subsystem::B)) >= -tolerance::ppt;
        CHECK(is_ppt(rho) == by_eig);
    }
}

TEST_CASE("purity") {
    CHECK(purity(validate(ComplexMatrix::Identity(4, 4) / 4.0)) == doctest::Approx(0.25));
    CHECK(purity(validate(bell())) == doctest::Approx(1.0));
    CHECK(purity(validate(diag({0.75, 0.25}))) == doctest::Approx(0.625));
}

TEST_CASE("X states") {
    const DensityMatrix mm = xstate_to_density(XStateParams{});
    CHECK((mm.matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);
    CHECK(mm.split() == Split{2, 2});

    XStateParams b{0.5, 0, 0, 0.5, {0.5, 0}, {0, 0}};
    const DensityMatrix rb = xstate_to_density(b);
    CHECK((rb.matrix() - bell()).norm() < 1e-15);
    CHECK_FALSE(is_ppt(rb));
    CHECK_FALSE(xstate_is_separable(b));

    const DensityMatrix p = xstate_to_density(XStateParams{1, 0, 0, 0});
    CHECK((p.matrix() - diag({1, 0, 0, 0})).norm() < 1e-15);

    CHECK(xstate_is_separable(XStateParams{0.1, 0.2, 0.3, 0.4}));
    XStateParams edge{0.25, 0.25, 0.25, 0.25, {0.25, 0}, {0, 0.25}};
    CHECK(xstate_is_separable(edge));
    CHECK(is_ppt(xstate_to_density(edge)));

    CHECK_THROWS_AS(validate_xstate(XStateParams{0.5, 0.5, 0.5, 0.5}), Error);
    CHECK_THROWS_AS(xstate_to_density(XStateParams{0.25, 0.25, 0.25, 0.25, {0.3, 0}, {0, 0}}), Error);
    CHECK(xstate_determinant(XStateParams{}) == doctest::Approx(1.0 / 256.0));
}

TEST_CASE("closed-form X separability matches PPT on sampled states") {
    Sampler s(MeasureSpec{Family::XFlat, 4, 4, {2, 2}, 21, 0});
    int sep = 0;
    for (int k = 0; k < 20000; ++k) {
        const XStateParams x = s.next_xstate();
        const bool closed = xstate_is_separable(x);
        CHECK(closed == is_ppt(xstate_to_density(x)));
        CHECK(std::abs(xstate_determinant(x) - xstate_to_density(x).matrix().determinant().real()) < 1e-15);
        sep += closed;
    }
    CHECK(sep > 0);
    CHECK(sep < 20000);
}
