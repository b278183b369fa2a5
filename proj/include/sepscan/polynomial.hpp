#pragma once

// Exact-rational polynomial algebra used to transcribe and evaluate the
// closed-form separability surfaces.  Coefficients are arbitrary-precision
// rationals; every polynomial also keeps a double copy of its coefficients for
// fast plotting/quadrature evaluation.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace sepscan {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double as a dyadic rational.
Rational exact(double x);
double to_double(const Rational& q);
/// Parses "-0.660807", "139/384", "1.5e-2" or "12" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
int sign(const Rational& q);

/// Univariate polynomial, coefficients in ascending degree.
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<Rational> ascending);
    Poly1(const Rational& c) : Poly1(std::vector<Rational>{c}) {}
    Poly1(int c) : Poly1(Rational(c)) {}

    static Poly1 x();

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;
    int sign_at(const Rational& x) const { return sign((*this)(x)); }

    Poly1 derivative() const;
    /// p(inner(x)).
    Poly1 compose(const Poly1& inner) const;
    Poly1 pow(unsigned n) const;
    Poly1 monic() const;

    friend Poly1 operator+(const Poly1& a, const Poly1& b);
    friend Poly1 operator-(const Poly1& a, const Poly1& b);
    friend Poly1 operator*(const Poly1& a, const Poly1& b);
    friend Poly1 operator-(const Poly1& a);
    friend bool operator==(const Poly1& a, const Poly1& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division over Q: a = q*b + r, deg r < deg b.
    static std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b);
    /// Monic greatest common divisor (zero if both are zero).
    static Poly1 gcd(Poly1 a, Poly1 b);

    std::string str(char var = 'r') const;

private:
    void trim();
    std::vector<Rational> coeffs_;
    std::vector<double> approx_;
};

/// Bivariate polynomial in (rA, rB); term (i, j) multiplies rA^i rB^j.
class Poly2 {
public:
    using Monomial = std::pair<int, int>;

    Poly2() = default;
    Poly2(const Rational& c);
    Poly2(int c) : Poly2(Rational(c)) {}

    static Poly2 ra();
    static Poly2 rb();

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Rational operator()(const Rational& a, const Rational& b) const;
    double operator()(double a, double b) const;

    Poly2 pow(unsigned n) const;
    /// Exchanges the roles of rA and rB.
    Poly2 swapped() const;
    /// Univariate polynomial obtained by substituting rA = fa(t), rB = fb(t).
    Poly1 along(const Poly1& fa, const Poly1& fb) const;

    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a);
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

private:
    void add_term(Monomial m, const Rational& c);
    void refresh();
    std::map<Monomial, Rational> terms_;
    std::vector<std::vector<double>> approx_;  // approx_[i][j] multiplies rA^i rB^j
};

/// num/den in one variable.
struct RationalFunction1 {
    Poly1 num;
    Poly1 den{1};

    RationalFunction1() = default;
    RationalFunction1(Poly1 n) : num(std::move(n)) {}
    RationalFunction1(Poly1 n, Poly1 d);

    /// Throws DomainError where the denominator vanishes.
    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    /// Common factors cancelled; denominator monic.
    RationalFunction1 reduced() const;
    /// Numerator of the derivative (sign of f' equals sign of this / den^2).
    Poly1 derivative_numerator() const { return num.derivative() * den - num * den.derivative(); }

    friend RationalFunction1 operator-(const RationalFunction1& a, const RationalFunction1& b);
    friend RationalFunction1 operator/(const RationalFunction1& a, const RationalFunction1& b);
};

/// Identity of rational functions (cross-multiplication is exact).
bool same_function(const RationalFunction1& f, const RationalFunction1& g);

struct RationalFunction2 {
    Poly2 num;
    Poly2 den{1};

    RationalFunction2() = default;
    RationalFunction2(Poly2 n) : num(std::move(n)) {}
    RationalFunction2(Poly2 n, Poly2 d);

    Rational operator()(const Rational& a, const Rational& b) const;
    double operator()(double a, double b) const;

    RationalFunction2 swapped() const { return {num.swapped(), den.swapped()}; }
    RationalFunction1 along(const Poly1& fa, const Poly1& fb) const {
        return {num.along(fa, fb), den.along(fa, fb)};
    }

    friend RationalFunction2 operator/(const RationalFunction2& a, const RationalFunction2& b);
};

bool same_function(const RationalFunction2& f, const RationalFunction2& g);

}  // namespace sepscan
