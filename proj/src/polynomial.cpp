#include "sepscan/polynomial.hpp"

#include "sepscan/error.hpp"

#include <cmath>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace sepscan {

using boost::multiprecision::cpp_int;

Rational exact(double x) {
    if (!std::isfinite(x)) throw Error(ErrorKind::DomainError, "non-finite value has no exact rational");
    if (x == 0.0) return Rational(0);
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= |m| < 1
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    cpp_int num(mant);
    cpp_int den(1);
    if (e >= 0) {
        num <<= e;
    } else {
        den <<= -e;
    }
    return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

int sign(const Rational& q) { return q.sign(); }

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

Rational parse_rational(std::string_view text) {
    auto fail = [&] { return Error(ErrorKind::Parse, "not a rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational n = parse_rational(text.substr(0, slash));
        Rational d = parse_rational(text.substr(slash + 1));
        if (d == 0) throw fail();
        return n / d;
    }
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        const std::string_view exp = text.substr(e + 1);
        int power = 0;
        const char* first = exp.data() + (!exp.empty() && exp[0] == '+' ? 1 : 0);
        const auto [end, ec] = std::from_chars(first, exp.data() + exp.size(), power);
        if (ec != std::errc{} || end != exp.data() + exp.size() || first == end || std::abs(power) > 4096) throw fail();
        Rational mant = parse_rational(text.substr(0, e));
        const Rational ten = Rational(boost::multiprecision::pow(cpp_int(10), std::abs(power)));
        return power >= 0 ? Rational(mant * ten) : Rational(mant / ten);
    }
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    cpp_int digits(0);
    cpp_int scale(1);
    bool seen_point = false;
    bool seen_digit = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_point) throw fail();
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            if (seen_point) scale *= 10;
            seen_digit = true;
        } else {
            throw fail();
        }
    }
    if (!seen_digit) throw fail();
    Rational q(digits, scale);
    return negative ? Rational(-q) : q;
}

// ---------------------------------------------------------------- Poly1

Poly1::Poly1(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Poly1 Poly1::x() { return Poly1(std::vector<Rational>{0, 1}); }

void Poly1::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    approx_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) approx_[i] = to_double(coeffs_[i]);
}

Rational Poly1::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly1::operator()(double x) const {
    double acc = 0.0;
    for (auto it = approx_.rbegin(); it != approx_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly1 Poly1::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
    return Poly1(std::move(d));
}

Poly1 Poly1::compose(const Poly1& inner) const {
    Poly1 acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + Poly1(*it);
    return acc;
}

Poly1 Poly1::pow(unsigned n) const {
    Poly1 acc(1);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

Poly1 Poly1::monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = coeffs_;
    Rational lead = c.back();
    for (auto& v : c) v /= lead;
    return Poly1(std::move(c));
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Poly1(std::move(c));
}

Poly1 operator-(const Poly1& a) {
    std::vector<Rational> c = a.coeffs_;
    for (auto& v : c) v = -v;
    return Poly1(std::move(c));
}

Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }

Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly1(std::move(c));
}

std::pair<Poly1, Poly1> Poly1::divmod(const Poly1& a, const Poly1& b) {
    if (b.is_zero()) throw Error(ErrorKind::DomainError, "polynomial division by zero");
    std::vector<Rational> rem = a.coeffs_;
    int db = b.degree();
    if (a.degree() < db) return {Poly1{}, a};
    std::vector<Rational> quot(a.degree() - db + 1);
    for (int k = a.degree(); k >= db; --k) {
        Rational f = rem[k] / b.leading();
        quot[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs_[j];
    }
    rem.resize(db);
    return {Poly1(std::move(quot)), Poly1(std::move(rem))};
}

Poly1 Poly1::gcd(Poly1 a, Poly1 b) {
    while (!b.is_zero()) {
        Poly1 r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string Poly1::str(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        Rational mag = abs(c);
        if (mag != 1 || k == 0) os << to_string(mag);
        if (k >= 1) os << var;
        if (k >= 2) os << '^' << k;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- Poly2

Poly2::Poly2(const Rational& c) {
    add_term({0, 0}, c);
    refresh();
}

Poly2 Poly2::ra() {
    Poly2 p;
    p.add_term({1, 0}, 1);
    p.refresh();
    return p;
}

Poly2 Poly2::rb() {
    Poly2 p;
    p.add_term({0, 1}, 1);
    p.refresh();
    return p;
}

void Poly2::add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly2::refresh() {
    approx_.clear();
    for (const auto& [m, c] : terms_) {
        if (approx_.size() <= static_cast<std::size_t>(m.first)) approx_.resize(m.first + 1);
        auto& row = approx_[m.first];
        if (row.size() <= static_cast<std::size_t>(m.second)) row.resize(m.second + 1, 0.0);
        row[m.second] = to_double(c);
    }
}

namespace {
Rational ipow(const Rational& x, int n) {
    Rational r(1);
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}
}  // namespace

Rational Poly2::operator()(const Rational& a, const Rational& b) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) acc += c * ipow(a, m.first) * ipow(b, m.second);
    return acc;
}

double Poly2::operator()(double a, double b) const {
    double acc = 0.0;
    for (auto row = approx_.rbegin(); row != approx_.rend(); ++row) {
        double inner = 0.0;
        for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * b + *c;
        acc = acc * a + inner;
    }
    return acc;
}

Poly2 Poly2::pow(unsigned n) const {
    Poly2 acc(1);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

Poly2 Poly2::swapped() const {
    Poly2 p;
    for (const auto& [m, c] : terms_) p.add_term({m.second, m.first}, c);
    p.refresh();
    return p;
}

Poly1 Poly2::along(const Poly1& fa, const Poly1& fb) const {
    Poly1 acc;
    for (const auto& [m, c] : terms_) acc = acc + Poly1(c) * fa.pow(m.first) * fb.pow(m.second);
    return acc;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 p = a;
    for (const auto& [m, c] : b.terms_) p.add_term(m, c);
    p.refresh();
    return p;
}

Poly2 operator-(const Poly2& a) {
    Poly2 p;
    for (const auto& [m, c] : a.terms_) p.add_term(m, -c);
    p.refresh();
    return p;
}

Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) p.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
    p.refresh();
    return p;
}

// ------------------------------------------------------ rational functions

RationalFunction1::RationalFunction1(Poly1 n, Poly1 d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw Error(ErrorKind::DomainError, "zero denominator polynomial");
}

Rational RationalFunction1::operator()(const Rational& x) const {
    Rational d = den(x);
    if (d == 0) throw Error(ErrorKind::DomainError, "denominator vanishes at " + to_string(x));
    return num(x) / d;
}

double RationalFunction1::operator()(double x) const {
    double d = den(x);
    if (d == 0.0) throw Error(ErrorKind::DomainError, "denominator vanishes at " + std::to_string(x));
    return num(x) / d;
}

RationalFunction1 RationalFunction1::reduced() const {
    if (num.is_zero()) return {Poly1{}, Poly1{1}};
    Poly1 g = Poly1::gcd(num, den);
    Poly1 n = Poly1::divmod(num, g).first;
    Poly1 d = Poly1::divmod(den, g).first;
    Rational lead = d.leading();
    return {n * Poly1(1 / lead), d * Poly1(1 / lead)};
}

RationalFunction1 operator-(const RationalFunction1& a, const RationalFunction1& b) {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}

RationalFunction1 operator/(const RationalFunction1& a, const RationalFunction1& b) {
    return {a.num * b.den, a.den * b.num};
}

bool same_function(const RationalFunction1& f, const RationalFunction1& g) {
    return f.num * g.den == g.num * f.den;
}

RationalFunction2::RationalFunction2(Poly2 n, Poly2 d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw Error(ErrorKind::DomainError, "zero denominator polynomial");
}

Rational RationalFunction2::operator()(const Rational& a, const Rational& b) const {
    Rational d = den(a, b);
    if (d == 0)
        throw Error(ErrorKind::DomainError, "denominator vanishes at (" + to_string(a) + ", " + to_string(b) + ")");
    return num(a, b) / d;
}

double RationalFunction2::operator()(double a, double b) const {
    double d = den(a, b);
    if (d == 0.0)
        throw Error(ErrorKind::DomainError,
                    "denominator vanishes at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    return num(a, b) / d;
}

RationalFunction2 operator/(const RationalFunction2& a, const RationalFunction2& b) {
    return {a.num * b.den, a.den * b.num};
}

bool same_function(const RationalFunction2& f, const RationalFunction2& g) {
    return f.num * g.den == g.num * f.den;
}

}  // namespace sepscan
