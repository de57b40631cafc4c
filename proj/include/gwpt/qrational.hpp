#pragma once

#include "gwpt/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gwpt {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    explicit Poly(std::vector<Rational> coeffs);
    static Poly monomial(int degree, const Rational& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    Rational lead() const;
    int valuation() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly pow(int n) const;
    Rational eval(const Rational& x) const;
    // q^degree * p(1/q) computed against a given degree bound
    Poly reversed(int bound) const;
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    static Poly gcd(Poly a, Poly b);  // monic

    std::string str(const std::string& var = "q") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Rational function num/den in one variable, canonical: gcd(num, den) = 1, integer
// coefficients with joint content 1, positive leading coefficient of den.
class QRational {
public:
    QRational() : num_(), den_(Rational(1)) {}
    QRational(const Rational& c);
    QRational(int c) : QRational(Rational(c)) {}
    QRational(Poly num, Poly den);
    static QRational from_integer_coeffs(const std::vector<long>& num, const std::vector<long>& den);
    static QRational var();  // q

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    QRational& operator+=(const QRational& o);
    QRational& operator-=(const QRational& o);
    QRational& operator*=(const QRational& o);
    QRational& operator/=(const QRational& o);
    QRational operator-() const;
    friend QRational operator+(QRational a, const QRational& b) { return a += b; }
    friend QRational operator-(QRational a, const QRational& b) { return a -= b; }
    friend QRational operator*(QRational a, const QRational& b) { return a *= b; }
    friend QRational operator/(QRational a, const QRational& b) { return a /= b; }
    // cross-multiplication equality
    friend bool operator==(const QRational& a, const QRational& b);
    friend bool operator!=(const QRational& a, const QRational& b) { return !(a == b); }

    QRational pow(int n) const;
    Rational eval(const Rational& x) const;
    QRational at_inverse() const;  // f(1/q)

    // (eps, a) with f(1/q) = eps q^{-a} f(q), if such a pair exists
    std::optional<std::pair<int, int>> functional_symmetry() const;

    std::string str(const std::string& var = "q") const;

private:
    void canonicalize();
    Poly num_, den_;
};

}  // namespace gwpt
