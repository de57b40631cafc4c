#pragma once

#include "gwpt/rational.hpp"

#include <map>
#include <string>

namespace gwpt {

// Laurent polynomial in the single formal unit w = iu, coefficients in Q.
// Powers of u alone are rewritten through u^2 = -w^2.
class WScalar {
public:
    WScalar() = default;
    WScalar(const Rational& c);
    WScalar(int c) : WScalar(Rational(c)) {}

    static WScalar w_pow(int e, const Rational& c = 1);
    // u^e for even e
    static WScalar u_pow(int e);

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Rational coeff(int e) const;
    int min_exponent() const;
    int max_exponent() const;

    WScalar& operator+=(const WScalar& o);
    WScalar& operator-=(const WScalar& o);
    WScalar& operator*=(const WScalar& o);
    WScalar& operator*=(const Rational& c);
    WScalar operator-() const;

    friend WScalar operator+(WScalar a, const WScalar& b) { return a += b; }
    friend WScalar operator-(WScalar a, const WScalar& b) { return a -= b; }
    friend WScalar operator*(WScalar a, const WScalar& b) { return a *= b; }
    friend WScalar operator*(WScalar a, const Rational& c) { return a *= c; }
    friend WScalar operator*(const Rational& c, WScalar a) { return a *= c; }
    friend bool operator==(const WScalar& a, const WScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const WScalar& a, const WScalar& b) { return !(a == b); }
    friend bool operator<(const WScalar& a, const WScalar& b) { return a.terms_ < b.terms_; }

    // negative exponents require a monomial base
    WScalar pow(int n) const;

    std::string str() const;

private:
    void add_term(int e, const Rational& c);
    std::map<int, Rational> terms_;
};

}  // namespace gwpt
