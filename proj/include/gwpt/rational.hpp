#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gwpt {

using Rational = mpq_class;
using Integer = mpz_class;

Rational factorial(int n);
Rational binomial(int n, int k);
// 1 + 1/2 + ... + 1/n, zero for n <= 0
Rational harmonic(int n);
// sum_{1<=i<j<=n} 1/(ij)
Rational harmonic2(int n);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// e_m(values); throws std::out_of_range when m is outside [0, size]
Rational elementary_symmetric(int m, const std::vector<Rational>& values);

// [x]^k_j = e_{k+1-j}(x, x+1, ..., x+k); zero when k+1-j is out of range
Rational bracket_symbol(const Rational& x, int k, int j);

}  // namespace gwpt
