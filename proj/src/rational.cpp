#include "gwpt/rational.hpp"

#include <stdexcept>

namespace gwpt {

Rational factorial(int n)
{
    if (n < 0) throw std::domain_error("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational binomial(int n, int k)
{
    if (k < 0) return 0;
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Rational harmonic(int n)
{
    Rational s = 0;
    for (int i = 1; i <= n; ++i) s += Rational(1, i);
    return s;
}

Rational harmonic2(int n)
{
    Rational s = 0, prefix = 0;
    for (int j = 1; j <= n; ++j) {
        s += prefix / j;
        prefix += Rational(1, j);
    }
    return s;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Rational elementary_symmetric(int m, const std::vector<Rational>& values)
{
    if (m < 0 || m > static_cast<int>(values.size()))
        throw std::out_of_range("elementary_symmetric: degree out of range");
    std::vector<Rational> e(m + 1, Rational(0));
    e[0] = 1;
    for (const auto& x : values)
        for (int d = m; d >= 1; --d) e[d] += x * e[d - 1];
    return e[m];
}

Rational bracket_symbol(const Rational& x, int k, int j)
{
    int m = k + 1 - j;
    if (m < 0 || k < 0) return 0;
    std::vector<Rational> vals;
    for (int n = 0; n <= k; ++n) vals.push_back(x + n);
    if (m > static_cast<int>(vals.size())) return 0;
    return elementary_symmetric(m, vals);
}

}  // namespace gwpt
