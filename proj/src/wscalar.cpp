#include "gwpt/wscalar.hpp"

#include <sstream>
#include <stdexcept>

namespace gwpt {

WScalar::WScalar(const Rational& c)
{
    if (c != 0) terms_[0] = c;
}

WScalar WScalar::w_pow(int e, const Rational& c)
{
    WScalar r;
    if (c != 0) r.terms_[e] = c;
    return r;
}

WScalar WScalar::u_pow(int e)
{
    if (e % 2 != 0) throw std::domain_error("odd power of u has no representation in w");
    int half = e / 2;
    return w_pow(e, (half % 2 == 0) ? 1 : -1);
}

Rational WScalar::coeff(int e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int WScalar::min_exponent() const
{
    if (terms_.empty()) throw std::logic_error("min_exponent of zero");
    return terms_.begin()->first;
}

int WScalar::max_exponent() const
{
    if (terms_.empty()) throw std::logic_error("max_exponent of zero");
    return terms_.rbegin()->first;
}

void WScalar::add_term(int e, const Rational& c)
{
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

WScalar& WScalar::operator+=(const WScalar& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

WScalar& WScalar::operator-=(const WScalar& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

WScalar& WScalar::operator*=(const WScalar& o)
{
    WScalar r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    terms_.swap(r.terms_);
    return *this;
}

WScalar& WScalar::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

WScalar WScalar::operator-() const
{
    WScalar r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

WScalar WScalar::pow(int n) const
{
    if (n < 0) {
        if (!is_monomial()) throw std::domain_error("negative power of a non-monomial WScalar");
        auto [e, c] = *terms_.begin();
        Rational inv = 1 / c;
        WScalar base = w_pow(-e, inv);
        return base.pow(-n);
    }
    WScalar r(1), b = *this;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

std::string WScalar::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        } else if (a < 0 && e != 0) {
            os << "-";
            a = -a;
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << "w";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

}  // namespace gwpt
