#include "gwpt/qrational.hpp"

#include <sstream>
#include <stdexcept>

namespace gwpt {

Poly::Poly(const Rational& c)
{
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

Poly Poly::monomial(int degree, const Rational& c)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Poly(std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const
{
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
}

Rational Poly::lead() const
{
    return c_.empty() ? Rational(0) : c_.back();
}

int Poly::valuation() const
{
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return -1;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::pow(int n) const
{
    if (n < 0) throw std::domain_error("negative polynomial power");
    Poly r(Rational(1)), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Rational Poly::eval(const Rational& x) const
{
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::reversed(int bound) const
{
    if (degree() > bound) throw std::invalid_argument("reversal bound below degree");
    std::vector<Rational> r(bound + 1, Rational(0));
    for (int i = 0; i <= degree(); ++i) r[bound - i] = c_[i];
    return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = a;
    if (a.degree() < b.degree()) return {Poly(), rem};
    std::vector<Rational> quo(a.degree() - b.degree() + 1, Rational(0));
    Rational lb = b.lead();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Rational f = rem.lead() / lb;
        quo[shift] = f;
        for (int i = 0; i <= b.degree(); ++i) rem.c_[i + shift] -= f * b.c_[i];
        rem.trim();
    }
    return {Poly(std::move(quo)), rem};
}

Poly Poly::gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (1 / a.lead());
}

std::string Poly::str(const std::string& var) const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational a = c_[i];
        if (a == 0) continue;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        } else if (a < 0) {
            os << "-";
            a = -a;
        }
        first = false;
        if (i == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

QRational::QRational(const Rational& c) : num_(c), den_(Rational(1)) {}

QRational::QRational(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    canonicalize();
}

QRational QRational::from_integer_coeffs(const std::vector<long>& num, const std::vector<long>& den)
{
    std::vector<Rational> n, d;
    for (long x : num) n.emplace_back(x);
    for (long x : den) d.emplace_back(x);
    return QRational(Poly(std::move(n)), Poly(std::move(d)));
}

QRational QRational::var()
{
    return QRational(Poly::monomial(1), Poly(Rational(1)));
}

void QRational::canonicalize()
{
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = Poly::divmod(num_, g).first;
        den_ = Poly::divmod(den_, g).first;
    }
    // clear denominators, then remove the joint integer content
    Integer l = 1;
    for (const auto& x : num_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& x : den_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    num_ *= Rational(l);
    den_ *= Rational(l);
    Integer c = 0;
    for (const auto& x : num_.coeffs()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_num_mpz_t());
    for (const auto& x : den_.coeffs()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_num_mpz_t());
    Rational s = Rational(1) / Rational(c);
    if (den_.lead() < 0) s = -s;
    num_ *= s;
    den_ *= s;
}

QRational& QRational::operator+=(const QRational& o)
{
    *this = QRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    return *this;
}

QRational& QRational::operator-=(const QRational& o)
{
    *this = QRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    return *this;
}

QRational& QRational::operator*=(const QRational& o)
{
    *this = QRational(num_ * o.num_, den_ * o.den_);
    return *this;
}

QRational& QRational::operator/=(const QRational& o)
{
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    *this = QRational(num_ * o.den_, den_ * o.num_);
    return *this;
}

QRational QRational::operator-() const
{
    QRational r = *this;
    r.num_ *= Rational(-1);
    return r;
}

bool operator==(const QRational& a, const QRational& b)
{
    return a.num_ * b.den_ == b.num_ * a.den_;
}

QRational QRational::pow(int n) const
{
    if (n < 0) return QRational(Rational(1)) / pow(-n);
    return QRational(num_.pow(n), den_.pow(n));
}

Rational QRational::eval(const Rational& x) const
{
    Rational d = den_.eval(x);
    if (d == 0) throw std::domain_error("evaluation at a pole");
    return num_.eval(x) / d;
}

QRational QRational::at_inverse() const
{
    int bound = std::max(num_.degree(), den_.degree());
    if (bound < 0) bound = 0;
    return QRational(num_.reversed(bound), den_.reversed(bound));
}

std::optional<std::pair<int, int>> QRational::functional_symmetry() const
{
    if (is_zero()) return std::nullopt;
    QRational g = at_inverse() / *this;
    const Poly& n = g.num();
    const Poly& d = g.den();
    if (n.valuation() != n.degree() || d.valuation() != d.degree()) return std::nullopt;
    Rational ratio = n.lead() / d.lead();
    if (ratio != 1 && ratio != -1) return std::nullopt;
    int eps = ratio == 1 ? 1 : -1;
    int m = n.degree() - d.degree();
    return std::make_pair(eps, -m);
}

std::string QRational::str(const std::string& var) const
{
    if (den_.degree() == 0 && den_.lead() == 1) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace gwpt
