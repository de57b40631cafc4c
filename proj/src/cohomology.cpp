#include "gwpt/cohomology.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gwpt {

// ---- CohClass

CohClass::CohClass(RingPtr ring, std::vector<Rational> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs))
{
    if (c_.size() != ring_->size()) throw std::invalid_argument("class length does not match ring");
}

bool CohClass::is_zero() const
{
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

static void same_ring(const CohClass& a, const CohClass& b)
{
    if (a.ring() != b.ring()) throw std::invalid_argument("cohomology classes from different rings");
}

CohClass& CohClass::operator+=(const CohClass& o)
{
    same_ring(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CohClass& CohClass::operator-=(const CohClass& o)
{
    same_ring(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CohClass& CohClass::operator*=(const Rational& s)
{
    for (auto& c : c_) c *= s;
    return *this;
}

CohClass operator*(const CohClass& a, const CohClass& b)
{
    same_ring(a, b);
    const CohRing& R = *a.ring_;
    std::vector<Rational> out(R.size(), Rational(0));
    for (size_t i = 0; i < R.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < R.size(); ++j) {
            if (b.c_[j] == 0) continue;
            Rational s = a.c_[i] * b.c_[j];
            const auto& m = R.mult(i, j);
            for (size_t k = 0; k < R.size(); ++k)
                if (m[k] != 0) out[k] += s * m[k];
        }
    }
    return CohClass(a.ring_, std::move(out));
}

bool operator==(const CohClass& a, const CohClass& b)
{
    return a.ring_ == b.ring_ && a.c_ == b.c_;
}

CohClass CohClass::pow(int n) const
{
    if (n < 0) throw std::domain_error("negative power of a class");
    CohClass r = ring_->unit();
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Rational CohClass::integral() const
{
    Rational s = 0;
    for (size_t i = 0; i < c_.size(); ++i) s += c_[i] * ring_->basis_integral(i);
    return s;
}

std::optional<int> CohClass::degree() const
{
    std::optional<int> d;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (d && *d != ring_->degree(i)) return std::nullopt;
        d = ring_->degree(i);
    }
    return d;
}

std::string CohClass::str() const
{
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
        else if (c_[i] < 0) s += "-";
        Rational a = abs(c_[i]);
        if (a != 1) s += a.get_str() + "*";
        s += ring_->label(i);
    }
    return s.empty() ? "0" : s;
}

// ---- CohRing

RingPtr CohRing::create(CohRingData data)
{
    std::shared_ptr<CohRing> r(new CohRing(std::move(data)));
    r->validate_and_init();
    return r;
}

std::optional<size_t> CohRing::find(const std::string& label) const
{
    for (size_t i = 0; i < d_.basis.size(); ++i)
        if (d_.basis[i].label == label) return i;
    return std::nullopt;
}

size_t CohRing::index(const std::string& label) const
{
    auto i = find(label);
    if (!i) throw std::invalid_argument("unknown class label '" + label + "' in ring " + d_.name);
    return *i;
}

CohClass CohRing::zero() const
{
    return CohClass(shared_from_this(), std::vector<Rational>(size(), Rational(0)));
}

CohClass CohRing::basis(size_t i) const
{
    std::vector<Rational> v(size(), Rational(0));
    v.at(i) = 1;
    return CohClass(shared_from_this(), std::move(v));
}

CohClass CohRing::c1() const { return CohClass(shared_from_this(), d_.c1); }
CohClass CohRing::c2() const { return CohClass(shared_from_this(), d_.c2); }

Rational CohRing::pairing(size_t i, size_t j) const
{
    Rational s = 0;
    const auto& m = d_.mult[i][j];
    for (size_t k = 0; k < size(); ++k) s += m[k] * d_.integrals[k];
    return s;
}

void CohRing::validate_and_init()
{
    const size_t n = d_.basis.size();
    if (n == 0) throw std::invalid_argument("empty basis");
    if (d_.basis[0].degree != 0) throw std::invalid_argument("basis[0] must be the unit in degree 0");
    if (d_.mult.size() != n || d_.integrals.size() != n || d_.c1.size() != n || d_.c2.size() != n)
        throw std::invalid_argument("ring data has inconsistent sizes");
    for (size_t i = 0; i < n; ++i) {
        if (d_.basis[i].degree < 0 || d_.basis[i].degree > d_.top_degree)
            throw std::invalid_argument("basis degree out of range");
        if (d_.mult[i].size() != n) throw std::invalid_argument("multiplication table has wrong shape");
        for (size_t j = 0; j < n; ++j)
            if (d_.mult[i][j].size() != n) throw std::invalid_argument("multiplication table has wrong shape");
        if (d_.integrals[i] != 0 && d_.basis[i].degree != d_.top_degree)
            throw std::invalid_argument("integral supported off top degree");
    }
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rational> e(n, Rational(0));
        e[i] = 1;
        if (d_.mult[0][i] != e || d_.mult[i][0] != e) throw std::invalid_argument("basis[0] is not a unit");
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (d_.mult[i][j] != d_.mult[j][i]) throw std::invalid_argument("multiplication is not commutative");
            for (size_t k = 0; k < n; ++k)
                if (d_.mult[i][j][k] != 0 && d_.basis[k].degree != d_.basis[i].degree + d_.basis[j].degree)
                    throw std::invalid_argument("multiplication is not degree additive");
        }
    auto basis_mul = [&](const std::vector<Rational>& a, size_t j) {
        std::vector<Rational> out(n, Rational(0));
        for (size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (size_t k = 0; k < n; ++k) out[k] += a[i] * d_.mult[i][j][k];
        }
        return out;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (basis_mul(d_.mult[i][j], k) != basis_mul(d_.mult[j][k], i))
                    throw std::invalid_argument("multiplication is not associative");

    // invert the pairing matrix
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = pairing(i, j);
        a[i][n + i] = 1;
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("Poincare pairing is degenerate");
        std::swap(a[piv], a[col]);
        Rational inv = 1 / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    RingPtr self = shared_from_this();
    duals_.clear();
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rational> v(n);
        for (size_t j = 0; j < n; ++j) v[j] = a[i][n + j];
        duals_.emplace_back(self, std::move(v));
    }

    int tops = 0;
    for (size_t i = 0; i < n; ++i)
        if (d_.basis[i].degree == d_.top_degree) {
            ++tops;
            point_ = i;
        }
    if (tops != 1 || d_.integrals[point_] != 1)
        throw std::invalid_argument("ring must have a single top class with integral 1");
}

std::vector<KunnethTerm> CohRing::kunneth(const CohClass& gamma) const
{
    std::vector<KunnethTerm> out;
    for (size_t l = 0; l < size(); ++l) {
        CohClass gl = gamma * duals_[l];
        if (gl.is_zero()) continue;
        for (size_t r = 0; r < size(); ++r) {
            Rational c = (gl * duals_[r]).integral();
            if (c != 0) out.push_back({static_cast<int>(l), static_cast<int>(r), c});
        }
    }
    return out;
}

std::vector<std::pair<std::vector<int>, Rational>> CohRing::kunneth_n(const CohClass& theta, int n) const
{
    std::vector<std::pair<std::vector<int>, Rational>> out;
    std::vector<int> idx;
    std::function<void(const CohClass&)> rec = [&](const CohClass& acc) {
        if (static_cast<int>(idx.size()) == n) {
            Rational c = acc.integral();
            if (c != 0) out.emplace_back(idx, c);
            return;
        }
        for (size_t i = 0; i < size(); ++i) {
            CohClass next = acc * duals_[i];
            if (next.is_zero()) continue;
            idx.push_back(static_cast<int>(i));
            rec(next);
            idx.pop_back();
        }
    };
    if (n <= 0) throw std::invalid_argument("kunneth_n needs n >= 1");
    rec(theta);
    return out;
}

// ---- presets

namespace {

// Builds a ring from monomial-style data: mult given only for pairs of non-unit basis labels.
struct Builder {
    CohRingData d;
    void basis(std::string label, int deg) { d.basis.push_back({std::move(label), deg}); }
    void finish_shape()
    {
        size_t n = d.basis.size();
        d.mult.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
        for (size_t i = 0; i < n; ++i) {
            d.mult[0][i][i] = 1;
            d.mult[i][0][i] = 1;
        }
        d.integrals.assign(n, Rational(0));
        d.c1.assign(n, Rational(0));
        d.c2.assign(n, Rational(0));
    }
    size_t at(const std::string& l) const
    {
        for (size_t i = 0; i < d.basis.size(); ++i)
            if (d.basis[i].label == l) return i;
        throw std::invalid_argument("preset label " + l);
    }
    void prod(const std::string& a, const std::string& b, const std::string& c, const Rational& k = 1)
    {
        d.mult[at(a)][at(b)][at(c)] = k;
        d.mult[at(b)][at(a)][at(c)] = k;
    }
};

}  // namespace

RingPtr make_p3()
{
    Builder b;
    b.d.name = "p3";
    b.d.top_degree = 3;
    b.basis("one", 0);
    b.basis("H", 1);
    b.basis("L", 2);
    b.basis("p", 3);
    b.finish_shape();
    b.prod("H", "H", "L");
    b.prod("H", "L", "p");
    b.d.integrals[b.at("p")] = 1;
    b.d.c1[b.at("H")] = 4;
    b.d.c2[b.at("L")] = 6;
    return CohRing::create(b.d);
}

RingPtr make_p2()
{
    Builder b;
    b.d.name = "p2";
    b.d.top_degree = 2;
    b.basis("one", 0);
    b.basis("H", 1);
    b.basis("p", 2);
    b.finish_shape();
    b.prod("H", "H", "p");
    b.d.integrals[b.at("p")] = 1;
    b.d.c1[b.at("H")] = 3;
    b.d.c2[b.at("p")] = 3;
    return CohRing::create(b.d);
}

RingPtr make_p1xp1()
{
    Builder b;
    b.d.name = "p1xp1";
    b.d.top_degree = 2;
    b.basis("one", 0);
    b.basis("A", 1);
    b.basis("B", 1);
    b.basis("p", 2);
    b.finish_shape();
    b.prod("A", "B", "p");
    b.d.integrals[b.at("p")] = 1;
    b.d.c1[b.at("A")] = 2;
    b.d.c1[b.at("B")] = 2;
    b.d.c2[b.at("p")] = 4;
    return CohRing::create(b.d);
}

RingPtr product_with_p1(const RingPtr& S)
{
    if (S->top_degree() != 2) throw std::invalid_argument("product_with_p1 needs a surface ring");
    const size_t m = S->size();
    CohRingData d;
    d.name = S->name() + "xp1";
    d.top_degree = 3;
    // order: sigma x 1 for all sigma, then sigma x pt
    for (int part = 0; part < 2; ++part)
        for (size_t i = 0; i < m; ++i) {
            std::string lab = S->label(i);
            if (part == 1) lab = (lab == "one") ? "f" : lab + ".f";
            d.basis.push_back({lab, S->degree(i) + part});
            d.factor_index.push_back(static_cast<int>(i));
            d.fiber_part.push_back(part);
        }
    const size_t n = 2 * m;
    d.mult.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            int part = d.fiber_part[a] + d.fiber_part[b];
            if (part > 1) continue;
            const auto& sm = S->mult(d.factor_index[a], d.factor_index[b]);
            for (size_t k = 0; k < m; ++k) d.mult[a][b][part * m + k] = sm[k];
        }
    d.integrals.assign(n, Rational(0));
    for (size_t k = 0; k < m; ++k) d.integrals[m + k] = S->basis_integral(k);
    CohClass c1S = S->c1(), c2S = S->c2();
    d.c1.assign(n, Rational(0));
    d.c2.assign(n, Rational(0));
    for (size_t k = 0; k < m; ++k) {
        d.c1[k] = c1S[k];
        d.c2[k] = c2S[k];
        d.c2[m + k] = 2 * c1S[k];
    }
    d.c1[m] += 2;  // 2 (1 x pt)
    d.surface = S;
    return CohRing::create(std::move(d));
}

CohClass pushforward_p1(const CohClass& delta)
{
    const auto& X = delta.ring();
    if (!X->is_product_with_p1()) throw std::invalid_argument("pushforward_p1 needs a product ring");
    const auto& S = X->surface();
    std::vector<Rational> v(S->size(), Rational(0));
    for (size_t i = 0; i < X->size(); ++i)
        if (X->fiber_part(i) == 1) v[X->factor_index(i)] += delta[i];
    return CohClass(S, std::move(v));
}

CohClass times_point(const RingPtr& X, const CohClass& sigma)
{
    if (!X->is_product_with_p1() || X->surface() != sigma.ring())
        throw std::invalid_argument("times_point: ring mismatch");
    std::vector<Rational> v(X->size(), Rational(0));
    for (size_t i = 0; i < X->size(); ++i)
        if (X->fiber_part(i) == 1) v[i] = sigma[X->factor_index(i)];
    return CohClass(X, std::move(v));
}

// ---- JSON

namespace {

Rational json_rational(const nlohmann::json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected integer or rational string in ring config");
}

std::vector<Rational> json_vector(const nlohmann::json& j, const Builder& b)
{
    std::vector<Rational> v(b.d.basis.size(), Rational(0));
    for (auto it = j.begin(); it != j.end(); ++it) v[b.at(it.key())] = json_rational(it.value());
    return v;
}

}  // namespace

RingPtr ring_from_json_text(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    Builder b;
    b.d.name = j.value("name", std::string("custom"));
    b.d.top_degree = j.at("top_degree").get<int>();
    for (const auto& e : j.at("basis")) b.basis(e.at("label").get<std::string>(), e.at("degree").get<int>());
    b.finish_shape();
    // "mult": {"H*H": {"L": 1}, ...}
    if (j.contains("mult"))
        for (auto it = j["mult"].begin(); it != j["mult"].end(); ++it) {
            const std::string& key = it.key();
            auto star = key.find('*');
            if (star == std::string::npos) throw std::invalid_argument("mult key must look like A*B: " + key);
            size_t l = b.at(key.substr(0, star)), r = b.at(key.substr(star + 1));
            auto v = json_vector(it.value(), b);
            b.d.mult[l][r] = v;
            b.d.mult[r][l] = v;
        }
    b.d.integrals = json_vector(j.at("integral"), b);
    b.d.c1 = json_vector(j.at("c1"), b);
    b.d.c2 = json_vector(j.at("c2"), b);
    return CohRing::create(b.d);
}

RingPtr load_ring_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ring config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ring_from_json_text(ss.str());
}

RingPtr ring_by_name(const std::string& name)
{
    if (name == "p3") return make_p3();
    if (name == "p2") return make_p2();
    if (name == "p1xp1") return make_p1xp1();
    if (name == "p2xp1") return product_with_p1(make_p2());
    if (name == "p1xp1xp1") return product_with_p1(make_p1xp1());
    return load_ring_json(name);
}

// ---- curve classes

Rational CurveClass::integrate(const CohClass& gamma) const
{
    Rational s = 0;
    for (size_t i = 0; i < divisor_integrals.size(); ++i) s += gamma[i] * divisor_integrals[i];
    return s;
}

CurveClass p3_line(const RingPtr& p3)
{
    CurveClass b;
    b.divisor_integrals.assign(p3->size(), Rational(0));
    b.divisor_integrals[p3->index("H")] = 1;
    b.d_beta = b.integrate(p3->c1());
    return b;
}

}  // namespace gwpt
