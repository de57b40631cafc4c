#include "gwpt/gw_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwpt {

GwElement GwElement::one(const RingPtr& ring)
{
    return constant(ring, WScalar(1));
}

GwElement GwElement::constant(const RingPtr& ring, const WScalar& c)
{
    GwElement e(ring);
    e.add_term({}, c);
    return e;
}

GwElement GwElement::tau(int k, const CohClass& gamma)
{
    if (k < -2) throw std::invalid_argument("tau level below -2");
    GwElement e(gamma.ring());
    for (size_t i = 0; i < gamma.coeffs().size(); ++i)
        if (gamma[i] != 0) e.add_term({GwGen{GwKind::tau, k, static_cast<int>(i)}}, WScalar(gamma[i]));
    return e;
}

GwElement GwElement::a(int n, const CohClass& gamma)
{
    if (n <= -2) throw std::invalid_argument("Heisenberg mode a_n with n <= -2");
    GwElement e(gamma.ring());
    if (n <= 0) return e;
    for (size_t i = 0; i < gamma.coeffs().size(); ++i)
        if (gamma[i] != 0) e.add_term({GwGen{GwKind::a, n, static_cast<int>(i)}}, WScalar(gamma[i]));
    return e;
}

GwElement GwElement::gen(const RingPtr& ring, const GwGen& g)
{
    GwElement e(ring);
    if (g.kind == GwKind::tau && g.level < -2) return e;
    if (g.kind == GwKind::a && g.level <= 0) return e;
    e.add_term({g}, WScalar(1));
    return e;
}

WScalar GwElement::coeff(const GwMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? WScalar() : it->second;
}

void GwElement::add_term(GwMonomial m, const WScalar& c)
{
    if (c.is_zero()) return;
    std::sort(m.begin(), m.end());
    auto [it, fresh] = terms_.emplace(std::move(m), c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void GwElement::check(const GwElement& o) const
{
    if (ring_ != o.ring_) throw std::invalid_argument("GW elements over different rings");
}

GwElement& GwElement::operator+=(const GwElement& o)
{
    if (!ring_) {
        *this = o;
        return *this;
    }
    if (!o.ring_) return *this;
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GwElement& GwElement::operator-=(const GwElement& o)
{
    return *this += -o;
}

GwElement& GwElement::operator*=(const WScalar& s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

GwElement GwElement::operator-() const
{
    GwElement r = *this;
    r *= WScalar(-1);
    return r;
}

GwElement operator*(const GwElement& a, const GwElement& b)
{
    a.check(b);
    GwElement r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            GwMonomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add_term(std::move(m), ca * cb);
        }
    return r;
}

bool operator==(const GwElement& a, const GwElement& b)
{
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

bool GwElement::has_kind(GwKind k) const
{
    for (const auto& [m, c] : terms_)
        for (const auto& g : m)
            if (g.kind == k) return true;
    return false;
}

std::string gw_gen_str(const RingPtr& ring, const GwGen& g)
{
    return std::string(g.kind == GwKind::tau ? "tau(" : "a(") + std::to_string(g.level) + "," + ring->label(g.b) + ")";
}

std::string GwElement::str() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (size_t i = 0; i < m.size();) {
            size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            if (!mono.empty()) mono += "*";
            mono += gw_gen_str(ring_, m[i]);
            if (j - i > 1) mono += "^" + std::to_string(j - i);
            i = j;
        }
        if (mono.empty()) s += "(" + c.str() + ")";
        else if (c == WScalar(1)) s += mono;
        else s += "(" + c.str() + ")*" + mono;
    }
    return s;
}

// ---- generic maps

GwElement gw_substitute(const GwElement& D, const std::function<GwElement(const GwGen&)>& f)
{
    GwElement out(D.ring());
    std::map<GwGen, GwElement> cache;
    for (const auto& [m, c] : D.terms()) {
        GwElement acc = GwElement::constant(D.ring(), c);
        for (const auto& g : m) {
            auto it = cache.find(g);
            if (it == cache.end()) it = cache.emplace(g, f(g)).first;
            acc = acc * it->second;
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

GwElement gw_derivation(const GwElement& D, const std::function<GwElement(const GwGen&)>& f)
{
    GwElement out(D.ring());
    std::map<GwGen, GwElement> cache;
    for (const auto& [m, c] : D.terms()) {
        for (size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;
            long mult = std::count(m.begin(), m.end(), m[i]);
            auto it = cache.find(m[i]);
            if (it == cache.end()) it = cache.emplace(m[i], f(m[i])).first;
            if (it->second.is_zero()) continue;
            GwMonomial rest = m;
            rest.erase(std::find(rest.begin(), rest.end(), m[i]));
            GwElement r(D.ring());
            r.add_term(rest, c * Rational(mult));
            out += it->second * r;
        }
    }
    return out;
}

// ---- tau <-> a

namespace {

// sum_{i<=n} 1/i^2 + sum_{i<j<=n} 1/(ij)
Rational chi2_plus_chi11(int n)
{
    Rational s = 0;
    for (int i = 1; i <= n; ++i) s += Rational(1, i * i);
    return s + harmonic2(n);
}

GwElement tau_gen_to_a(const RingPtr& R, int k, int b, A1Shift shift)
{
    const CohClass gamma = R->basis(b);
    const CohClass c1 = R->c1();
    GwElement e(R);
    if (k < 0) {
        e.add_term({GwGen{GwKind::tau, k, b}}, WScalar(1));
        return e;
    }
    if (k == 0) {
        e += GwElement::a(1, gamma);
        if (shift == A1Shift::todd) e += GwElement::constant(R, WScalar((gamma * R->c2()).integral() / 24));
        return e;
    }
    if (k >= 2 && R->degree(b) == 0) throw std::domain_error("tau_k(1) with k >= 2 has no a-form");
    e += GwElement::a(k + 1, gamma) * WScalar::w_pow(k, 1 / factorial(k + 1));
    e += GwElement::a(k, gamma * c1) * WScalar::w_pow(k - 1, -harmonic(k) / factorial(k));
    if (k >= 2) e += GwElement::a(k - 1, gamma * c1 * c1) * WScalar::w_pow(k - 2, chi2_plus_chi11(k - 1) / factorial(k - 1));
    return e;
}

}  // namespace

GwElement tau_to_a(const GwElement& D, A1Shift shift)
{
    const RingPtr& R = D.ring();
    return gw_substitute(D, [&](const GwGen& g) {
        if (g.kind == GwKind::a) return GwElement::gen(R, g);
        return tau_gen_to_a(R, g.level, g.b, shift);
    });
}

GwElement a_to_tau(const GwElement& D, A1Shift shift)
{
    const RingPtr& R = D.ring();
    std::map<std::pair<int, int>, GwElement> memo;
    std::function<GwElement(int, int)> inv = [&](int n, int b) -> GwElement {
        auto key = std::make_pair(n, b);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        // tau_{n-1}(b) = lead * a_n(b) + rest(a_{<n})
        GwElement image = tau_gen_to_a(R, n - 1, b, shift);
        GwMonomial lead_m{GwGen{GwKind::a, n, b}};
        WScalar lead = image.coeff(lead_m);
        GwElement rest = image;
        rest.add_term(lead_m, -lead);
        GwElement rest_tau = gw_substitute(rest, [&](const GwGen& g) {
            if (g.kind == GwKind::tau) return GwElement::gen(R, g);
            if (g.level >= n) throw std::logic_error("a-to-tau recursion does not descend");
            return inv(g.level, g.b);
        });
        GwElement out = GwElement::gen(R, GwGen{GwKind::tau, n - 1, b}) - rest_tau;
        out *= lead.pow(-1);
        memo.emplace(key, out);
        return out;
    };
    return gw_substitute(D, [&](const GwGen& g) {
        if (g.kind == GwKind::tau) return GwElement::gen(R, g);
        return inv(g.level, g.b);
    });
}

// ---- operators

GwElement apply_Rkj(int k, int j, const GwElement& D)
{
    if (k < -1) throw std::invalid_argument("R_k needs k >= -1");
    const RingPtr& R = D.ring();
    if (D.has_kind(GwKind::a)) throw std::invalid_argument("R^j_k acts on the tau basis");
    const CohClass c1 = R->c1();
    return gw_derivation(D, [&](const GwGen& g) {
        GwElement e(R);
        const int lo = j < 0 ? 0 : j, hi = j < 0 ? R->top_degree() : j;
        for (int jj = lo; jj <= hi; ++jj) {
            if (k == -1) {
                if (jj == 0 && g.level - 1 >= -2) e.add_term({GwGen{GwKind::tau, g.level - 1, g.b}}, WScalar(1));
                continue;
            }
            const int lvl = k + g.level - jj;
            if (lvl < -2) continue;
            Rational c = bracket_symbol(Rational(g.level + R->degree(g.b) - 1), k, jj);
            if (c == 0) continue;
            e += GwElement::tau(lvl, R->basis(g.b) * c1.pow(jj)) * WScalar(c);
        }
        return e;
    });
}

GwElement apply_Rk_gw(int k, const GwElement& D)
{
    return apply_Rkj(k, -1, D);
}

GwElement apply_Bk(int k, const GwElement& D)
{
    const RingPtr& R = D.ring();
    const CohClass ck = R->c1().pow(k);
    GwElement out(R);
    for (const auto& [m, c] : D.terms()) {
        std::vector<size_t> zeros;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i].kind == GwKind::tau && m[i].level == 0) zeros.push_back(i);
        for (size_t x = 0; x < zeros.size(); ++x)
            for (size_t y = x + 1; y < zeros.size(); ++y) {
                Rational v = (R->basis(m[zeros[x]].b) * R->basis(m[zeros[y]].b) * ck).integral();
                if (v == 0) continue;
                GwMonomial rest;
                for (size_t i = 0; i < m.size(); ++i)
                    if (i != zeros[x] && i != zeros[y]) rest.push_back(m[i]);
                out.add_term(rest, c * v);
            }
    }
    return out;
}

GwElement build_Tkj(const RingPtr& R, int k, int j)
{
    GwElement T(R);
    const CohClass cj = R->c1().pow(j);
    const auto kun = R->kunneth(cj);
    for (const auto& t : kun) {
        const int dl = R->degree(t.left);
        for (int m = -1; m <= k - j + 2; ++m) {
            const int l1 = m - 1, l2 = k - j - m;
            if (l1 < -2 || l2 < -2) continue;
            Rational c = bracket_symbol(Rational(2 - m - dl), k, j);
            if (c == 0) continue;
            if ((m + 1) % 2) c = -c;
            T.add_term({GwGen{GwKind::tau, l1, t.left}, GwGen{GwKind::tau, l2, t.right}}, WScalar(c * t.coeff));
        }
    }
    return T;
}

GwElement build_Tprime_tau(const RingPtr& R, int k)
{
    GwElement T(R);
    for (int j = 1; j <= R->top_degree(); ++j) T += build_Tkj(R, k, j);
    return T;
}

GwElement build_Tprime_compact(const RingPtr& R, int k)
{
    GwElement T(R);
    const auto kun = R->kunneth(R->c1());
    // a_{n-1}/(n-1)! with a_0 = 0 and a_{-1}/(-1)! = tau_{-2}
    auto mode = [&](int n, int b) {
        if (n == 0) return GwElement::gen(R, GwGen{GwKind::tau, -2, b}) * WScalar::w_pow(2);
        if (n == 1) return GwElement(R);
        return GwElement::gen(R, GwGen{GwKind::a, n - 1, b}) * WScalar(1 / factorial(n - 1));
    };
    for (int a = 0; a <= k + 2; ++a) {
        const int b = k + 2 - a;
        for (const auto& t : kun) {
            const int dl = R->degree(t.left), dr = R->degree(t.right);
            if (a + dl - 3 < 0 || b + dr - 3 < 0) continue;
            Rational c = -factorial(a + dl - 3) * factorial(b + dr - 3) * t.coeff;
            if ((dl * dr) % 2) c = -c;
            T += mode(a, t.left) * mode(b, t.right) * WScalar::w_pow(k - 2, c);
        }
    }
    return T;
}

GwElement build_T0(const RingPtr& R, int k)
{
    GwElement e(R);
    if (k - 1 < -2) return e;
    e.add_term({GwGen{GwKind::tau, 0, 0}, GwGen{GwKind::tau, k - 1, static_cast<int>(R->point_index())}},
               WScalar(2 * factorial(k + 1)));
    return e;
}

GwElement apply_gw_virasoro(int k, const GwElement& D, GwVirasoroKind which)
{
    const RingPtr& R = D.ring();
    GwElement out = build_Tprime_tau(R, k) * D * WScalar::w_pow(2, Rational(1, 2));
    out += apply_Rk_gw(k, D);
    out += apply_Bk(k + 1, D) * WScalar::u_pow(-2) * Rational(1, 2);
    if (which == GwVirasoroKind::Ltilde) {
        if (k == 0) out -= D * WScalar((R->c1() * R->c2()).integral() / 24);
    } else {
        GwElement tp = GwElement::tau(k - 1, R->point());
        out += apply_Rkj(-1, 0, tp * D) * WScalar::w_pow(2, factorial(k + 1));
    }
    return out;
}

GwElement restrict_negatives(const GwElement& D, RestrictMode mode)
{
    const RingPtr& R = D.ring();
    const int pt = static_cast<int>(R->point_index());
    return gw_substitute(D, [&](const GwGen& g) {
        if (mode == RestrictMode::vacuum && g.kind == GwKind::tau && g.level < 0) {
            if (g.level == -1) return GwElement(R);
            return GwElement::constant(R, WScalar::u_pow(-2) * WScalar(R->basis(g.b).integral()));
        }
        if (g.kind == GwKind::tau && g.level == -2 && g.b == pt) return GwElement::one(R);
        if (g.kind == GwKind::tau && g.level == -1) {
            if (mode == RestrictMode::low && g.b == pt) return GwElement(R);
            if (mode == RestrictMode::high && R->degree(g.b) >= 2) return GwElement(R);
        }
        return GwElement::gen(R, g);
    });
}

bool is_stationary(const GwElement& D)
{
    for (const auto& [m, c] : D.terms())
        for (const auto& g : m)
            if (g.level >= 0 && D.ring()->degree(g.b) == 0) return false;
    return true;
}

}  // namespace gwpt
