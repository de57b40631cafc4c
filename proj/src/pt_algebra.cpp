#include "gwpt/pt_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwpt {

// ---- PtElement

PtElement PtElement::one(const RingPtr& ring, PtBasis basis)
{
    return constant(ring, 1, basis);
}

PtElement PtElement::constant(const RingPtr& ring, const Rational& c, PtBasis basis)
{
    PtElement e(ring, basis);
    e.add_term({}, c);
    return e;
}

PtElement PtElement::gen(PtBasis basis, int k, const CohClass& gamma)
{
    if (k < 0) throw std::invalid_argument("descendent index must be nonnegative");
    PtElement e(gamma.ring(), basis);
    for (size_t i = 0; i < gamma.coeffs().size(); ++i)
        if (gamma[i] != 0) e.add_term({PtGen{k, static_cast<int>(i)}}, gamma[i]);
    return e;
}

PtElement PtElement::basis_gen(const RingPtr& ring, PtBasis basis, int k, int b)
{
    PtElement e(ring, basis);
    if (k >= 0) e.add_term({PtGen{k, b}}, 1);
    return e;
}

PtElement PtElement::fch1(const RingPtr& ring, PtBasis basis)
{
    PtElement e(ring, basis);
    e.add_term({PtGen{0, kFch1}}, 1);
    return e;
}

PtElement PtElement::fch0(const RingPtr& ring, PtBasis basis)
{
    PtElement e(ring, basis);
    e.add_term({PtGen{0, kFch0}}, 1);
    return e;
}

Rational PtElement::coeff(const PtMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void PtElement::add_term(PtMonomial m, const Rational& c)
{
    if (c == 0) return;
    std::sort(m.begin(), m.end());
    auto [it, fresh] = terms_.emplace(std::move(m), c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void PtElement::check(const PtElement& o) const
{
    if (ring_ != o.ring_) throw std::invalid_argument("PT elements over different rings");
    if (basis_ != o.basis_) throw std::invalid_argument("PT elements in different generator bases");
}

PtElement& PtElement::operator+=(const PtElement& o)
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

PtElement& PtElement::operator-=(const PtElement& o)
{
    return *this += -o;
}

PtElement& PtElement::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

PtElement PtElement::operator-() const
{
    PtElement r = *this;
    r *= -1;
    return r;
}

PtElement operator*(const PtElement& a, const PtElement& b)
{
    a.check(b);
    PtElement r(a.ring_, a.basis_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            PtMonomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            r.add_term(std::move(m), ca * cb);
        }
    return r;
}

bool operator==(const PtElement& a, const PtElement& b)
{
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.ring_ == b.ring_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

std::string gen_str(const RingPtr& ring, PtBasis basis, const PtGen& g)
{
    if (g.b == kFch1) return "fch1";
    if (g.b == kFch0) return "fch0";
    return std::string(basis == PtBasis::ch ? "ch(" : "tch(") + std::to_string(g.k) + "," + ring->label(g.b) + ")";
}

std::string monomial_str(const RingPtr& ring, PtBasis basis, const PtMonomial& m)
{
    std::string s;
    for (size_t i = 0; i < m.size();) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (!s.empty()) s += "*";
        s += gen_str(ring, basis, m[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

namespace {

std::string coeff_prefix(const Rational& c, bool first, bool has_monomial)
{
    std::string s;
    Rational a = abs(c);
    if (first) s = c < 0 ? "-" : "";
    else s = c < 0 ? " - " : " + ";
    if (!has_monomial) return s + (a.get_den() == 1 ? a.get_str() : "(" + a.get_str() + ")");
    if (a == 1) return s;
    return s + (a.get_den() == 1 ? a.get_str() : "(" + a.get_str() + ")") + "*";
}

}  // namespace

std::string PtElement::str() const
{
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        s += coeff_prefix(c, first, !m.empty());
        s += monomial_str(ring_, basis_, m);
        first = false;
    }
    return s;
}

int fch1_count(const PtMonomial& m)
{
    return static_cast<int>(std::count_if(m.begin(), m.end(), [](const PtGen& g) { return g.b == kFch1; }));
}

int fch0_count(const PtMonomial& m)
{
    return static_cast<int>(std::count_if(m.begin(), m.end(), [](const PtGen& g) { return g.b == kFch0; }));
}

// ---- generic maps

PtElement substitute_generators(const PtElement& D, PtBasis target, const std::function<PtElement(const PtGen&)>& f)
{
    PtElement out(D.ring(), target);
    std::map<PtGen, PtElement> cache;
    auto image = [&](const PtGen& g) -> const PtElement& {
        auto it = cache.find(g);
        if (it == cache.end()) it = cache.emplace(g, f(g)).first;
        return it->second;
    };
    for (const auto& [m, c] : D.terms()) {
        PtElement acc = PtElement::constant(D.ring(), c, target);
        for (const auto& g : m) {
            acc = acc * image(g);
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

PtElement apply_derivation(const PtElement& D, const std::function<PtElement(const PtGen&)>& f)
{
    PtElement out(D.ring(), D.basis());
    std::map<PtGen, PtElement> cache;
    for (const auto& [m, c] : D.terms()) {
        for (size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;  // handled by multiplicity below
            size_t mult = 0;
            for (const auto& g : m)
                if (g == m[i]) ++mult;
            auto it = cache.find(m[i]);
            if (it == cache.end()) it = cache.emplace(m[i], f(m[i])).first;
            if (it->second.is_zero()) continue;
            PtMonomial rest = m;
            rest.erase(std::find(rest.begin(), rest.end(), m[i]));
            PtElement r(D.ring(), D.basis());
            r.add_term(rest, c * static_cast<long>(mult));
            out += it->second * r;
        }
    }
    return out;
}

PtElement to_tch(const PtElement& D)
{
    if (D.basis() == PtBasis::tch) return D;
    const RingPtr& R = D.ring();
    CohClass c2 = R->c2();
    return substitute_generators(D, PtBasis::tch, [&](const PtGen& g) {
        if (g.formal()) {
            PtElement e(R, PtBasis::tch);
            e.add_term({g}, 1);
            return e;
        }
        // ch_k = sum_j (-1/24)^j tch_{k-2j}(gamma c2^j)
        PtElement e(R, PtBasis::tch);
        CohClass gamma = R->basis(g.b);
        Rational s = 1;
        for (int j = 0; g.k - 2 * j >= 0 && !gamma.is_zero(); ++j) {
            e += PtElement::gen(PtBasis::tch, g.k - 2 * j, gamma) * s;
            gamma = gamma * c2;
            s *= Rational(-1, 24);
        }
        return e;
    });
}

PtElement to_ch(const PtElement& D)
{
    if (D.basis() == PtBasis::ch) return D;
    const RingPtr& R = D.ring();
    CohClass c2 = R->c2();
    return substitute_generators(D, PtBasis::ch, [&](const PtGen& g) {
        PtElement e(R, PtBasis::ch);
        if (g.formal()) {
            e.add_term({g}, 1);
            return e;
        }
        e += PtElement::basis_gen(R, PtBasis::ch, g.k, g.b);
        if (g.k >= 2) e += PtElement::gen(PtBasis::ch, g.k - 2, R->basis(g.b) * c2) * Rational(1, 24);
        return e;
    });
}

PtElement in_basis(const PtElement& D, PtBasis b)
{
    return b == PtBasis::ch ? to_ch(D) : to_tch(D);
}

PtElement build_element(const std::vector<GenSpec>& spec, PtBasis target)
{
    if (spec.empty()) throw std::invalid_argument("build_element needs a ring; use PtElement::one");
    const RingPtr& R = spec.front().gamma.ring();
    PtElement acc = PtElement::one(R, target);
    for (const auto& s : spec) {
        if (s.k < 0) throw std::invalid_argument("negative descendent index");
        acc = acc * in_basis(PtElement::gen(s.kind, s.k, s.gamma), target);
    }
    return acc;
}

// ---- operators

PtElement apply_Rk(int k, const PtElement& D)
{
    if (k < -1) throw std::invalid_argument("R_k needs k >= -1");
    if (D.basis() != PtBasis::ch) throw std::invalid_argument("R_k acts on the ch basis");
    const RingPtr& R = D.ring();
    const int n = R->top_degree();
    return apply_derivation(D, [&](const PtGen& g) {
        PtElement e(R, PtBasis::ch);
        if (g.b == kFch1) {
            if (k == -1) e.add_term({PtGen{0, kFch0}}, -1);
            else if (k == 0) e.add_term({PtGen{0, kFch1}}, -1);
            else e += PtElement::gen(PtBasis::ch, k + 1, R->c1()) * (-factorial(k - 1));
            return e;
        }
        if (g.b == kFch0) {
            if (k == 0) e.add_term({PtGen{0, kFch0}}, -2);
            else if (k > 0) throw std::domain_error("R_k((-2)!ch_0(c_1)) for k > 0 is not defined");
            return e;
        }
        if (k == -1) {
            if (g.k >= 1) e.add_term({PtGen{g.k - 1, g.b}}, 1);
            return e;
        }
        Rational c = 1;
        const int d = R->degree(g.b);
        for (int m = 0; m <= k; ++m) c *= g.k + d - n + m;
        e.add_term({PtGen{g.k + k, g.b}}, c);
        return e;
    });
}

namespace {

// (n)! with the calligraphic convention: negative arguments give zero
Rational fact_or_zero(int n)
{
    return n < 0 ? Rational(0) : factorial(n);
}

}  // namespace

PtElement build_Tk(const RingPtr& R, int k, TConvention conv)
{
    if (k < -1) throw std::invalid_argument("T_k needs k >= -1");
    if (R->top_degree() != 3) throw std::invalid_argument("T_k is defined for 3-folds");
    PtElement T(R, PtBasis::ch);
    const auto kun = R->kunneth(R->c1());
    // aggregated left (resp. right) classes multiplying the formal symbol, keyed by the partner generator
    std::map<PtGen, CohClass> formal_partner;
    for (int a = 0; a <= k + 2; ++a) {
        const int b = k + 2 - a;
        for (const auto& t : kun) {
            const int dl = R->degree(t.left), dr = R->degree(t.right);
            const Rational sign = ((dl * dr) % 2) ? -1 : 1;
            const int fl = a + dl - 3, fr = b + dr - 3;
            if (fl >= 0 && fr >= 0) {
                PtElement m(R, PtBasis::ch);
                m.add_term({PtGen{a, t.left}, PtGen{b, t.right}}, Rational(-1, 2) * sign * t.coeff * factorial(fl) * factorial(fr));
                T += m;
                continue;
            }
            if (conv != TConvention::roman) continue;
            // (-1)! ch_1(c_1): index 1 on a degree-one class
            auto note = [&](int idx, int side_class, int other_k, int other_class, int other_f) {
                if (idx != 1 || R->degree(side_class) != 1 || other_f < 0) return;
                PtGen partner{other_k, other_class};
                CohClass contrib = R->basis(side_class) * (Rational(-1, 2) * sign * t.coeff * factorial(other_f));
                auto it = formal_partner.find(partner);
                if (it == formal_partner.end()) formal_partner.emplace(partner, contrib);
                else it->second += contrib;
            };
            if (fl == -1) note(a, t.left, b, t.right, fr);
            if (fr == -1) note(b, t.right, a, t.left, fl);
        }
    }
    const CohClass c1 = R->c1();
    size_t piv = 0;
    while (piv < R->size() && c1[piv] == 0) ++piv;
    for (const auto& [partner, alpha] : formal_partner) {
        if (alpha.is_zero()) continue;
        Rational lambda = alpha[piv] / c1[piv];
        if (!(alpha == c1 * lambda)) throw std::logic_error("formal (-1)!ch_1 term is not a multiple of c_1");
        PtElement m(R, PtBasis::ch);
        m.add_term({PtGen{0, kFch1}, partner}, lambda);
        T += m;
    }
    // (1/24) sum_{a+b=k} a! b! ch_a ch_b (c1 c2)
    const auto kun2 = R->kunneth(R->c1() * R->c2());
    for (int a = 0; a <= k; ++a) {
        const int b = k - a;
        for (const auto& t : kun2) {
            PtElement m(R, PtBasis::ch);
            m.add_term({PtGen{a, t.left}, PtGen{b, t.right}}, Rational(1, 24) * t.coeff * factorial(a) * factorial(b));
            T += m;
        }
    }
    return T;
}

PtElement build_Tk_tilde(const RingPtr& R, int k)
{
    if (k < -1) throw std::invalid_argument("T_k needs k >= -1");
    PtElement T(R, PtBasis::tch);
    const auto kun = R->kunneth(R->c1());
    for (int a = 0; a <= k + 2; ++a) {
        const int b = k + 2 - a;
        for (const auto& t : kun) {
            const int dl = R->degree(t.left), dr = R->degree(t.right);
            Rational c = fact_or_zero(a + dl - 3) * fact_or_zero(b + dr - 3);
            if (c == 0) continue;
            if ((dl * dr) % 2) c = -c;
            PtElement m(R, PtBasis::tch);
            m.add_term({PtGen{a, t.left}, PtGen{b, t.right}}, Rational(-1, 2) * t.coeff * c);
            T += m;
        }
    }
    return T;
}

PtElement apply_virasoro(int k, const PtElement& Din, VirasoroKind which)
{
    const PtElement D = to_ch(Din);
    const RingPtr& R = D.ring();
    if (which == VirasoroKind::L) return build_Tk(R, k, TConvention::roman) * D + apply_Rk(k, D);
    PtElement out = build_Tk(R, k, TConvention::calligraphic) * D + apply_Rk(k, D);
    CohClass td = R->c1() * R->c2() * Rational(1, 24);
    out += apply_Rk(-1, PtElement::gen(PtBasis::ch, k + 1, td) * D) * factorial(k + 1);
    return out;
}

PtElement normalize_low_degree(const PtElement& Din)
{
    const PtElement D = to_ch(Din);
    const RingPtr& R = D.ring();
    return substitute_generators(D, PtBasis::ch, [&](const PtGen& g) {
        if (g.formal() || g.k == 1) return PtElement(R, PtBasis::ch);
        if (g.k == 0) return PtElement::constant(R, -R->basis_integral(g.b));
        return PtElement::basis_gen(R, PtBasis::ch, g.k, g.b);
    });
}

PtElement bracket_normalize(const PtElement& Din, const CurveClass& beta)
{
    const PtElement D = normalize_low_degree(Din);
    const RingPtr& R = D.ring();
    return substitute_generators(D, PtBasis::ch, [&](const PtGen& g) {
        if (g.k == 2 && R->degree(g.b) == 1) return PtElement::constant(R, beta.divisor_integrals.at(g.b));
        return PtElement::basis_gen(R, PtBasis::ch, g.k, g.b);
    });
}

int filtration_level(const RingPtr& R, const PtMonomial& m)
{
    for (const auto& g : m)
        if (g.formal()) throw std::invalid_argument("filtration level undefined with formal symbols");
    const size_t n = m.size();
    if (n > 20) throw std::invalid_argument("monomial too long for filtration level");
    int best = 0;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        int size = __builtin_popcountl(mask);
        if (size <= best) continue;
        CohClass p = R->unit();
        for (size_t i = 0; i < n && !p.is_zero(); ++i)
            if (mask & (1ul << i)) p = p * R->basis(m[i].b);
        if (!p.is_zero()) best = size;
    }
    return best;
}

bool is_essential_gen(const RingPtr& R, const PtGen& g)
{
    if (g.formal()) return false;
    int d = R->degree(g.b);
    return (g.k >= 3 && d >= 1) || (g.k == 2 && d >= 2);
}

bool is_essential(const PtElement& D)
{
    PtElement T = to_tch(D);
    for (const auto& [m, c] : T.terms())
        for (const auto& g : m)
            if (!is_essential_gen(T.ring(), g)) return false;
    return true;
}

}  // namespace gwpt
