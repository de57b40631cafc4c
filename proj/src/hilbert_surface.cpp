#include "gwpt/hilbert_surface.hpp"

#include <functional>
#include <stdexcept>

namespace gwpt {

namespace {

void require_surface(const RingPtr& S)
{
    if (S->top_degree() != 2) throw std::invalid_argument("ring " + S->name() + " is not a surface");
}

PtElement surface_T(const RingPtr& S, int k)
{
    PtElement T(S, PtBasis::ch);
    for (int a = 0; a <= k + 2; ++a) {
        const int b = k + 2 - a;
        for (const auto& t : S->kunneth(S->unit())) {
            const int dl = S->degree(t.left), dr = S->degree(t.right);
            const int fl = a + dl - 2, fr = b + dr - 2;
            if (fl < 0 || fr < 0) continue;
            Rational c = -factorial(fl) * factorial(fr) * t.coeff;
            if (((dl + 1) * (dr + 1)) % 2) c = -c;
            T.add_term({PtGen{a, t.left}, PtGen{b, t.right}}, c);
        }
    }
    const CohClass td = S->c1() * S->c1() + S->c2();
    for (int a = 0; a <= k; ++a) {
        const int b = k - a;
        for (const auto& t : S->kunneth(td))
            T.add_term({PtGen{a, t.left}, PtGen{b, t.right}}, factorial(a) * factorial(b) * t.coeff / 12);
    }
    return T;
}

}  // namespace

SurfaceDescElement apply_Lk_surface(int k, const SurfaceDescElement& Din)
{
    if (k < -1) throw std::invalid_argument("L^S_k needs k >= -1");
    const PtElement D = to_ch(Din);
    require_surface(D.ring());
    return surface_T(D.ring(), k) * D + apply_Rk(k, D);
}

SurfaceDescElement apply_surface_constraint(int k, const SurfaceDescElement& Din)
{
    const PtElement D = to_ch(Din);
    PtElement out = apply_Lk_surface(k, D);
    const RingPtr& S = D.ring();
    out += apply_Rk(-1, PtElement::basis_gen(S, PtBasis::ch, k + 1, S->point_index()) * D) * factorial(k + 1);
    return out;
}

PtElement embed(const SurfaceDescElement& Din, const RingPtr& X)
{
    const PtElement D = to_ch(Din);
    if (!X->is_product_with_p1() || X->surface() != D.ring())
        throw std::invalid_argument("embed: target is not the product of this surface with P1");
    PtElement out(X, PtBasis::ch);
    PtElement one = PtElement::one(X);
    for (const auto& [m, c] : D.terms()) {
        PtElement acc = one * c;
        for (const auto& g : m) {
            if (g.formal()) throw std::invalid_argument("embed: formal symbol in D(S)");
            acc = acc * PtElement::gen(PtBasis::ch, g.k, times_point(X, D.ring()->basis(g.b)));
        }
        out += acc;
    }
    return out;
}

SurfaceDescElement project(const PtElement& Din)
{
    const PtElement D = to_ch(Din);
    const RingPtr& X = D.ring();
    if (!X->is_product_with_p1()) throw std::invalid_argument("project: ring is not S x P1");
    const RingPtr& S = X->surface();
    PtElement out(S, PtBasis::ch);
    for (const auto& [m, c] : D.terms()) {
        PtElement acc = PtElement::constant(S, c);
        for (const auto& g : m) {
            if (g.formal()) {
                acc = PtElement(S, PtBasis::ch);
                break;
            }
            acc = acc * PtElement::gen(PtBasis::ch, g.k, pushforward_p1(X->basis(g.b)));
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

CompositionReport composition_check(int k, const RingPtr& S, int max_factors, int max_index)
{
    require_surface(S);
    const RingPtr X = product_with_p1(S);
    std::vector<PtGen> gens;
    for (int i = 0; i <= max_index; ++i)
        for (size_t b = 0; b < S->size(); ++b) gens.push_back(PtGen{i, static_cast<int>(b)});

    CompositionReport rep;
    std::vector<PtGen> cur;
    std::function<void(size_t)> walk = [&](size_t from) {
        PtElement D(S, PtBasis::ch);
        D.add_term(cur, 1);
        PtElement lhs = project(apply_virasoro(k, embed(D, X), VirasoroKind::Lcal));
        PtElement rhs = apply_surface_constraint(k, D);
        ++rep.checked;
        if (!(lhs == rhs)) rep.mismatches.push_back({D, lhs, rhs});
        if (static_cast<int>(cur.size()) == max_factors) return;
        for (size_t i = from; i < gens.size(); ++i) {
            cur.push_back(gens[i]);
            walk(i);
            cur.pop_back();
        }
    };
    walk(0);
    return rep;
}

}  // namespace gwpt
