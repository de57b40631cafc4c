#include "gwpt/correspondence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace gwpt {

namespace {

GwElement a_mode(int n, const CohClass& gamma)
{
    if (n <= 0) return GwElement(gamma.ring());
    return GwElement::a(n, gamma);
}

// receives the terms of the C-circ formulas; j is the power of c1 multiplying the product class
struct CircSink {
    virtual ~CircSink() = default;
    virtual void mode(int n, int j, const WScalar& c) = 0;
    // a_{mu_1} ... a_{mu_len}, Kunneth-split over the class
    virtual void product(const IntPartition& mu, int j, const WScalar& c) = 0;
};

// sum over |mu| = total, length len, of a_mu / Aut(mu), with a weight per partition
void product_sum(CircSink& sink, int j, int total, int len, const WScalar& c,
                 const std::function<Rational(const IntPartition&)>& weight = nullptr)
{
    if (total < len) return;
    for (const auto& mu : partitions_of_length(total, len)) {
        Rational w = 1 / aut(mu);
        if (weight) w *= weight(mu);
        if (w != 0) sink.product(mu, j, c * w);
    }
}

void decay(int k1, CircSink& sink)
{
    sink.mode(k1 + 1, 0, WScalar(1 / factorial(k1 + 1)));
    product_sum(sink, 1, k1 - 1, 2, WScalar::w_pow(-1, 1 / factorial(k1)));
    product_sum(sink, 2, k1 - 2, 2, WScalar::w_pow(-2, 1 / factorial(k1)));
    if (k1 >= 1) product_sum(sink, 2, k1 - 3, 3, WScalar::w_pow(-2, 1 / factorial(k1 - 1)));
}

void double_bump(int k1, int k2, CircSink& sink)
{
    const Rational f = 1 / (factorial(k1) * factorial(k2));
    sink.mode(k1 + k2, 0, WScalar::w_pow(-1, -f));
    sink.mode(k1 + k2 - 1, 1, WScalar::w_pow(-2, -f));
    const int kmax = std::max(k1, k2);
    product_sum(sink, 1, k1 + k2 - 2, 2, WScalar::w_pow(-2, -f),
                [&](const IntPartition& mu) { return Rational(std::max(kmax, mu[0] + 1)); });
}

void triple_bump(int k1, int k2, int k3, CircSink& sink)
{
    const int k = k1 + k2 + k3;
    sink.mode(k - 1, 0, WScalar::w_pow(-2, Rational(k) / (factorial(k1) * factorial(k2) * factorial(k3))));
}

void bump(const std::vector<int>& k, CircSink& sink)
{
    if (k.size() == 1) return decay(k[0], sink);
    if (k.size() == 2) return double_bump(k[0], k[1], sink);
    if (k.size() == 3) return triple_bump(k[0], k[1], k[2], sink);
    throw std::domain_error("C-circ of a block with four or more interacting factors");
}

class ClassSink : public CircSink {
public:
    explicit ClassSink(const CohClass& theta) : theta_(theta), out(theta.ring()) {}
    void mode(int n, int j, const WScalar& c) override
    {
        if (n <= 0) return;
        const CohClass th = with_c1(j);
        if (!th.is_zero()) out += GwElement::a(n, th) * c;
    }
    void product(const IntPartition& mu, int j, const WScalar& c) override
    {
        const CohClass th = with_c1(j);
        if (th.is_zero()) return;
        const int len = static_cast<int>(mu.size());
        auto key = std::make_pair(j, len);
        auto it = split_.find(key);
        if (it == split_.end()) it = split_.emplace(key, theta_.ring()->kunneth_n(th, len)).first;
        for (const auto& [idx, kc] : it->second) {
            GwMonomial m;
            for (int i = 0; i < len; ++i) m.push_back(GwGen{GwKind::a, mu[i], idx[i]});
            out.add_term(m, c * WScalar(kc));
        }
    }

private:
    CohClass with_c1(int j) const
    {
        CohClass th = theta_;
        for (int i = 0; i < j; ++i) th = th * theta_.ring()->c1();
        return th;
    }
    CohClass theta_;
    std::map<std::pair<int, int>, std::vector<std::pair<std::vector<int>, Rational>>> split_;

public:
    GwElement out;
};

class StrataSink : public CircSink {
public:
    void mode(int n, int j, const WScalar& c) override
    {
        if (n > 0) add({n}, j, c);
    }
    void product(const IntPartition& mu, int j, const WScalar& c) override
    {
        add(std::vector<int>(mu.begin(), mu.end()), j, c);
    }
    std::map<int, APoly> out;

private:
    void add(std::vector<int> idx, int j, const WScalar& c)
    {
        std::sort(idx.begin(), idx.end());
        WScalar& slot = out[j][idx];
        slot += c;
        if (slot.is_zero()) out[j].erase(idx);
        if (out[j].empty()) out.erase(j);
    }
};

GwElement bump_class(const std::vector<int>& k, const CohClass& theta)
{
    ClassSink sink(theta);
    bump(k, sink);
    return sink.out;
}

GwElement fch1_bump(int k1, const CohClass& gamma)
{
    ClassSink sink(gamma.ring()->c1() * gamma);
    const WScalar c = WScalar::w_pow(-1, -1 / factorial(k1));
    sink.mode(k1 - 1, 0, c);
    sink.mode(k1 - 2, 1, c * WScalar::w_pow(-1));
    product_sum(sink, 1, k1 - 3, 2, c * WScalar::w_pow(-1, Rational(k1)));
    return sink.out;
}

GwElement fch1_double(int k1, int k2, const CohClass& theta)
{
    const RingPtr& R = theta.ring();
    if (k1 + k2 > 1)
        return a_mode(k1 + k2 - 2, theta) * WScalar::w_pow(-2, Rational(k1 + k2 - 1) / (factorial(k1) * factorial(k2)));
    if (k1 + k2 == 1) return GwElement::tau(-2, theta);
    return GwElement(R);
}

}  // namespace

std::map<int, APoly> c_circ_strata(const std::vector<int>& k)
{
    for (int ki : k)
        if (ki < 0) throw std::invalid_argument("c_circ_strata needs k_i >= 0");
    StrataSink sink;
    bump(k, sink);
    return sink.out;
}

GwElement c_circ(const RingPtr& R, const PtMonomial& block)
{
    GwElement zero(R);
    int n_fch1 = 0;
    std::vector<PtGen> gens;
    for (const auto& g : block) {
        if (g.b == kFch0) return zero;
        if (g.b == kFch1) ++n_fch1;
        else gens.push_back(g);
    }
    if (n_fch1 > 1) return zero;
    const size_t m = gens.size();
    if (m == 0) return n_fch1 ? zero : GwElement::one(R);
    if (n_fch1 == 0 && m == 1 && gens[0].k == 0) return GwElement::constant(R, WScalar(-R->basis_integral(gens[0].b)));
    for (const auto& g : gens)
        if (g.k <= 1) return zero;
    CohClass theta = R->unit();
    for (const auto& g : gens) theta = theta * R->basis(g.b);
    if (n_fch1) {
        if (m == 1) return fch1_bump(gens[0].k - 2, R->basis(gens[0].b));
        if (m == 2) return fch1_double(gens[0].k - 2, gens[1].k - 2, R->c1() * theta);
        return zero;
    }
    if (theta.is_zero()) return zero;
    std::vector<int> k;
    for (const auto& g : gens) k.push_back(g.k - 2);
    return bump_class(k, theta);
}

GwElement c_bullet(const PtElement& Din, A1Shift shift)
{
    const PtElement D = to_tch(Din);
    const RingPtr& R = D.ring();
    GwElement out(R);
    std::map<PtMonomial, GwElement> cache;
    auto block_value = [&](PtMonomial blk) -> const GwElement& {
        std::sort(blk.begin(), blk.end());
        auto it = cache.find(blk);
        if (it == cache.end()) it = cache.emplace(blk, a_to_tau(c_circ(R, blk), shift)).first;
        return it->second;
    };
    std::map<int, std::vector<SetPartition>> parts;
    for (const auto& [mono, c] : D.terms()) {
        const int n = static_cast<int>(mono.size());
        auto pit = parts.find(n);
        if (pit == parts.end()) pit = parts.emplace(n, set_partitions(n)).first;
        GwElement sum(R);
        for (const auto& P : pit->second) {
            GwElement prod = GwElement::one(R);
            for (const auto& S : P) {
                PtMonomial blk;
                for (int i : S) blk.push_back(mono[i]);
                const GwElement& v = block_value(blk);
                if (v.is_zero()) {
                    prod = GwElement(R);
                    break;
                }
                prod = prod * v;
            }
            sum += prod;
        }
        out += sum * WScalar(c);
    }
    return out;
}

IntertwineResult intertwine_check(int k, const PtElement& D)
{
    if (!is_essential(D)) throw std::invalid_argument("intertwine_check needs an essential descendent");
    IntertwineResult r;
    const RestrictMode mode = RestrictMode::vacuum;
    PtElement left_pt = apply_virasoro(k, to_ch(D), VirasoroKind::L);
    r.lhs = restrict_negatives(c_bullet(to_tch(left_pt)), mode);
    GwElement right = apply_gw_virasoro(k, c_bullet(D), GwVirasoroKind::Ltilde) * WScalar::w_pow(-k);
    r.rhs = restrict_negatives(right, mode);
    r.difference = r.lhs - r.rhs;
    r.ok = r.difference.is_zero();
    return r;
}

GwPrediction gw_predict(const PtElement& D, const CurveClass& beta)
{
    if (beta.d_beta.get_den() != 1) throw std::invalid_argument("d_beta must be an integer");
    GwPrediction p;
    p.d_beta = static_cast<int>(beta.d_beta.get_num().get_si());
    p.gw_side = c_bullet(D) * WScalar::w_pow(p.d_beta, p.d_beta % 2 ? -1 : 1);
    p.pt_prefactor = "(-q)^(" + std::to_string(-p.d_beta) + "/2)";
    return p;
}

}  // namespace gwpt
