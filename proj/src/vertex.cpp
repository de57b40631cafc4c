#include "gwpt/vertex.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace gwpt {

// ---- HeisPoly ----

HeisPoly::HeisPoly(const Rational& c)
{
    add({}, c);
}

HeisPoly HeisPoly::a(int n)
{
    HeisPoly p;
    p.add({n}, 1);
    return p;
}

Rational HeisPoly::coeff(const std::vector<int>& mono) const
{
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

void HeisPoly::add(const std::vector<int>& mono, const Rational& c)
{
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(mono, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

HeisPoly& HeisPoly::operator+=(const HeisPoly& o)
{
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

HeisPoly& HeisPoly::operator-=(const HeisPoly& o)
{
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

HeisPoly HeisPoly::operator-() const
{
    HeisPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

HeisPoly operator*(const HeisPoly& a, const HeisPoly& b)
{
    HeisPoly r;
    std::vector<int> m;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            m.resize(ma.size() + mb.size());
            std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), m.begin());
            r.add(m, ca * cb);
        }
    }
    return r;
}

std::string HeisPoly::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        first = false;
        bool unit = mag == 1 && !m.empty();
        if (!unit) os << to_string(mag);
        for (size_t i = 0; i < m.size();) {
            size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            os << (unit && i == 0 ? "" : "*") << "a" << m[i];
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
    }
    return os.str();
}

// ---- context and primitive series ----

namespace {

constexpr int kVBound = 100000;
constexpr int kNoCutVHigh = 60;

std::shared_ptr<const SeriesLayout> make_layout(int n, int r_high, int t_low, int t_high,
                                                const std::vector<int>& xh, int x_total, bool cuts)
{
    std::vector<SeriesVar> vars;
    vars.push_back({"r", 0, r_high, false});
    vars.push_back({"t", t_low, t_high, false});
    for (int i = 0; i < n; ++i) vars.push_back({"x" + std::to_string(i + 1), 0, xh[i], false});
    for (int i = 0; i < n; ++i) vars.push_back({"v" + std::to_string(i + 1), -kVBound, kVBound, true});
    std::vector<SeriesCut> cs;
    const size_t nv = vars.size();
    if (cuts) {
        for (int s = 0; s < n; ++s) {
            SeriesCut c{std::vector<int>(nv, 0), 0};
            for (int i = s; i < n; ++i) {
                c.weights[2 + i] = -1;
                c.weights[2 + n + i] = 1;
                c.min -= xh[i] + 1;
            }
            cs.push_back(c);
        }
    } else if (n > 1) {
        // without residue cuts, bound the positive powers that (v_b - v_a)^{-k} produces
        SeriesCut c{std::vector<int>(nv, 0), -kNoCutVHigh};
        c.weights[2 + n] = -1;
        cs.push_back(c);
    }
    if (x_total >= 0) {
        SeriesCut c{std::vector<int>(nv, 0), -x_total};
        for (int i = 0; i < n; ++i) c.weights[2 + i] = -1;
        cs.push_back(c);
    }
    return std::make_shared<const SeriesLayout>(std::move(vars), std::move(cs));
}

}  // namespace

VertexContext::VertexContext(int points, int r_high, int t_low, int t_high, std::vector<int> x_high, int x_total,
                             bool residue_cuts)
    : points_(points)
{
    if (points < 1 || static_cast<int>(x_high.size()) != points) throw std::invalid_argument("vertex context arity");
    layout_ = make_layout(points, r_high, t_low, t_high, x_high, x_total, residue_cuts);
}

VertexSeries VertexContext::var(const std::string& name, int power) const
{
    return VertexSeries::variable(layout_, name, power);
}

VertexSeries VertexContext::mono(const std::map<std::string, int>& exps, const HeisPoly& c) const
{
    std::vector<int> e(layout_->size(), 0);
    for (const auto& [n, k] : exps) e[layout_->index(n)] = k;
    return VertexSeries::monomial(layout_, e, c);
}

VertexSeries binomial_series(const VertexSeries& eps, const Rational& alpha)
{
    VertexSeries out = VertexSeries::constant(eps.layout(), HeisPoly(Rational(1)));
    VertexSeries p = out;
    Rational c = 1;
    for (int j = 1; j < 512; ++j) {
        p = p * eps;
        if (p.is_zero()) return out;
        c *= (alpha - (j - 1)) / j;
        if (c != 0) out += p.scaled(HeisPoly(c));
    }
    throw std::domain_error("binomial series does not truncate");
}

VertexSeries log1p_series(const VertexSeries& eps)
{
    VertexSeries out(eps.layout());
    VertexSeries p = VertexSeries::constant(eps.layout(), HeisPoly(Rational(1)));
    for (int j = 1; j < 512; ++j) {
        p = p * eps;
        if (p.is_zero()) return out;
        out += p.scaled(HeisPoly(Rational(j % 2 ? 1 : -1, j)));
    }
    throw std::domain_error("log series does not truncate");
}

VertexSeries inv_v_plus_t(const VertexContext& ctx, int i, int k)
{
    const std::string v = ctx.v(i);
    VertexSeries tv = ctx.mono({{"t", 1}, {v, -1}}, HeisPoly(Rational(1)));
    return binomial_series(tv, -k) * ctx.var(v, -k);
}

VertexSeries inv_v_diff(const VertexContext& ctx, int a, int b, int k)
{
    if (a >= b) throw std::invalid_argument("inv_v_diff needs a < b");
    VertexSeries out(ctx.layout());
    for (int m = 0; m < 4096; ++m) {
        VertexSeries term = ctx.mono({{ctx.v(a), m}, {ctx.v(b), -k - m}}, HeisPoly(binomial(k - 1 + m, m)));
        if (term.is_zero()) return out;
        out += term;
    }
    throw std::domain_error("inv_v_diff does not truncate");
}

namespace {

VertexSeries d_dv(const VertexSeries& s, const std::string& v)
{
    const size_t vi = s.layout()->index(v);
    VertexSeries out(s.layout());
    for (const auto& [e, c] : s.terms()) {
        if (e[vi] == 0) continue;
        auto ne = e;
        ne[vi] -= 1;
        out.add_term(ne, c * HeisPoly(Rational(e[vi])));
    }
    return out;
}

int r_high_of(const VertexContext& ctx)
{
    return ctx.layout()->var(ctx.layout()->index("r")).high;
}

// g = (w - y)/r = sum_k g_k r^k, from (1/r) log(1 + r (t/v) g) + g + x = 0
VertexSeries g_series(const VertexContext& ctx, int i)
{
    const std::string v = ctx.v(i);
    const VertexSeries tv = ctx.mono({{"t", 1}, {v, -1}}, HeisPoly(Rational(1)));
    const VertexSeries r = ctx.var("r");
    // v/(v + t)
    const VertexSeries lin_inv = binomial_series(tv, -1);
    VertexSeries g = (ctx.var(ctx.x(i)) * lin_inv).scaled(HeisPoly(Rational(-1)));
    for (int k = 1; k <= r_high_of(ctx); ++k) {
        const VertexSeries z = tv * g;
        // (1/r) log(1 + r z) = sum_j (-1)^{j+1} r^{j-1} z^j / j
        VertexSeries phi = g + ctx.var(ctx.x(i));
        VertexSeries zp = ctx.one();
        VertexSeries rp = ctx.one();
        for (int j = 1; j <= k + 1; ++j) {
            zp = zp * z;
            phi += (rp * zp).scaled(HeisPoly(Rational(j % 2 ? 1 : -1, j)));
            rp = rp * r;
        }
        const VertexSeries ck = phi.coefficient("r", k);
        g -= (ck * lin_inv).shifted("r", k);
    }
    return g;
}

VertexSeries exp_xv(const VertexContext& ctx, int i)
{
    return (ctx.var(ctx.x(i)) * ctx.var(ctx.v(i))).exp();
}

// E / exp(x v): the exponent of E is x v + x (v + t) q_r - r t g^2/2 with -g = x (q_0 + q_r)
VertexSeries e_rest(const VertexContext& ctx, int i, const VertexSeries& g)
{
    const std::string v = ctx.v(i);
    const VertexSeries q = g.shifted(ctx.x(i), -1).scaled(HeisPoly(Rational(-1)));
    const VertexSeries qr = q - q.coefficient("r", 0);
    const VertexSeries vt = ctx.var(v) + ctx.var("t");
    VertexSeries ex = ctx.var(ctx.x(i)) * vt * qr;
    ex -= (ctx.var("r") * ctx.var("t") * g * g).scaled(HeisPoly(Rational(1, 2)));
    if (ex.is_zero()) return ctx.one();
    return ex.exp();
}

VertexSeries d_factor(const VertexContext& ctx, int i, const VertexSeries& g)
{
    const std::string v = ctx.v(i);
    const VertexSeries q = g.shifted(ctx.x(i), -1).scaled(HeisPoly(Rational(-1)));
    const VertexSeries q0 = q.coefficient("r", 0);
    const VertexSeries q0inv = ctx.one() + ctx.mono({{"t", 1}, {v, -1}}, HeisPoly(Rational(1)));
    return q0inv * binomial_series(q0inv * (q - q0), -1);
}

VertexSeries sqrt_factor(const VertexContext& ctx, int i, const VertexSeries& g)
{
    // d/dy = t d/dv
    const VertexSeries dg = d_dv(g, ctx.v(i)) * ctx.var("t");
    return binomial_series(ctx.var("r") * dg, Rational(1, 2));
}

// (y^{-n} - w^{-n})/(t^n r) = -v^{-n} sum_{j>=1} binom(-n, j) r^{j-1} z^j,  z = (t/v) g
VertexSeries powerdiff_core(const VertexContext& ctx, int i, const VertexSeries& g, int n,
                            std::vector<VertexSeries>& zpow)
{
    const int rh = r_high_of(ctx);
    if (zpow.empty()) {
        const VertexSeries z = ctx.mono({{"t", 1}, {ctx.v(i), -1}}, HeisPoly(Rational(1))) * g;
        VertexSeries zp = ctx.one();
        VertexSeries rp = ctx.one();
        for (int j = 1; j <= rh + 1; ++j) {
            zp = zp * z;
            zpow.push_back(rp * zp);   // r^{j-1} z^j
            rp = rp * ctx.var("r");
        }
    }
    VertexSeries out(ctx.layout());
    Rational c = 1;
    for (int j = 1; j <= static_cast<int>(zpow.size()); ++j) {
        c *= Rational(-n - (j - 1)) / j;
        out -= zpow[j - 1].scaled(HeisPoly(c));
    }
    return out * ctx.var(ctx.v(i), -n);
}

// exp(sum_n a_n/n * powerdiff(n)): the positive-mode part of the vertex operator
VertexSeries v_plus(const VertexContext& ctx, int i, const VertexSeries& g)
{
    std::vector<VertexSeries> zpow;
    VertexSeries ex(ctx.layout());
    const int xh = ctx.layout()->var(ctx.layout()->index(ctx.x(i))).high;
    for (int n = 1;; ++n) {
        VertexSeries pd = powerdiff_core(ctx, i, g, n, zpow);
        if (pd.is_zero() && n > xh) break;
        ex += pd.scaled(HeisPoly::a(n) * HeisPoly(Rational(1, n)));
        if (n > 4 * xh + 16) throw std::domain_error("positive modes do not truncate");
    }
    return ex.exp();
}

// Btilde^{(ab)}/r^2 = -t^2 g_a g_b (v_b - v_a)^{-2} (1 + r t (g_b - g_a)(v_b - v_a)^{-1})^{-1}
VertexSeries btilde_over_r2(const VertexContext& ctx, int a, int b, const VertexSeries& ga, const VertexSeries& gb)
{
    const VertexSeries d1 = inv_v_diff(ctx, a, b, 1);
    const VertexSeries tt = ctx.mono({{"t", 2}}, HeisPoly(Rational(-1)));
    VertexSeries core = tt * ga * gb * inv_v_diff(ctx, a, b, 2);
    if (r_high_of(ctx) == 0) return core;
    return core * binomial_series(ctx.var("r") * ctx.var("t") * (gb - ga) * d1, -1);
}

VertexSeries b_direct(const VertexContext& ctx, const VertexSeries& g1, const VertexSeries& g2)
{
    // t w_i = v_i + r t g_i;  B = (t w2 - v1)(v2 - t w1) / ((v2 - v1)(t w2 - t w1))
    const VertexSeries r = ctx.var("r"), t = ctx.var("t");
    const VertexSeries v1 = ctx.var(ctx.v(0)), v2 = ctx.var(ctx.v(1));
    const VertexSeries tw1 = v1 + r * t * g1, tw2 = v2 + r * t * g2;
    const VertexSeries d1 = inv_v_diff(ctx, 0, 1, 1);
    const VertexSeries den = d1 * binomial_series(r * t * (g2 - g1) * d1, -1);
    return (tw2 - v1) * (v2 - tw1) * d1 * den;
}

}  // namespace

std::vector<VertexSeries> solve_constraint(const VertexContext& ctx, int i, int order_r)
{
    if (order_r < 1 || order_r > 3) throw std::invalid_argument("solve_constraint supports orders 1..3");
    if (r_high_of(ctx) < order_r - 1) throw std::invalid_argument("r window too small for the requested order");
    const VertexSeries g = g_series(ctx, i);
    std::vector<VertexSeries> f;
    for (int k = 1; k <= order_r; ++k) f.push_back(g.coefficient("r", k - 1));
    return f;
}

VertexSeries constraint_residual(const VertexContext& ctx, int i, const std::vector<VertexSeries>& f)
{
    // (1/r) log(w e^w / (y e^y e^{-x r})) = (1/r) log(1 + r (t/v) G) + G + x,  G = (w - y)/r
    VertexSeries G(ctx.layout());
    for (size_t k = 0; k < f.size(); ++k) G += f[k].shifted("r", static_cast<int>(k));
    const VertexSeries z = ctx.mono({{"t", 1}, {ctx.v(i), -1}}, HeisPoly(Rational(1))) * G;
    VertexSeries out = G + ctx.var(ctx.x(i));
    VertexSeries zp = ctx.one(), rp = ctx.one();
    for (int j = 1; j <= r_high_of(ctx) + 1; ++j) {
        zp = zp * z;
        out += (rp * zp).scaled(HeisPoly(Rational(j % 2 ? 1 : -1, j)));
        rp = rp * ctx.var("r");
    }
    // only orders the truncated solution can satisfy
    VertexSeries low(ctx.layout());
    for (int k = 0; k < static_cast<int>(f.size()); ++k) low += out.coefficient("r", k).shifted("r", k);
    return low;
}

VertexSeries build_factor(const VertexContext& ctx, VertexFactor which, int i, int n)
{
    const VertexSeries g = g_series(ctx, i);
    switch (which) {
    case VertexFactor::E:
        return exp_xv(ctx, i) * e_rest(ctx, i, g);
    case VertexFactor::D:
        return d_factor(ctx, i, g);
    case VertexFactor::sqrtform:
        return sqrt_factor(ctx, i, g);
    case VertexFactor::powerdiff: {
        if (n < 1) throw std::invalid_argument("powerdiff needs n >= 1");
        std::vector<VertexSeries> zpow;
        return powerdiff_core(ctx, i, g, n, zpow);
    }
    case VertexFactor::B2pt:
        if (i + 1 >= ctx.points()) throw std::invalid_argument("B2pt needs points i and i + 1");
        if (i != 0) throw std::invalid_argument("B2pt is built for points 0 and 1");
        return b_direct(ctx, g, g_series(ctx, 1));
    }
    throw std::logic_error("unknown factor");
}

VertexSeries printed_w_coefficient(const VertexContext& ctx, int k)
{
    const VertexSeries x = ctx.var(ctx.x(0)), v = ctx.var(ctx.v(0)), t = ctx.var("t");
    switch (k) {
    case 1:  // -x y/(y+1)
        return (x * v * inv_v_plus_t(ctx, 0, 1)).scaled(HeisPoly(Rational(-1)));
    case 2:  // x^2 y / 2(y+1)^3
        return (x.pow(2) * v * t.pow(2) * inv_v_plus_t(ctx, 0, 3)).scaled(HeisPoly(Rational(1, 2)));
    case 3:  // x^3 (2y-1) / 6(y+1)^5
        return (x.pow(3) * (v.scaled(HeisPoly(Rational(2))) - t) * t.pow(4) * inv_v_plus_t(ctx, 0, 5))
            .scaled(HeisPoly(Rational(1, 6)));
    default:
        throw std::invalid_argument("printed w coefficient order");
    }
}

VertexSeries printed_factor(const VertexContext& ctx, VertexFactor which, int n)
{
    const VertexSeries x = ctx.var(ctx.x(0)), v = ctx.var(ctx.v(0)), t = ctx.var("t"), r = ctx.var("r");
    auto q = [](const Rational& c) { return HeisPoly(c); };
    switch (which) {
    case VertexFactor::E: {
        VertexSeries s = ctx.one();
        s -= (t * r * x.pow(2) * v * inv_v_plus_t(ctx, 0, 1)).scaled(q(Rational(1, 2)));
        VertexSeries inner = (x * v.pow(2)).scaled(q(3)) + (t * x * v).scaled(q(3)) + t.pow(2).scaled(q(4));
        s += (t.pow(2) * r.pow(2) * inner * inv_v_plus_t(ctx, 0, 3)).scaled(q(Rational(1, 24)));
        return exp_xv(ctx, 0) * s;
    }
    case VertexFactor::D: {
        VertexSeries s = ctx.one();
        s += (t.pow(2) * r * x * inv_v_plus_t(ctx, 0, 2)).scaled(q(Rational(1, 2)));
        s += (t.pow(3) * r.pow(2) * x.pow(2) * (v.scaled(q(4)) + t) * inv_v_plus_t(ctx, 0, 4)).scaled(q(Rational(1, 12)));
        return (v + t) * ctx.var(ctx.v(0), -1) * s;
    }
    case VertexFactor::sqrtform: {
        VertexSeries s = ctx.one();
        s -= (x * r * t * inv_v_plus_t(ctx, 0, 1)).scaled(q(Rational(1, 2)));
        s -= (x.pow(2) * r.pow(2) * t.pow(3) * (v.scaled(q(4)) - t) * inv_v_plus_t(ctx, 0, 4)).scaled(q(Rational(1, 8)));
        return s;
    }
    case VertexFactor::powerdiff: {
        const Rational N(n);
        const VertexSeries vn = ctx.var(ctx.v(0), -n);
        VertexSeries s = (x * t * vn * inv_v_plus_t(ctx, 0, 1)).scaled(q(N));
        s += (x.pow(2) * r * t.pow(2) * (v.scaled(q(N + 1)) + t.scaled(q(N))) * vn * inv_v_plus_t(ctx, 0, 3)).scaled(q(N));
        VertexSeries poly = v.pow(2).scaled(q((N + 1) * (N + 2))) + (t * v).scaled(q(2 * N * N + 3 * N - 1)) +
                            t.pow(2).scaled(q(N * N));
        s += (x.pow(3) * r.pow(2) * t.pow(3) * poly * vn * inv_v_plus_t(ctx, 0, 5)).scaled(q(N * N / 6));
        return s;
    }
    case VertexFactor::B2pt: {
        const VertexSeries x2 = ctx.var(ctx.x(1)), v2 = ctx.var(ctx.v(1));
        VertexSeries s = r.pow(2) * x * x2 * t.pow(2) * v * v2 * inv_v_diff(ctx, 0, 1, 2) * inv_v_plus_t(ctx, 0, 1) *
                         inv_v_plus_t(ctx, 1, 1);
        return ctx.one() - s;
    }
    }
    throw std::logic_error("unknown factor");
}

namespace {

// c if a == c * b for a nonzero rational c, otherwise empty
std::string ratio_of(const VertexSeries& a, const VertexSeries& b)
{
    if (a.is_zero() || b.is_zero() || a.size() != b.size()) return "";
    std::optional<Rational> c;
    auto ib = b.terms().begin();
    for (const auto& [e, ca] : a.terms()) {
        if (e != ib->first || ca.terms().size() != 1 || ib->second.terms().size() != 1) return "";
        Rational q = ca.terms().begin()->second / ib->second.terms().begin()->second;
        if (c && *c != q) return "";
        c = q;
        ++ib;
    }
    return to_string(*c);
}

// the first few terms of s, then the term count
std::string series_str(const VertexSeries& s, size_t max_terms = 4)
{
    if (s.is_zero()) return "0";
    std::string out;
    size_t n = 0;
    for (const auto& [e, c] : s.terms()) {
        if (n == max_terms) break;
        if (n++) out += " + ";
        out += "(" + c.str() + ")";
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) out += "*" + s.layout()->var(i).name + (e[i] == 1 ? "" : "^" + std::to_string(e[i]));
    }
    if (s.size() > max_terms) out += " + ... (" + std::to_string(s.size()) + " terms)";
    return out;
}

FactorCheck compare(const std::string& name, int k, const VertexSeries& got, const VertexSeries& printed)
{
    FactorCheck fc{name, k, got == printed, ""};
    if (!fc.ok) {
        const std::string ratio = ratio_of(got, printed);
        fc.detail = ratio.empty() ? "not proportional to the printed term" : "computed = " + ratio + " x printed";
        fc.detail += "; computed - printed = " + series_str(got - printed);
    }
    return fc;
}

}  // namespace

std::vector<FactorCheck> check_printed_expansions(int t_high)
{
    // no residue cuts: every coefficient is compared inside the t window
    VertexContext ctx(2, 3, 0, t_high, {4, 4}, -1, false);
    std::vector<FactorCheck> out;
    const auto f = solve_constraint(ctx, 0, 3);
    for (int k = 1; k <= 3; ++k) out.push_back(compare("w(x,y)", k, f[k - 1], printed_w_coefficient(ctx, k)));
    {
        FactorCheck fc{"constraint", 3, constraint_residual(ctx, 0, f).is_zero(), ""};
        if (!fc.ok) fc.detail = "solution does not satisfy w e^w = y e^y e^{-xr} mod r^4";
        out.push_back(fc);
        std::vector<VertexSeries> pf;
        for (int k = 1; k <= 3; ++k) pf.push_back(printed_w_coefficient(ctx, k));
        const VertexSeries res = constraint_residual(ctx, 0, pf);
        FactorCheck pc{"constraint(printed w)", 3, res.is_zero(), ""};
        if (!pc.ok) pc.detail = "printed w(x,y) does not satisfy the constraint mod r^4; residual = " + series_str(res);
        out.push_back(pc);
    }
    auto orders = [&](const std::string& name, const VertexSeries& got, const VertexSeries& printed) {
        for (int k = 0; k <= 2; ++k) out.push_back(compare(name, k, got.coefficient("r", k), printed.coefficient("r", k)));
    };
    orders("E", build_factor(ctx, VertexFactor::E, 0), printed_factor(ctx, VertexFactor::E));
    orders("D", build_factor(ctx, VertexFactor::D, 0), printed_factor(ctx, VertexFactor::D));
    orders("sqrt(dw dy)", build_factor(ctx, VertexFactor::sqrtform, 0), printed_factor(ctx, VertexFactor::sqrtform));
    for (int n = 1; n <= 4; ++n)
        orders("powerdiff(" + std::to_string(n) + ")", build_factor(ctx, VertexFactor::powerdiff, 0, n),
               printed_factor(ctx, VertexFactor::powerdiff, n));
    // terms near the v_1 cut depend on the order of truncation; compare well inside it
    auto inner = [&](const VertexSeries& s) {
        const size_t v1 = ctx.layout()->index(ctx.v(0));
        VertexSeries out(ctx.layout());
        for (const auto& [e, c] : s.terms())
            if (e[v1] <= kNoCutVHigh / 2) out.add_term(e, c);
        return out;
    };
    orders("B", inner(build_factor(ctx, VertexFactor::B2pt, 0)), inner(printed_factor(ctx, VertexFactor::B2pt)));
    return out;
}

// ---- residues ----

namespace {

// kResidueSign * [v_i^{-1}] of s * exp(x_i v_i)
VertexSeries residue_with_exp(const VertexContext& ctx, const VertexSeries& s, int i)
{
    const auto& L = *ctx.layout();
    const size_t vi = L.index(ctx.v(i)), xi = L.index(ctx.x(i));
    VertexSeries out(ctx.layout());
    for (const auto& [e, c] : s.terms()) {
        const int q = -1 - e[vi];
        if (q < 0) continue;
        auto ne = e;
        ne[vi] = 0;
        ne[xi] += q;
        if (ne[xi] > L.var(xi).high) continue;
        out.add_term(ne, c * HeisPoly(Rational(kResidueSign) / factorial(q)));
    }
    return out;
}

VertexCoefficients collect(const VertexContext& ctx, const VertexSeries& res, int n,
                           const std::function<bool(const std::vector<int>&)>& want)
{
    const auto& L = *ctx.layout();
    VertexCoefficients out;
    out.points = n;
    const size_t ri = L.index("r"), ti = L.index("t");
    for (const auto& [e, c] : res.terms()) {
        std::vector<int> k;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const int xe = e[L.index(ctx.x(i))];
            if (xe < 2) ok = false;
            k.push_back(xe - 2);
        }
        if (!ok || !want(k)) continue;
        out.terms[k][{e[ri], e[ti]}] += c;
    }
    // index tuples with an identically zero function still get an entry
    return out;
}

}  // namespace

VertexCoefficients h_tilde_npoint(int n, int K)
{
    if (K < 0) throw std::invalid_argument("h_tilde_npoint needs K >= 0");
    if (n == 1) {
        const int X = K + 2;
        VertexContext ctx(1, 2, -1, 3, {X});
        const VertexSeries g = g_series(ctx, 0);
        VertexSeries P = sqrt_factor(ctx, 0, g) * d_factor(ctx, 0, g);
        P = P * e_rest(ctx, 0, g);
        P = P * v_plus(ctx, 0, g);
        VertexSeries res = residue_with_exp(ctx, P, 0).shifted("t", -1);
        VertexCoefficients out = collect(ctx, res, 1, [&](const std::vector<int>& k) { return k[0] <= K; });
        for (int k = 0; k <= K; ++k) out.terms[{k}];
        return out;
    }
    if (n == 2) {
        const int X = K + 2;
        VertexContext ctx(2, 0, -3, 4, {X, X}, K + 4);
        const VertexSeries g0 = g_series(ctx, 0), g1 = g_series(ctx, 1);
        VertexSeries P = btilde_over_r2(ctx, 0, 1, g0, g1);
        P = P * d_factor(ctx, 0, g0) * d_factor(ctx, 1, g1);
        P = P * v_plus(ctx, 0, g0);
        P = P * v_plus(ctx, 1, g1);
        VertexSeries res = residue_with_exp(ctx, residue_with_exp(ctx, P, 1), 0).shifted("t", -3);
        VertexCoefficients out = collect(ctx, res, 2, [&](const std::vector<int>& k) { return k[0] + k[1] <= K; });
        for (int a = 0; a <= K; ++a)
            for (int b = 0; a + b <= K; ++b) out.terms[{a, b}];
        return out;
    }
    if (n == 3) {
        const int X = K + 2;
        VertexContext ctx(3, 0, -5, 5, {X, X, X});
        const VertexSeries g0 = g_series(ctx, 0), g1 = g_series(ctx, 1), g2 = g_series(ctx, 2);
        const VertexSeries b01 = btilde_over_r2(ctx, 0, 1, g0, g1);
        const VertexSeries b12 = btilde_over_r2(ctx, 1, 2, g1, g2);
        const VertexSeries b02 = btilde_over_r2(ctx, 0, 2, g0, g2);
        VertexSeries P = b01 * b12 + b01 * b02 + b12 * b02;
        P = P * d_factor(ctx, 0, g0) * d_factor(ctx, 1, g1) * d_factor(ctx, 2, g2);
        for (int i = 0; i < 3; ++i) P = P * v_plus(ctx, i, i == 0 ? g0 : i == 1 ? g1 : g2);
        VertexSeries res = P;
        for (int i = 2; i >= 0; --i) res = residue_with_exp(ctx, res, i);
        res = res.shifted("t", -5);
        VertexCoefficients out = collect(ctx, res, 3, [&](const std::vector<int>& k) {
            return k[0] <= K && k[1] <= K && k[2] <= K;
        });
        for (int a = 0; a <= K; ++a)
            for (int b = 0; b <= K; ++b)
                for (int c = 0; c <= K; ++c) out.terms[{a, b, c}];
        return out;
    }
    throw std::invalid_argument("h_tilde_npoint supports n = 1, 2, 3");
}

std::map<int, APoly> vertex_strata(int n, const std::map<std::pair<int, int>, HeisPoly>& by_rt)
{
    std::map<int, APoly> out;
    for (const auto& [rt, p] : by_rt) {
        const auto [rp, j] = rt;
        if (rp != 0) continue;
        const WScalar scale = WScalar::w_pow(-j - (n - 1), (j + n - 1) % 2 ? -1 : 1);
        for (const auto& [m, c] : p.terms()) {
            WScalar& slot = out[j][m];
            slot += scale * WScalar(c);
            if (slot.is_zero()) out[j].erase(m);
        }
        if (out[j].empty()) out.erase(j);
    }
    return out;
}

namespace {

std::string tuple_str(const std::vector<int>& k)
{
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

std::string strata_str(const std::map<int, APoly>& s)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, p] : s) {
        for (const auto& [m, c] : p) {
            os << (first ? "" : " + ") << "(" << c.str() << ")";
            for (int a : m) os << "*a" << a;
            os << "[c1^" << j << "]";
            first = false;
        }
    }
    return first ? "0" : os.str();
}

void verify_family(int n, int K, VertexReport& rep)
{
    const VertexCoefficients vc = h_tilde_npoint(n, K);
    for (const auto& [k, by_rt] : vc.terms) {
        ++rep.checked;
        for (const auto& [rt, p] : by_rt) {
            if (p.is_zero()) continue;
            const auto [rp, j] = rt;
            if (j < 0 || (rp == 1) || (rp == 2 && j == 0))
                rep.mismatches.push_back(std::to_string(n) + "-point " + tuple_str(k) + ": nonzero r^" +
                                         std::to_string(rp) + " t^" + std::to_string(j) + " coefficient " + p.str());
        }
        auto got = vertex_strata(n, by_rt);
        const auto want = c_circ_strata(k);
        // all k_i = 0 forces every gamma_i into H^{>=4}, so the product class vanishes
        if (n >= 2 && std::all_of(k.begin(), k.end(), [](int ki) { return ki == 0; })) {
            for (auto& [j, poly] : got) poly.erase(std::vector<int>{});
            std::erase_if(got, [](const auto& e) { return e.second.empty(); });
        }
        if (got != want)
            rep.mismatches.push_back(std::to_string(n) + "-point " + tuple_str(k) + ": vertex " + strata_str(got) +
                                     " vs c_circ " + strata_str(want));
    }
}

}  // namespace

VertexReport vertex_verify(int K1, int K2, int K3)
{
    VertexReport rep;
    if (K1 >= 0) verify_family(1, K1, rep);
    if (K2 >= 0) verify_family(2, K2, rep);
    if (K3 >= 0) verify_family(3, K3, rep);
    return rep;
}

bool one_point_even_in_r(int K)
{
    for (const auto& [k, by_rt] : h_tilde_npoint(1, K).terms)
        for (const auto& [rt, p] : by_rt)
            if (rt.first % 2 && !p.is_zero()) return false;
    return true;
}

}  // namespace gwpt
