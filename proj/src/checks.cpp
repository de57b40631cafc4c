#include "gwpt/checks.hpp"

#include "gwpt/expr.hpp"
#include "gwpt/hilbert_surface.hpp"
#include "gwpt/vertex.hpp"

#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace gwpt {

unsigned worker_count(unsigned requested)
{
    if (requested) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

CheckContext default_context(const std::string& table_path)
{
    CheckContext c;
    c.p3 = make_p3();
    c.beta = p3_line(c.p3);
    c.table = load_table(table_path.empty() ? default_table_path() : table_path);
    return c;
}

namespace {

using Clock = std::chrono::steady_clock;

CheckResult make(const std::string& id, const std::string& name)
{
    CheckResult r;
    r.id = id;
    r.name = name;
    return r;
}

QRational q_var()
{
    return QRational::var();
}

QRational qpoly(const std::vector<long>& c)
{
    return QRational::from_integer_coeffs(c, {1});
}

// compares one bracket value against its printed form
void expect_series(CheckResult& r, const std::string& label, const QRational& got, const QRational& want)
{
    if (got != want) r.failures.push_back({label, "computed " + got.str() + ", printed " + want.str() + ", difference " + (got - want).str()});
}

// ---- 1

CheckResult criterion1(const CheckContext& c)
{
    CheckResult r = make("1", "constant term T_2 on P3");
    const PtElement T = normalize_low_degree(build_Tk(c.p3, 2, TConvention::calligraphic));
    const PtElement want = parse_pt("-8*ch(4,H) + 8*ch(2,H)*ch(2,p) - 2*ch(2,L)^2 - 4*ch(2,p)", c.p3);
    if (!(T == want)) r.failures.push_back({"T_2", "computed - printed = " + (T - want).str()});
    r.summary = "T_2 = " + T.str();
    return r;
}

// ---- 2, 3

CheckResult criterion2(const CheckContext& c)
{
    CheckResult r = make("2", "worked relation: k = 2, D = ch_3(H) ch_2(L)");
    const RingPtr& R = c.p3;
    const QRational q = q_var();
    auto br = [&](const std::string& s) { return evaluate_bracket(parse_pt(s, R), c.table, c.beta); };
    const PtElement D = parse_pt("ch(3,H)*ch(2,L)", R);

    const QRational s1 = br("-8*ch(4,H)*ch(3,H)*ch(2,L)");
    const QRational s2 = br("10*ch(2,p)*ch(3,H)*ch(2,L)");
    const QRational s3 = br("-2*ch(2,L)^2*ch(3,H)*ch(2,L)");
    const QRational s4 = br("6*ch(3,H)*ch(4,L)");
    const QRational s5 = br("6*ch(5,H)*ch(2,L)");
    const QRational s6 = evaluate_bracket(parse_pt("6*ch(3,p)", R) * apply_Rk(-1, D), c.table, c.beta);
    const QRational q2m1 = q * q - QRational(1);
    expect_series(r, "-8<ch4(H)ch3(H)ch2(L)>", s1, QRational(-8) * q * (q - 1) * qpoly({3, 1, 3}) / (q + 1));
    expect_series(r, "10<ch2(p)ch3(H)ch2(L)>", s2, QRational(15) * q * q2m1);
    expect_series(r, "-2<ch2(L)^2ch3(H)ch2(L)>", s3, QRational(-6) * q * q2m1);
    expect_series(r, "6<ch3(H)ch4(L)>", s4, QRational(15) * q * (q - 1).pow(3) / (QRational(2) * (q + 1)));
    expect_series(r, "6<ch5(H)ch2(L)>", s5, q * (q - 1) * qpoly({9, -2, 9}) / (QRational(2) * (q + 1)));
    expect_series(r, "6<ch3(p)R_-1(D)>", s6, QRational(3) * q * q2m1);

    const PtElement r2 = apply_Rk(2, D);
    const PtElement r2_printed = parse_pt("6*ch(3,H)*ch(4,L) + 6*ch(5,H)*ch(2,L)", R);
    if (!(r2 == r2_printed)) r.failures.push_back({"R_2(D)", "computed - printed = " + (r2 - r2_printed).str()});

    expect_series(r, "pole-cancelling subtotal", s1 + s4 + s5, QRational(-12) * q * q2m1);
    expect_series(r, "sum of the six terms", s1 + s2 + s3 + s4 + s5 + s6, QRational(0));
    const QRational total = verify_virasoro_relation(2, D, c.table, c.beta);
    expect_series(r, "<Lcal_2(D)>", total, QRational(0));
    r.summary = "six terms, subtotal " + (s1 + s4 + s5).str() + ", total " + total.str();
    return r;
}

CheckResult criterion3(const CheckContext& c)
{
    CheckResult r = make("3", "worked relation: k = 2, D = ch_5(1)");
    const RingPtr& R = c.p3;
    const QRational q = q_var();
    auto br = [&](const std::string& s) { return evaluate_bracket(parse_pt(s, R), c.table, c.beta); };
    const QRational s1 = br("-8*ch(4,H)*ch(5,one)");
    const QRational s2 = br("10*ch(2,p)*ch(5,one)");
    const QRational s3 = br("-2*ch(2,L)^2*ch(5,one)");
    const QRational s4 = br("24*ch(7,one)");
    const QRational s5 = br("6*ch(3,p)*ch(4,one)");
    const QRational base = q * (q - 1) * (q + 1);
    expect_series(r, "-8<ch4(H)ch5(1)>", s1,
                  -q * (q - 1) * qpoly({33, 112, 38, 112, 33}) / (QRational(3) * (q + 1).pow(3)));
    expect_series(r, "10<ch2(p)ch5(1)>", s2, QRational(Rational(15, 2)) * base);
    expect_series(r, "-2<ch2(L)^2ch5(1)>", s3, QRational(Rational(-8, 3)) * base);
    expect_series(r, "24<ch7(1)>", s4, QRational(4) * q * (q - 1) * qpoly({2, 3, -28, 3, 2}) / (QRational(3) * (q + 1).pow(3)));
    expect_series(r, "6<ch3(p)ch4(1)>", s5, QRational(Rational(7, 2)) * base);
    expect_series(r, "pole-cancelling subtotal", s1 + s4, QRational(Rational(-25, 3)) * base);
    expect_series(r, "sum of the five terms", s1 + s2 + s3 + s4 + s5, QRational(0));
    const QRational total = verify_virasoro_relation(2, parse_pt("ch(5,one)", R), c.table, c.beta);
    expect_series(r, "<Lcal_2(D)>", total, QRational(0));
    r.summary = "five terms, subtotal " + (s1 + s4).str() + ", total " + total.str();
    return r;
}

// ---- 4, 13

QRational evaluate_normalized(const PtElement& N, const SeriesTable& table)
{
    QRational sum;
    for (const auto& [m, cf] : N.terms()) sum += table.rows.at(*key_of(N.ring(), m)) * QRational(cf);
    return sum;
}

bool covered(const PtElement& N, const SeriesTable& table)
{
    for (const auto& [m, cf] : N.terms()) {
        auto k = key_of(N.ring(), m);
        if (!k || !table.rows.count(*k)) return false;
    }
    return true;
}

void sub_monomials(const PtMonomial& m, size_t i, PtMonomial& cur, std::set<PtMonomial>& out)
{
    if (i == m.size()) {
        out.insert(cur);
        return;
    }
    size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    for (size_t take = 0; take <= j - i; ++take) {
        for (size_t t = 0; t < take; ++t) cur.push_back(m[i]);
        sub_monomials(m, j, cur, out);
        cur.resize(cur.size() - take);
    }
}

CheckResult criterion4(const CheckContext& c)
{
    CheckResult r = virasoro_sweep(c);
    r.id = "4";
    return r;
}

CheckResult criterion13(const CheckContext& c)
{
    CheckResult r = make("13", "data integrity");
    const std::string path = c.table.source;
    if (!path.empty() && path != "<memory>" && !checksum_matches(path))
        r.failures.push_back({path, "SHA-256 " + file_sha256(path) + " does not match the .sha256 sidecar"});
    int symmetric = 0;
    for (const auto& rec : functional_symmetry_scan(c.table)) {
        if (rec.eps_a) ++symmetric;
        else r.failures.push_back({rec.key.str(), "no (eps, a) with f(1/q) = eps q^-a f(q): " + c.table.rows.at(rec.key).str()});
    }
    // every row must enter some identity of the sweep: perturbing it then breaks that identity
    const auto ids = virasoro_identities(c);
    std::map<SeriesKey, int> caught;
    for (const auto& [key, f] : c.table.rows) {
        SeriesTable mutated = c.table;
        mutated.rows[key] = f + QRational::var();
        for (const auto& id : ids)
            if (!evaluate_normalized(id.normalized, mutated).is_zero()) ++caught[key];
        if (!caught[key]) r.failures.push_back({key.str(), "a perturbed value of this row is not detected by the Virasoro sweep"});
    }
    r.summary = std::to_string(symmetric) + "/" + std::to_string(c.table.rows.size()) + " rows with a functional symmetry; " +
                std::to_string(std::count_if(caught.begin(), caught.end(), [](const auto& e) { return e.second > 0; })) +
                " rows covered by the sweep";
    return r;
}

// ---- 5, 6

CheckResult criterion5(const CheckContext& c)
{
    CheckResult r = intertwine_sweep(c, {1, 2, 3, 4}, intertwine_grid(c.p3));
    r.id = "5";
    r.name = "intertwining, k = 1..4";
    return r;
}

CheckResult criterion6(const CheckContext& c)
{
    const auto grid = intertwine_grid(c.p3);
    CheckResult r = make("6", "intertwining, k = -1, 0");
    for (int k : {-1, 0}) {
        CheckResult p = intertwine_sweep(c, {k}, grid);
        p.id = "6" + std::string(k < 0 ? "a" : "b");
        p.name = "k = " + std::to_string(k);
        r.parts.push_back(std::move(p));
    }
    return r;
}

// ---- 7

CheckResult criterion7(const CheckContext& c)
{
    CheckResult r = make("7", "T'_k: tau expansion against the compact a-form");
    int passed = 0;
    for (int k = -1; k <= 6; ++k) {
        const GwElement lhs = restrict_negatives(tau_to_a(build_Tprime_tau(c.p3, k), A1Shift::none), RestrictMode::vacuum);
        const GwElement rhs = restrict_negatives(build_Tprime_compact(c.p3, k), RestrictMode::vacuum);
        const GwElement d = lhs - rhs;
        if (d.is_zero()) ++passed;
        else r.failures.push_back({"k = " + std::to_string(k), "tau form - compact form = " + d.str()});
    }
    r.summary = std::to_string(passed) + "/8 values of k agree";
    return r;
}

// ---- 8

CheckResult criterion8(const CheckContext&)
{
    CheckResult r = make("8", "vertex engine");
    CheckResult a = make("8a", "constraint solution against the printed w(x, y)");
    CheckResult b = make("8b", "E, D, sqrt(dw dy), power-diff, B against the printed expansions");
    int na = 0, nb = 0;
    for (const auto& fc : check_printed_expansions()) {
        const bool is_w = fc.name.rfind("w(", 0) == 0 || fc.name.rfind("constraint", 0) == 0;
        CheckResult& dst = is_w ? a : b;
        ++(is_w ? na : nb);
        if (!fc.ok) dst.failures.push_back({fc.name + " r^" + std::to_string(fc.r_order), fc.detail});
    }
    a.summary = std::to_string(na - static_cast<int>(a.failures.size())) + "/" + std::to_string(na) + " coefficients match";
    b.summary = std::to_string(nb - static_cast<int>(b.failures.size())) + "/" + std::to_string(nb) + " coefficients match";

    CheckResult cc = make("8c", "vertex_verify: 1-point k <= 6, 2-point k1 + k2 <= 6, 3-point k_i <= 3");
    const VertexReport rep = vertex_verify(6, 6, 3);
    for (const auto& m : rep.mismatches) cc.failures.push_back({"vertex", m});
    cc.summary = std::to_string(rep.checked) + " index tuples checked";

    CheckResult d = make("8d", "1-point series only has even powers of r");
    if (!one_point_even_in_r(6)) d.failures.push_back({"1-point, k <= 6", "odd power of r present"});
    d.summary = "k <= 6";

    for (auto* p : {&a, &b, &cc, &d}) r.parts.push_back(std::move(*p));
    return r;
}

// ---- 9

PtElement random_essential(std::mt19937& rng, const RingPtr& R)
{
    std::vector<PtGen> gens;
    for (const char* lab : {"H", "L", "p"})
        for (int i = 2; i <= 7; ++i) {
            PtGen g{i, static_cast<int>(R->index(lab))};
            if (is_essential_gen(R, g)) gens.push_back(g);
        }
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, 3), terms(1, 2), num(-5, 5), den(1, 4);
    PtElement D(R, PtBasis::tch);
    while (D.is_zero()) {
        for (int t = terms(rng); t > 0; --t) {
            PtElement m = PtElement::one(R, PtBasis::tch);
            for (int l = len(rng); l > 0; --l) {
                const PtGen& g = gens[pick(rng)];
                m = m * PtElement::basis_gen(R, PtBasis::tch, g.k, g.b);
            }
            Rational q(num(rng), den(rng));
            q.canonicalize();
            D += m * q;
        }
    }
    return D;
}

CheckResult criterion9(const CheckContext& c)
{
    CheckResult r = make("9", "point factorization");
    std::mt19937 rng(90210);
    std::vector<PtElement> Ds;
    for (int i = 0; i < 20; ++i) Ds.push_back(random_essential(rng, c.p3));
    const RingPtr& R = c.p3;
    const auto res = parallel_map<std::optional<Failure>>(6 * Ds.size(), c.threads, [&](size_t idx) -> std::optional<Failure> {
        const int k = static_cast<int>(idx / Ds.size());
        const PtElement& D = Ds[idx % Ds.size()];
        const GwElement lhs = c_bullet(PtElement::basis_gen(R, PtBasis::tch, k + 2, R->point_index()) * D);
        const GwElement rhs = GwElement::tau(k, R->point()) * c_bullet(D) * WScalar::w_pow(-k);
        const GwElement d = lhs - rhs;
        if (d.is_zero()) return std::nullopt;
        return Failure{"k = " + std::to_string(k) + ", D = " + D.str(), d.str()};
    });
    for (const auto& f : res)
        if (f) r.failures.push_back(*f);
    r.summary = std::to_string(res.size()) + " cases, k = 0..5, 20 random essential D";
    return r;
}

// ---- 10

CheckResult criterion10(const CheckContext& c)
{
    CheckResult r = make("10", "GW prediction for ch_5(L)");
    const RingPtr& R = c.p3;
    const GwElement g = c_bullet(parse_pt("ch(5,L)", R));
    const GwMonomial m3{GwGen{GwKind::tau, 3, static_cast<int>(R->index("L"))}};
    const GwMonomial m2{GwGen{GwKind::tau, 2, static_cast<int>(R->point_index())}};
    const GwGen t0p{GwKind::tau, 0, static_cast<int>(R->point_index())};
    const GwMonomial m0{t0p, t0p};
    const WScalar c3 = g.coeff(m3), c2 = g.coeff(m2), c0 = g.coeff(m0);
    auto power_ok = [](const WScalar& s, int e) { return s.is_monomial() && s.min_exponent() == e; };
    if (!power_ok(c3, -3) || !power_ok(c2, -3) || !power_ok(c0, -1)) {
        r.failures.push_back({"(iu) powers", "tau_3(L): " + c3.str() + ", tau_2(p): " + c2.str() + ", tau_0(p)^2: " + c0.str()});
    } else {
        // (iu)^-3 = i u^-3 and (iu)^-1 = -i u^-1
        const Rational a3 = c3.coeff(-3), a2 = c2.coeff(-3), a0 = -c0.coeff(-1);
        const Rational r2 = a2 / a3, r0 = a0 / a3;
        if (r2 != Rational(22, 3) || r0 != Rational(-1, 3))
            r.failures.push_back({"u-coefficient ratios", "1 : " + to_string(r2) + " : " + to_string(r0) + ", printed 1 : 22/3 : -1/3"});
    }
    GwElement rest = g;
    for (const auto& m : {m3, m2, m0}) rest.add_term(m, -g.coeff(m));
    if (!rest.is_zero()) r.failures.push_back({"other terms", rest.str()});
    r.summary = "C.(ch_5(L)) = " + g.str();
    return r;
}

// ---- 11

CheckResult criterion11(const CheckContext& c)
{
    CheckResult r = make("11", "Hilbert-scheme composition on P2 and P1xP1");
    std::vector<std::pair<RingPtr, int>> jobs;
    for (const RingPtr& S : {make_p2(), make_p1xp1()})
        for (int k = -1; k <= 3; ++k) jobs.emplace_back(S, k);
    const auto reps = parallel_map<CompositionReport>(jobs.size(), c.threads,
                                                      [&](size_t i) { return composition_check(jobs[i].second, jobs[i].first, 2, 8); });
    int checked = 0;
    for (size_t i = 0; i < jobs.size(); ++i) {
        checked += reps[i].checked;
        for (const auto& m : reps[i].mismatches)
            r.failures.push_back({jobs[i].first->name() + ", k = " + std::to_string(jobs[i].second) + ", D = " + m.input.str(),
                                  "lhs - rhs = " + (m.lhs - m.rhs).str()});
    }
    r.summary = std::to_string(checked) + " monomials checked";
    return r;
}

// ---- 12

GwElement random_gw(std::mt19937& rng, const RingPtr& R, GwKind kind)
{
    const std::vector<int> classes{static_cast<int>(R->index("H")), static_cast<int>(R->index("L")),
                                   static_cast<int>(R->point_index())};
    std::uniform_int_distribution<int> level(kind == GwKind::tau ? 0 : 1, kind == GwKind::tau ? 5 : 6), cls(0, 2),
        len(1, 3), terms(1, 3), wexp(-3, 3), num(-6, 6), den(1, 3);
    GwElement e(R);
    for (int t = terms(rng); t > 0; --t) {
        GwElement m = GwElement::one(R);
        for (int l = len(rng); l > 0; --l) m = m * GwElement::gen(R, GwGen{kind, level(rng), classes[cls(rng)]});
        Rational q(num(rng), den(rng));
        q.canonicalize();
        e += m * WScalar::w_pow(wexp(rng), q);
    }
    return e;
}

CheckResult criterion12(const CheckContext& c)
{
    CheckResult r = make("12", "tau <-> a dictionary");
    const RingPtr& R = c.p3;
    // prefactor of a_n and the tau coefficients of the n-th row
    const std::vector<std::pair<WScalar, std::vector<int>>> rows{
        {WScalar(1), {1}},
        {WScalar::w_pow(1, Rational(1, 2)), {1, 1}},
        {WScalar::w_pow(2, Rational(1, 3)), {2, 3, 1}},
        {WScalar::w_pow(3, Rational(1, 4)), {6, 11, 6, 1}},
        {WScalar::w_pow(4, Rational(1, 5)), {24, 50, 35, 10, 1}},
    };
    const CohClass c1 = R->c1();
    for (const char* lab : {"H", "L", "p"}) {
        const CohClass g = (*R)(lab);
        for (size_t n = 1; n <= rows.size(); ++n) {
            const auto& [pre, co] = rows[n - 1];
            GwElement want(R);
            for (size_t j = 0; j < co.size(); ++j)
                want += GwElement::tau(static_cast<int>(n - 1 - j), g * c1.pow(static_cast<int>(j))) * WScalar(co[j]);
            if (n == 1) want += GwElement::constant(R, WScalar(-(g * R->c2()).integral() / 24));
            const GwElement got = a_to_tau(GwElement::a(static_cast<int>(n), g) * pre, A1Shift::todd);
            if (!(got == want))
                r.failures.push_back({"row " + std::to_string(n) + ", gamma = " + lab, "computed - printed = " + (got - want).str()});
        }
    }
    std::mt19937 rng(4242);
    int trips = 0;
    for (int i = 0; i < 100; ++i) {
        for (GwKind kind : {GwKind::tau, GwKind::a}) {
            const GwElement x = random_gw(rng, R, kind);
            const GwElement back = kind == GwKind::tau ? a_to_tau(tau_to_a(x)) : tau_to_a(a_to_tau(x));
            ++trips;
            if (!(back == x)) r.failures.push_back({x.str(), "round trip - input = " + (back - x).str()});
        }
    }
    r.summary = "5 rows x 3 classes, " + std::to_string(trips) + " round trips";
    return r;
}

}  // namespace

// ---- shared sweeps

std::vector<PtElement> intertwine_grid(const RingPtr& R)
{
    std::vector<PtElement> grid{PtElement::one(R, PtBasis::tch)};
    std::vector<PtGen> gens;
    for (const char* lab : {"H", "L", "p"})
        for (int i = 2; i <= 8; ++i) {
            PtGen g{i, static_cast<int>(R->index(lab))};
            if (is_essential_gen(R, g)) gens.push_back(g);
        }
    auto el = [&](const PtGen& g) { return PtElement::basis_gen(R, PtBasis::tch, g.k, g.b); };
    for (const auto& g : gens) grid.push_back(el(g));
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i; j < gens.size(); ++j) {
            const PtGen &g = gens[i], &h = gens[j];
            if (g.k + h.k > 10 || (R->basis(g.b) * R->basis(h.b)).is_zero()) continue;
            grid.push_back(el(g) * el(h));
        }
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i; j < gens.size(); ++j)
            for (size_t l = j; l < gens.size(); ++l) {
                const PtGen &g = gens[i], &h = gens[j], &f = gens[l];
                if (g.k > 5 || h.k > 5 || f.k > 5) continue;
                const CohClass prod = R->basis(g.b) * R->basis(h.b) * R->basis(f.b);
                if (prod.is_zero() || prod.degree() != R->top_degree()) continue;
                grid.push_back(el(g) * el(h) * el(f));
            }
    return grid;
}

CheckResult intertwine_sweep(const CheckContext& c, const std::vector<int>& ks, const std::vector<PtElement>& grid)
{
    CheckResult r = make("", "intertwining");
    const auto res = parallel_map<std::optional<Failure>>(ks.size() * grid.size(), c.threads, [&](size_t idx) -> std::optional<Failure> {
        const int k = ks[idx / grid.size()];
        const PtElement& D = grid[idx % grid.size()];
        const IntertwineResult ir = intertwine_check(k, D);
        if (ir.ok) return std::nullopt;
        return Failure{"k = " + std::to_string(k) + ", D = " + D.str(), ir.difference.str()};
    });
    for (const auto& f : res)
        if (f) r.failures.push_back(*f);
    r.summary = std::to_string(res.size() - r.failures.size()) + "/" + std::to_string(res.size()) + " (k, D) pairs with zero difference";
    return r;
}

std::vector<VirasoroIdentity> virasoro_identities(const CheckContext& c)
{
    const RingPtr& R = c.p3;
    std::set<PtMonomial> monos;
    for (const auto& [key, f] : c.table.rows) {
        const PtElement e = key_element(R, key);
        PtMonomial cur;
        sub_monomials(e.terms().begin()->first, 0, cur, monos);
    }
    std::vector<std::pair<int, PtMonomial>> jobs;
    for (int k = -1; k <= 2; ++k)
        for (const auto& m : monos) jobs.emplace_back(k, m);
    const auto res = parallel_map<std::optional<VirasoroIdentity>>(jobs.size(), c.threads, [&](size_t i) -> std::optional<VirasoroIdentity> {
        const auto& [k, m] = jobs[i];
        PtElement D(R, PtBasis::ch);
        D.add_term(m, 1);
        const PtElement N = bracket_normalize(apply_virasoro(k, D, VirasoroKind::Lcal), c.beta);
        if (N.is_zero() || !covered(N, c.table)) return std::nullopt;
        return VirasoroIdentity{k, D, N};
    });
    std::vector<VirasoroIdentity> out;
    for (const auto& v : res)
        if (v) out.push_back(*v);
    return out;
}

CheckResult virasoro_sweep(const CheckContext& c)
{
    CheckResult r = make("", "Virasoro sweep over the bundled table");
    const auto ids = virasoro_identities(c);
    std::map<int, int> per_k;
    for (const auto& id : ids) {
        ++per_k[id.k];
        const QRational v = evaluate_normalized(id.normalized, c.table);
        if (!v.is_zero()) r.failures.push_back({"k = " + std::to_string(id.k) + ", D = " + id.D.str(), "<Lcal_k(D)> = " + v.str()});
    }
    std::ostringstream s;
    s << ids.size() << " nontrivial identities (";
    bool first = true;
    for (const auto& [k, n] : per_k) {
        s << (first ? "" : ", ") << "k=" << k << ": " << n;
        first = false;
    }
    s << ")";
    if (ids.size() < 20) r.failures.push_back({"coverage", "only " + std::to_string(ids.size()) + " identities, at least 20 required"});
    r.summary = s.str();
    return r;
}

CheckResult run_criterion(int id, const CheckContext& c)
{
    static const std::vector<std::function<CheckResult(const CheckContext&)>> table{
        criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6, criterion7,
        criterion8, criterion9, criterion10, criterion11, criterion12, criterion13};
    if (id < 1 || id > kCriteria) throw std::out_of_range("no criterion " + std::to_string(id));
    const auto t0 = Clock::now();
    CheckResult r;
    try {
        r = table[static_cast<size_t>(id - 1)](c);
    } catch (const std::exception& e) {
        r = make(std::to_string(id), "criterion " + std::to_string(id));
        r.failures.push_back({"exception", e.what()});
    }
    r.ok = r.failures.empty();
    for (auto& p : r.parts) {
        p.ok = p.failures.empty();
        r.ok = r.ok && p.ok;
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

std::vector<CheckResult> run_criteria(const std::vector<int>& ids, const CheckContext& c)
{
    std::vector<CheckResult> out;
    for (int id : ids) out.push_back(run_criterion(id, c));
    return out;
}

bool all_ok(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.ok; });
}

namespace {

std::string clip(const std::string& s, size_t n)
{
    if (n == 0 || s.size() <= n) return s;
    return s.substr(0, n) + " ... (" + std::to_string(s.size()) + " chars)";
}

void text_of(std::ostringstream& os, const CheckResult& r, bool with_time, size_t max_detail, size_t max_failures,
             const std::string& indent)
{
    os << indent << (r.ok ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name;
    if (!r.summary.empty()) os << ": " << clip(r.summary, max_detail);
    if (with_time) os << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
    os << "\n";
    const size_t shown = max_failures ? std::min(max_failures, r.failures.size()) : r.failures.size();
    for (size_t i = 0; i < shown; ++i)
        os << indent << "      " << r.failures[i].item << ": " << clip(r.failures[i].difference, max_detail) << "\n";
    if (shown < r.failures.size()) os << indent << "      ... " << r.failures.size() - shown << " more\n";
    for (const auto& p : r.parts) text_of(os, p, false, max_detail, max_failures, indent + "  ");
}

nlohmann::ordered_json json_of(const CheckResult& r)
{
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["ok"] = r.ok;
    j["summary"] = r.summary;
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : r.failures) j["failures"].push_back({{"item", f.item}, {"difference", f.difference}});
    if (!r.parts.empty()) {
        j["parts"] = nlohmann::ordered_json::array();
        for (const auto& p : r.parts) j["parts"].push_back(json_of(p));
    }
    return j;
}

}  // namespace

std::string format_text(const std::vector<CheckResult>& results, bool with_time, size_t max_detail, size_t max_failures)
{
    std::ostringstream os;
    for (const auto& r : results) text_of(os, r, with_time, max_detail, max_failures, "");
    return os.str();
}

std::string format_json(const std::string& command, const std::vector<CheckResult>& results)
{
    nlohmann::ordered_json j;
    j["command"] = command;
    j["ok"] = all_ok(results);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : results) j["checks"].push_back(json_of(r));
    return j.dump(2) + "\n";
}

}  // namespace gwpt
