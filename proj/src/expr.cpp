#include "gwpt/expr.hpp"

#include <cctype>

namespace gwpt {

namespace {

class Parser {
public:
    Parser(const std::string& s, const RingPtr& ring) : s_(s), ring_(ring) {}

    Expr run()
    {
        Expr e = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(i_, msg); }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool accept(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr node(Expr::Kind k, size_t pos, std::vector<Expr> kids = {})
    {
        Expr e;
        e.kind = k;
        e.pos = pos;
        e.kids = std::move(kids);
        return e;
    }

    Expr expr()
    {
        skip();
        Expr lhs = term();
        for (;;) {
            skip();
            const size_t pos = i_;
            if (accept('+')) lhs = node(Expr::Kind::add, pos, {lhs, term()});
            else if (accept('-')) lhs = node(Expr::Kind::sub, pos, {lhs, term()});
            else return lhs;
        }
    }

    Expr term()
    {
        Expr lhs = factor();
        for (;;) {
            skip();
            const size_t pos = i_;
            if (!accept('*')) return lhs;
            lhs = node(Expr::Kind::mul, pos, {lhs, factor()});
        }
    }

    Expr factor()
    {
        skip();
        const size_t pos = i_;
        if (accept('-')) return node(Expr::Kind::neg, pos, {factor()});
        Expr base = atom();
        for (;;) {
            skip();
            const size_t p = i_;
            if (!accept('^')) return base;
            Expr e = node(Expr::Kind::pow, p, {base});
            e.exponent = integer();
            base = std::move(e);
        }
    }

    int integer()
    {
        skip();
        const size_t start = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
        const size_t digits = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == digits) fail("expected an integer");
        const std::string t = s_.substr(start, i_ - start);
        try {
            return std::stoi(t);
        } catch (const std::out_of_range&) {
            throw ParseError(start, "integer out of range");
        }
    }

    std::string word()
    {
        const size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
            ++i_;
        return s_.substr(start, i_ - start);
    }

    Expr atom()
    {
        skip();
        const size_t pos = i_;
        if (i_ >= s_.size()) fail("unexpected end of input");
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) return number();
        const std::string w = word();
        if (w.empty()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        if (w == "w") return node(Expr::Kind::unit_w, pos);
        Expr g = node(Expr::Kind::gen, pos);
        g.fn = w;
        if (w == "fch1" || w == "fch0") return g;
        if (w != "ch" && w != "tch" && w != "tau" && w != "a") throw ParseError(pos, "unknown symbol '" + w + "'");
        expect('(');
        skip();
        const size_t ipos = i_;
        g.index = integer();
        const int lowest = w == "tau" ? -2 : w == "a" ? -1 : 0;
        if (g.index < lowest) throw ParseError(ipos, "negative index not allowed in " + w);
        expect(',');
        skip();
        const size_t lpos = i_;
        const std::string label = word();
        if (label.empty()) fail("expected a class label");
        auto idx = ring_->find(label);
        if (!idx) throw ParseError(lpos, "unknown class label '" + label + "'");
        g.class_index = static_cast<int>(*idx);
        expect(')');
        return g;
    }

    Expr number()
    {
        const size_t pos = i_;
        const size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string t = s_.substr(start, i_ - start);
        if (i_ < s_.size() && s_[i_] == '/' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
            ++i_;
            const size_t d = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            t += "/" + s_.substr(d, i_ - d);
        }
        Expr e = node(Expr::Kind::number, pos);
        e.value = Rational(t);
        if (e.value.get_den() == 0) throw ParseError(pos, "zero denominator");
        e.value.canonicalize();
        return e;
    }

    const std::string& s_;
    RingPtr ring_;
    size_t i_ = 0;
};

bool only_tch(const Expr& e)
{
    if (e.kind == Expr::Kind::gen) return e.fn != "ch";
    for (const auto& k : e.kids)
        if (!only_tch(k)) return false;
    return true;
}

class Evaluator {
public:
    Evaluator(const RingPtr& ring, PtBasis basis) : ring_(ring), basis_(basis) {}

    ExprValue eval(const Expr& e)
    {
        switch (e.kind) {
        case Expr::Kind::number: return WScalar(e.value);
        case Expr::Kind::unit_w: return WScalar::w_pow(1);
        case Expr::Kind::gen: return gen(e);
        case Expr::Kind::neg: return mul(WScalar(-1), eval(e.kids[0]), e.pos);
        case Expr::Kind::add: return add(eval(e.kids[0]), eval(e.kids[1]), 1, e.pos);
        case Expr::Kind::sub: return add(eval(e.kids[0]), eval(e.kids[1]), -1, e.pos);
        case Expr::Kind::mul: return mul(eval(e.kids[0]), eval(e.kids[1]), e.pos);
        case Expr::Kind::pow: return power(eval(e.kids[0]), e.exponent, e.pos);
        }
        throw ParseError(e.pos, "bad expression node");
    }

private:
    ExprValue gen(const Expr& e)
    {
        if (e.fn == "fch1") return PtElement::fch1(ring_, basis_);
        if (e.fn == "fch0") return PtElement::fch0(ring_, basis_);
        const CohClass gamma = ring_->basis(static_cast<size_t>(e.class_index));
        if (e.fn == "tau") return GwElement::tau(e.index, gamma);
        if (e.fn == "a") return GwElement::a(e.index, gamma);
        const PtBasis b = e.fn == "ch" ? PtBasis::ch : PtBasis::tch;
        return in_basis(PtElement::gen(b, e.index, gamma), basis_);
    }

    static std::optional<Rational> rational_of(const WScalar& s)
    {
        if (s.is_zero()) return Rational(0);
        if (s.is_monomial() && s.min_exponent() == 0) return s.coeff(0);
        return std::nullopt;
    }

    ExprValue promote(const WScalar& s, const ExprValue& like, size_t pos)
    {
        if (std::holds_alternative<GwElement>(like)) return GwElement::constant(ring_, s);
        auto q = rational_of(s);
        if (!q) throw ParseError(pos, "powers of w cannot multiply PT descendents");
        return PtElement::constant(ring_, *q, basis_);
    }

    ExprValue add(const ExprValue& a, const ExprValue& b, int sign, size_t pos)
    {
        if (a.index() == b.index()) {
            return std::visit(
                [&](const auto& x) -> ExprValue {
                    using T = std::decay_t<decltype(x)>;
                    const T& y = std::get<T>(b);
                    return sign > 0 ? T(x + y) : T(x - y);
                },
                a);
        }
        if (std::holds_alternative<WScalar>(a)) return add(promote(std::get<WScalar>(a), b, pos), b, sign, pos);
        if (std::holds_alternative<WScalar>(b)) return add(a, promote(std::get<WScalar>(b), a, pos), sign, pos);
        throw ParseError(pos, "cannot mix PT and GW descendents");
    }

    ExprValue mul(const ExprValue& a, const ExprValue& b, size_t pos)
    {
        if (a.index() == b.index()) {
            return std::visit(
                [&](const auto& x) -> ExprValue {
                    using T = std::decay_t<decltype(x)>;
                    return T(x * std::get<T>(b));
                },
                a);
        }
        if (std::holds_alternative<WScalar>(a)) return mul(promote(std::get<WScalar>(a), b, pos), b, pos);
        if (std::holds_alternative<WScalar>(b)) return mul(a, promote(std::get<WScalar>(b), a, pos), pos);
        throw ParseError(pos, "cannot mix PT and GW descendents");
    }

    ExprValue power(const ExprValue& a, int n, size_t pos)
    {
        if (const auto* s = std::get_if<WScalar>(&a)) {
            if (n < 0 && !s->is_monomial()) throw ParseError(pos, "negative power of a non-monomial");
            return s->pow(n);
        }
        if (n < 0) throw ParseError(pos, "negative power of a descendent");
        ExprValue r = promote(WScalar(1), a, pos);
        for (int i = 0; i < n; ++i) r = mul(r, a, pos);
        return r;
    }

    RingPtr ring_;
    PtBasis basis_;
};

}  // namespace

Expr parse_expression(const std::string& text, const RingPtr& ring)
{
    return Parser(text, ring).run();
}

ExprValue evaluate(const Expr& e, const RingPtr& ring)
{
    return Evaluator(ring, only_tch(e) ? PtBasis::tch : PtBasis::ch).eval(e);
}

PtElement parse_pt(const std::string& text, const RingPtr& ring)
{
    ExprValue v = evaluate(parse_expression(text, ring), ring);
    if (auto* p = std::get_if<PtElement>(&v)) return *p;
    if (auto* s = std::get_if<WScalar>(&v)) {
        if (s->is_zero()) return PtElement(ring, PtBasis::ch);
        if (s->is_monomial() && s->min_exponent() == 0) return PtElement::constant(ring, s->coeff(0));
    }
    throw ParseError(0, "expected a PT descendent expression");
}

GwElement parse_gw(const std::string& text, const RingPtr& ring)
{
    ExprValue v = evaluate(parse_expression(text, ring), ring);
    if (auto* g = std::get_if<GwElement>(&v)) return *g;
    if (auto* s = std::get_if<WScalar>(&v)) return GwElement::constant(ring, *s);
    throw ParseError(0, "expected a GW descendent expression");
}

std::string format_value(const ExprValue& v)
{
    return std::visit([](const auto& x) { return x.str(); }, v);
}

std::string canonical(const std::string& text, const RingPtr& ring)
{
    return format_value(evaluate(parse_expression(text, ring), ring));
}

}  // namespace gwpt
