#pragma once

#include "gwpt/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gwpt {

// Sign attached to every residue at infinity, calibrated once against the
// k = 0 one-point vertex function.
inline constexpr int kResidueSign = -1;

struct SeriesVar {
    std::string name;
    int low = 0;    // Laurent variables may go negative; below low is an error
    int high = 0;   // exponents above high are dropped
    bool laurent = false;
};

// Drops terms whose weighted degree sum(weights[i] * e[i]) is below min.
// Used when the caller knows no later factor can lift such a term back into range.
struct SeriesCut {
    std::vector<int> weights;
    int min = 0;
};

class SeriesLayout {
public:
    explicit SeriesLayout(std::vector<SeriesVar> vars, std::vector<SeriesCut> cuts = {})
        : vars_(std::move(vars)), cuts_(std::move(cuts))
    {
        for (auto& c : cuts_)
            if (c.weights.size() != vars_.size()) throw std::invalid_argument("cut arity mismatch");
    }
    size_t size() const { return vars_.size(); }
    const SeriesVar& var(size_t i) const { return vars_[i]; }
    const std::vector<SeriesCut>& cuts() const { return cuts_; }
    size_t index(const std::string& name) const
    {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        throw std::invalid_argument("unknown series variable " + name);
    }
    // false: drop silently; throws on underflow of a window
    bool admit(const std::vector<int>& e) const
    {
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] > vars_[i].high) return false;
            if (e[i] < vars_[i].low)
                throw std::range_error("series exponent of " + vars_[i].name + " below window");
        }
        for (const auto& c : cuts_) {
            long s = 0;
            for (size_t i = 0; i < e.size(); ++i) s += static_cast<long>(c.weights[i]) * e[i];
            if (s < c.min) return false;
        }
        return true;
    }
    bool operator==(const SeriesLayout& o) const
    {
        if (vars_.size() != o.vars_.size()) return false;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name != o.vars_[i].name || vars_[i].low != o.vars_[i].low ||
                vars_[i].high != o.vars_[i].high || vars_[i].laurent != o.vars_[i].laurent)
                return false;
        return true;
    }

private:
    std::vector<SeriesVar> vars_;
    std::vector<SeriesCut> cuts_;
};

template <class C>
bool coeff_is_zero(const C& c)
{
    return c.is_zero();
}
template <>
inline bool coeff_is_zero<Rational>(const Rational& c)
{
    return c == 0;
}

// Truncated multivariate series with coefficients in a commutative ring C.
// C needs +=, -=, *, unary -, construction from Rational, and coeff_is_zero.
template <class C>
class TruncSeries {
public:
    using Exps = std::vector<int>;
    using LayoutPtr = std::shared_ptr<const SeriesLayout>;

    explicit TruncSeries(LayoutPtr layout) : layout_(std::move(layout)) {}

    static TruncSeries constant(LayoutPtr layout, const C& c)
    {
        TruncSeries s(layout);
        s.add_term(Exps(s.layout_->size(), 0), c);
        return s;
    }
    static TruncSeries monomial(LayoutPtr layout, const Exps& e, const C& c)
    {
        TruncSeries s(layout);
        s.add_term(e, c);
        return s;
    }
    static TruncSeries variable(LayoutPtr layout, const std::string& name, int power = 1)
    {
        Exps e(layout->size(), 0);
        e[layout->index(name)] = power;
        return monomial(layout, e, C(Rational(1)));
    }

    const LayoutPtr& layout() const { return layout_; }
    const std::map<Exps, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    C coeff(const Exps& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? C() : it->second;
    }

    void add_term(const Exps& e, const C& c)
    {
        if (coeff_is_zero(c)) return;
        if (!layout_->admit(e)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (coeff_is_zero(it->second)) terms_.erase(it);
    }

    TruncSeries& operator+=(const TruncSeries& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        a.check(b);
        TruncSeries r(a.layout_);
        const size_t n = a.layout_->size();
        Exps e(n);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                bool over = false;
                for (size_t i = 0; i < n; ++i) {
                    e[i] = ea[i] + eb[i];
                    if (e[i] > a.layout_->var(i).high) over = true;
                }
                if (over) continue;
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    TruncSeries scaled(const C& c) const
    {
        TruncSeries r(layout_);
        for (const auto& [e, v] : terms_) r.add_term(e, v * c);
        return r;
    }

    TruncSeries map_coeffs(const std::function<C(const Exps&, const C&)>& f) const
    {
        TruncSeries r(layout_);
        for (const auto& [e, v] : terms_) r.add_term(e, f(e, v));
        return r;
    }

    TruncSeries pow(int n) const
    {
        if (n < 0) throw std::domain_error("negative series power");
        TruncSeries r = constant(layout_, C(Rational(1)));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    // exp of a series whose terms all carry a positive power of some truncating variable
    TruncSeries exp() const
    {
        for (const auto& [e, c] : terms_) {
            bool nil = false;
            for (size_t i = 0; i < e.size(); ++i)
                if (!layout_->var(i).laurent && e[i] > 0) nil = true;
            if (!nil) throw std::domain_error("exp argument does not truncate");
        }
        int bound = 0;
        for (size_t i = 0; i < layout_->size(); ++i)
            if (!layout_->var(i).laurent) bound += layout_->var(i).high;
        TruncSeries r = constant(layout_, C(Rational(1)));
        TruncSeries p = r;
        for (int k = 1; k <= bound + 1; ++k) {
            p = p * *this;
            if (p.is_zero()) break;
            r += p.scaled(C(Rational(1, 1) / factorial(k)));
        }
        return r;
    }

    // replace variable name by s (same layout); negative exponents need a monomial s
    TruncSeries substitute(const std::string& name, const TruncSeries& s) const
    {
        check(s);
        size_t vi = layout_->index(name);
        std::map<int, TruncSeries> powers;
        TruncSeries r(layout_);
        for (const auto& [e, c] : terms_) {
            int k = e[vi];
            auto it = powers.find(k);
            if (it == powers.end()) {
                if (k < 0) {
                    if (s.size() != 1) throw std::domain_error("negative substitution power");
                    const auto& [se, sc] = *s.terms_.begin();
                    if (!coeff_is_zero<C>(sc - C(Rational(1))))
                        throw std::domain_error("negative substitution power of non-unit monomial");
                    Exps ne(se.size());
                    for (size_t i = 0; i < se.size(); ++i) ne[i] = -se[i] * (-k);
                    it = powers.emplace(k, monomial(layout_, ne, C(Rational(1)))).first;
                } else {
                    it = powers.emplace(k, s.pow(k)).first;
                }
            }
            Exps rest = e;
            rest[vi] = 0;
            r += it->second * monomial(layout_, rest, c);
        }
        return r;
    }

    // coefficient of name^k, as a series with that exponent zeroed
    TruncSeries coefficient(const std::string& name, int k) const
    {
        size_t vi = layout_->index(name);
        TruncSeries r(layout_);
        for (const auto& [e, c] : terms_) {
            if (e[vi] != k) continue;
            Exps ne = e;
            ne[vi] = 0;
            r.add_term(ne, c);
        }
        return r;
    }

    // residue at infinity in a Laurent variable: kResidueSign * [name^{-1}]
    TruncSeries residue(const std::string& name) const
    {
        size_t vi = layout_->index(name);
        if (!layout_->var(vi).laurent) throw std::invalid_argument("residue in non-Laurent variable " + name);
        TruncSeries r = coefficient(name, -1);
        return kResidueSign == 1 ? r : r.scaled(C(Rational(kResidueSign)));
    }

    // multiply by name^k, dropping anything leaving the window
    TruncSeries shifted(const std::string& name, int k) const
    {
        size_t vi = layout_->index(name);
        TruncSeries r(layout_);
        for (const auto& [e, c] : terms_) {
            Exps ne = e;
            ne[vi] += k;
            r.add_term(ne, c);
        }
        return r;
    }

    bool operator==(const TruncSeries& o) const
    {
        check(o);
        if (terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [e, c] : terms_) {
            if (e != it->first || !coeff_is_zero<C>(c - it->second)) return false;
            ++it;
        }
        return true;
    }

private:
    void check(const TruncSeries& o) const
    {
        if (layout_ != o.layout_ && !(*layout_ == *o.layout_))
            throw std::invalid_argument("incompatible series windows");
    }

    LayoutPtr layout_;
    std::map<Exps, C> terms_;
};

}  // namespace gwpt
