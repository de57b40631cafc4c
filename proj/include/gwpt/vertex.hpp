#pragma once

#include "gwpt/correspondence.hpp"
#include "gwpt/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace gwpt {

// Polynomial in commuting abstract symbols a_1, a_2, ... with rational coefficients.
// A monomial is its sorted list of mode indices.
class HeisPoly {
public:
    HeisPoly() = default;
    HeisPoly(const Rational& c);
    static HeisPoly a(int n);

    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const std::vector<int>& mono) const;

    HeisPoly& operator+=(const HeisPoly& o);
    HeisPoly& operator-=(const HeisPoly& o);
    HeisPoly operator-() const;
    friend HeisPoly operator+(HeisPoly a, const HeisPoly& b) { return a += b; }
    friend HeisPoly operator-(HeisPoly a, const HeisPoly& b) { return a -= b; }
    friend HeisPoly operator*(const HeisPoly& a, const HeisPoly& b);
    friend bool operator==(const HeisPoly& a, const HeisPoly& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    void add(const std::vector<int>& mono, const Rational& c);
    std::map<std::vector<int>, Rational> terms_;
};

using VertexSeries = TruncSeries<HeisPoly>;

// Variables of the residue computation. Engine conventions:
//   y = v/t, the constraint is solved as w e^w = y e^y e^{-x r}, and t stands for -c1/(iu).
// With t rescaled this way the vertex operator exp(theta phi(y) - theta phi(w)) has rational
// coefficients: the negative modes give exp(x v) and the positive ones sum_n a_n v^{-n}.
//
// Windows: r in [0, r_high], t in [t_low, t_high], x_i in [0, x_high[i]]. Each v_i is Laurent;
// for every suffix S of the points the cut sum_{i in S} (v_i - x_i) >= -sum_{i in S} (x_high[i] + 1)
// drops terms that cannot reach v_i^{-1} (for one point this is the window v >= -(K + 3)).
class VertexContext {
public:
    // x_total < 0: no bound on the total x degree; residue_cuts = false drops the suffix cuts
    VertexContext(int points, int r_high, int t_low, int t_high, std::vector<int> x_high, int x_total = -1,
                  bool residue_cuts = true);

    int points() const { return points_; }
    const VertexSeries::LayoutPtr& layout() const { return layout_; }
    std::string x(int i) const { return "x" + std::to_string(i + 1); }
    std::string v(int i) const { return "v" + std::to_string(i + 1); }

    VertexSeries one() const { return VertexSeries::constant(layout_, HeisPoly(Rational(1))); }
    VertexSeries constant(const Rational& c) const { return VertexSeries::constant(layout_, HeisPoly(c)); }
    VertexSeries var(const std::string& name, int power = 1) const;
    VertexSeries mono(const std::map<std::string, int>& exps, const HeisPoly& c) const;

private:
    int points_;
    VertexSeries::LayoutPtr layout_;
};

// (1 + eps)^alpha for eps nilpotent in the window
VertexSeries binomial_series(const VertexSeries& eps, const Rational& alpha);
// log(1 + eps) for eps nilpotent in the window
VertexSeries log1p_series(const VertexSeries& eps);
// (v_i + t)^{-k}, expanded at v_i = infinity
VertexSeries inv_v_plus_t(const VertexContext& ctx, int i, int k);
// (v_b - v_a)^{-k} for a < b, expanded in |v_b| > |v_a|
VertexSeries inv_v_diff(const VertexContext& ctx, int a, int b, int k);

// Coefficients f_1 .. f_order of w = y + sum_k f_k r^k at point i, as series in x_i and v_i, t.
std::vector<VertexSeries> solve_constraint(const VertexContext& ctx, int i, int order_r);
// (1/r) log(w e^w / (y e^y e^{-x r})) through the orders f determines; zero when f solves the constraint
VertexSeries constraint_residual(const VertexContext& ctx, int i, const std::vector<VertexSeries>& f);

enum class VertexFactor { E, D, sqrtform, powerdiff, B2pt };

// E = exp(t(-(w^2 - y^2)/2r - (w - y)/r)), D = -x r/(w - y), sqrtform = sqrt(dw/dy),
// powerdiff(n) = (y^{-n} - w^{-n})/(t^n r), B2pt = (w_2 - y_1)(y_2 - w_1)/((y_2 - y_1)(w_2 - w_1))
// for points (i, i + 1). All at point i, mod r^{r_high + 1}.
VertexSeries build_factor(const VertexContext& ctx, VertexFactor which, int i, int n = 0);

// Printed reference expansions (u = 1, unscaled t). B2pt uses points (0, 1).
VertexSeries printed_factor(const VertexContext& ctx, VertexFactor which, int n = 0);
// printed coefficient of r^k in w(x, y), k = 1..3
VertexSeries printed_w_coefficient(const VertexContext& ctx, int k);

struct FactorCheck {
    std::string name;
    int r_order = 0;
    bool ok = false;
    std::string detail;   // ratio or difference on failure
};
// compares every factor order by order against the printed expansion
std::vector<FactorCheck> check_printed_expansions(int t_high = 6);

// Residue output: index tuple (k_1, ..., k_n) -> (r power, t power) -> polynomial.
// The coefficient of x_1^{k_1+2} ... x_n^{k_n+2} is the generating function of C-circ of
// tilde ch_{k_1+2} ... tilde ch_{k_n+2}; t^j pairs with the c1^j stratum.
struct VertexCoefficients {
    int points = 0;
    std::map<std::vector<int>, std::map<std::pair<int, int>, HeisPoly>> terms;
};

// n = 1: all k <= K; n = 2: k_1 + k_2 <= K; n = 3: all k_i <= K.
// One point keeps r up to r^2; two and three points are taken at r^0 after the division by r^2, r^4.
VertexCoefficients h_tilde_npoint(int n, int K);

// Converts the t-graded output for one index tuple to the C-circ normalization:
// t^j -> (-1)^j (iu)^{-j} c1^j, and the connected part is divided by (r^2 c1)^{n-1} with
// c1 = -(iu) t, which gives an overall (-(iu))^{-(n-1)}.
std::map<int, APoly> vertex_strata(int n, const std::map<std::pair<int, int>, HeisPoly>& by_rt);

struct VertexReport {
    int checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// h_tilde against c_circ_strata; also requires zero t^{-1} coefficients (and for one point,
// zero odd r powers)
VertexReport vertex_verify(int K1, int K2, int K3);
// only even powers of r in the one-point function up to K
bool one_point_even_in_r(int K);

}  // namespace gwpt
