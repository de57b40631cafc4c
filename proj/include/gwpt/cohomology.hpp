#pragma once

#include "gwpt/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gwpt {

class CohRing;
using RingPtr = std::shared_ptr<const CohRing>;

struct BasisElem {
    std::string label;
    int degree = 0;  // complex degree
};

class CohClass {
public:
    CohClass() = default;
    CohClass(RingPtr ring, std::vector<Rational> coeffs);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](size_t i) const { return c_[i]; }
    bool is_zero() const;

    CohClass& operator+=(const CohClass& o);
    CohClass& operator-=(const CohClass& o);
    CohClass& operator*=(const Rational& s);
    friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
    friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
    friend CohClass operator*(CohClass a, const Rational& s) { return a *= s; }
    friend CohClass operator*(const Rational& s, CohClass a) { return a *= s; }
    friend CohClass operator*(const CohClass& a, const CohClass& b);
    friend bool operator==(const CohClass& a, const CohClass& b);

    CohClass pow(int n) const;
    Rational integral() const;
    // degree if homogeneous and nonzero
    std::optional<int> degree() const;
    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Rational> c_;
};

// gamma . Delta = sum coeff * basis(left) (x) basis(right)
struct KunnethTerm {
    int left = 0;
    int right = 0;
    Rational coeff;
};

struct CohRingData {
    std::string name;
    int top_degree = 3;
    std::vector<BasisElem> basis;                             // basis[0] must be the unit
    std::vector<std::vector<std::vector<Rational>>> mult;     // mult[i][j] = coefficient vector of b_i b_j
    std::vector<Rational> integrals;                          // integral of each basis element
    std::vector<Rational> c1, c2;
    // set only for rings built by product_with_p1: index of sigma x 1 and sigma x pt
    std::shared_ptr<const CohRing> surface;
    std::vector<int> factor_index;  // basis i -> surface basis index
    std::vector<int> fiber_part;    // basis i -> 0 for sigma x 1, 1 for sigma x pt
};

class CohRing : public std::enable_shared_from_this<CohRing> {
public:
    // validates commutativity, associativity, grading and nondegeneracy
    static RingPtr create(CohRingData data);

    const std::string& name() const { return d_.name; }
    int top_degree() const { return d_.top_degree; }
    size_t size() const { return d_.basis.size(); }
    const BasisElem& basis_elem(size_t i) const { return d_.basis[i]; }
    int degree(size_t i) const { return d_.basis[i].degree; }
    const std::string& label(size_t i) const { return d_.basis[i].label; }
    std::optional<size_t> find(const std::string& label) const;
    size_t index(const std::string& label) const;  // throws

    CohClass zero() const;
    CohClass unit() const { return basis(0); }
    CohClass basis(size_t i) const;
    CohClass operator()(const std::string& label) const { return basis(index(label)); }
    CohClass c1() const;
    CohClass c2() const;
    // the basis element of top degree with integral one, if there is exactly one top class
    size_t point_index() const { return point_; }
    CohClass point() const { return basis(point_); }

    const std::vector<Rational>& mult(size_t i, size_t j) const { return d_.mult[i][j]; }
    Rational basis_integral(size_t i) const { return d_.integrals[i]; }
    // pairing matrix entries and the dual basis
    Rational pairing(size_t i, size_t j) const;
    const CohClass& dual(size_t i) const { return duals_[i]; }

    std::vector<KunnethTerm> kunneth(const CohClass& gamma) const;
    // theta = sum coeff * b_{i1} (x) ... (x) b_{in}, the n-fold Kunneth split
    std::vector<std::pair<std::vector<int>, Rational>> kunneth_n(const CohClass& theta, int n) const;

    bool is_product_with_p1() const { return d_.surface != nullptr; }
    const RingPtr& surface() const { return d_.surface; }
    int factor_index(size_t i) const { return d_.factor_index.at(i); }
    int fiber_part(size_t i) const { return d_.fiber_part.at(i); }
    const CohRingData& data() const { return d_; }

private:
    explicit CohRing(CohRingData d) : d_(std::move(d)) {}
    void validate_and_init();

    CohRingData d_;
    std::vector<CohClass> duals_;
    size_t point_ = 0;
};

RingPtr make_p3();
RingPtr make_p2();
RingPtr make_p1xp1();
RingPtr product_with_p1(const RingPtr& surface);
// rho_*: (sigma x pt) -> sigma, (sigma x 1) -> 0
CohClass pushforward_p1(const CohClass& delta);
// rho^*-style inclusion sigma -> sigma x pt
CohClass times_point(const RingPtr& product, const CohClass& sigma);

// JSON ring config; see README for the shape
RingPtr load_ring_json(const std::string& path);
RingPtr ring_from_json_text(const std::string& text);
// "p3", "p2", "p1xp1", "p2xp1", "p1xp1xp1" or a path to a JSON file
RingPtr ring_by_name(const std::string& name);

// Curve class data: d_beta = int_beta c1 and the divisor functional int_beta on H^2.
struct CurveClass {
    Rational d_beta;
    std::vector<Rational> divisor_integrals;  // per basis element, zero off H^2
    Rational integrate(const CohClass& gamma) const;
};

CurveClass p3_line(const RingPtr& p3);

}  // namespace gwpt
