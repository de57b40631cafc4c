#pragma once

#include "gwpt/cohomology.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gwpt {

// class id values below zero mark the formal symbols
inline constexpr int kFch1 = -1;  // (-1)! ch_1(c_1)
inline constexpr int kFch0 = -2;  // (-2)! ch_0(c_1)

struct PtGen {
    int k = 0;
    int b = 0;  // basis index, or kFch1 / kFch0
    bool formal() const { return b < 0; }
    auto operator<=>(const PtGen&) const = default;
};

// sorted list of generators
using PtMonomial = std::vector<PtGen>;

enum class PtBasis { ch, tch };

class PtElement {
public:
    PtElement() = default;
    PtElement(RingPtr ring, PtBasis basis) : ring_(std::move(ring)), basis_(basis) {}

    static PtElement one(const RingPtr& ring, PtBasis basis = PtBasis::ch);
    static PtElement constant(const RingPtr& ring, const Rational& c, PtBasis basis = PtBasis::ch);
    // ch_k(gamma) or tch_k(gamma) according to basis, expanded over the ring basis
    static PtElement gen(PtBasis basis, int k, const CohClass& gamma);
    static PtElement basis_gen(const RingPtr& ring, PtBasis basis, int k, int b);
    static PtElement fch1(const RingPtr& ring, PtBasis basis = PtBasis::ch);
    static PtElement fch0(const RingPtr& ring, PtBasis basis = PtBasis::ch);

    const RingPtr& ring() const { return ring_; }
    PtBasis basis() const { return basis_; }
    const std::map<PtMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const PtMonomial& m) const;

    void add_term(PtMonomial m, const Rational& c);

    PtElement& operator+=(const PtElement& o);
    PtElement& operator-=(const PtElement& o);
    PtElement& operator*=(const Rational& s);
    PtElement operator-() const;
    friend PtElement operator+(PtElement a, const PtElement& b) { return a += b; }
    friend PtElement operator-(PtElement a, const PtElement& b) { return a -= b; }
    friend PtElement operator*(PtElement a, const Rational& s) { return a *= s; }
    friend PtElement operator*(const Rational& s, PtElement a) { return a *= s; }
    friend PtElement operator*(const PtElement& a, const PtElement& b);
    friend bool operator==(const PtElement& a, const PtElement& b);

    std::string str() const;

private:
    void check(const PtElement& o) const;
    RingPtr ring_;
    PtBasis basis_ = PtBasis::ch;
    std::map<PtMonomial, Rational> terms_;
};

std::string gen_str(const RingPtr& ring, PtBasis basis, const PtGen& g);
std::string monomial_str(const RingPtr& ring, PtBasis basis, const PtMonomial& m);

int fch1_count(const PtMonomial& m);
int fch0_count(const PtMonomial& m);

// multiplicative substitution of each generator
PtElement substitute_generators(const PtElement& D, PtBasis target,
                                const std::function<PtElement(const PtGen&)>& f);
// Leibniz extension of f on generators
PtElement apply_derivation(const PtElement& D, const std::function<PtElement(const PtGen&)>& f);

PtElement to_tch(const PtElement& D);
PtElement to_ch(const PtElement& D);
PtElement in_basis(const PtElement& D, PtBasis b);

struct GenSpec {
    PtBasis kind;
    int k;
    CohClass gamma;
};
PtElement build_element(const std::vector<GenSpec>& spec, PtBasis target = PtBasis::ch);

// R_k on a descendent algebra of dimension ring->top_degree(); ch basis in and out
PtElement apply_Rk(int k, const PtElement& D);

enum class TConvention { calligraphic, roman };
// T_k in the ch basis (two-sum form)
PtElement build_Tk(const RingPtr& ring, int k, TConvention conv);
// calligraphic T_k written through tilde generators, in the tch basis
PtElement build_Tk_tilde(const RingPtr& ring, int k);

enum class VirasoroKind { L, Lcal };
PtElement apply_virasoro(int k, const PtElement& D, VirasoroKind which);

// ch_0 -> -int, ch_1 -> 0, formal symbols -> 0
PtElement normalize_low_degree(const PtElement& D);
// <.>: normalize_low_degree, then ch_2(divisor) -> int_beta
PtElement bracket_normalize(const PtElement& D, const CurveClass& beta);

int filtration_level(const RingPtr& ring, const PtMonomial& m);

bool is_essential_gen(const RingPtr& ring, const PtGen& g);
// every monomial of the tch form built from essential generators
bool is_essential(const PtElement& D);

}  // namespace gwpt
