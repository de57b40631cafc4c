#pragma once

#include "gwpt/cohomology.hpp"
#include "gwpt/wscalar.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gwpt {

enum class GwKind : int { tau = 0, a = 1 };

// tau_level(b) with level >= -2, or the Heisenberg mode a_level(b) with level >= 1
struct GwGen {
    GwKind kind = GwKind::tau;
    int level = 0;
    int b = 0;
    auto operator<=>(const GwGen&) const = default;
};

// sorted: tau before a, negative levels first (normal ordering)
using GwMonomial = std::vector<GwGen>;

class GwElement {
public:
    GwElement() = default;
    explicit GwElement(RingPtr ring) : ring_(std::move(ring)) {}

    static GwElement one(const RingPtr& ring);
    static GwElement constant(const RingPtr& ring, const WScalar& c);
    // tau_k(gamma), k >= -2
    static GwElement tau(int k, const CohClass& gamma);
    // a_n(gamma); n in {0, -1} gives 0, n <= -2 throws
    static GwElement a(int n, const CohClass& gamma);
    static GwElement gen(const RingPtr& ring, const GwGen& g);

    const RingPtr& ring() const { return ring_; }
    const std::map<GwMonomial, WScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    WScalar coeff(const GwMonomial& m) const;
    void add_term(GwMonomial m, const WScalar& c);

    GwElement& operator+=(const GwElement& o);
    GwElement& operator-=(const GwElement& o);
    GwElement& operator*=(const WScalar& s);
    GwElement operator-() const;
    friend GwElement operator+(GwElement a, const GwElement& b) { return a += b; }
    friend GwElement operator-(GwElement a, const GwElement& b) { return a -= b; }
    friend GwElement operator*(GwElement a, const WScalar& s) { return a *= s; }
    friend GwElement operator*(const WScalar& s, GwElement a) { return a *= s; }
    friend GwElement operator*(const GwElement& a, const GwElement& b);
    friend bool operator==(const GwElement& a, const GwElement& b);

    bool has_kind(GwKind k) const;
    std::string str() const;

private:
    void check(const GwElement& o) const;
    RingPtr ring_;
    std::map<GwMonomial, WScalar> terms_;
};

std::string gw_gen_str(const RingPtr& ring, const GwGen& g);

GwElement gw_substitute(const GwElement& D, const std::function<GwElement(const GwGen&)>& f);
GwElement gw_derivation(const GwElement& D, const std::function<GwElement(const GwGen&)>& f);

// constant in tau_0(g) = a_1(g) + shift: todd gives (1/24) int g c2, none drops it
enum class A1Shift { todd, none };

// tau_k <-> a_n dictionary; negative tau symbols pass through
GwElement tau_to_a(const GwElement& D, A1Shift shift = A1Shift::todd);
GwElement a_to_tau(const GwElement& D, A1Shift shift = A1Shift::todd);

// R^j_k; j = -1 means the sum over j (R_k)
GwElement apply_Rkj(int k, int j, const GwElement& D);
GwElement apply_Rk_gw(int k, const GwElement& D);
GwElement apply_Bk(int k, const GwElement& D);

GwElement build_Tkj(const RingPtr& ring, int k, int j);
GwElement build_Tprime_tau(const RingPtr& ring, int k);
// in a / tau_{-2} generators
GwElement build_Tprime_compact(const RingPtr& ring, int k);
// T^0_k = 2 (k+1)! tau_0(1) tau_{k-1}(pt)
GwElement build_T0(const RingPtr& ring, int k);

enum class GwVirasoroKind { Ltilde, Lcal };
GwElement apply_gw_virasoro(int k, const GwElement& D, GwVirasoroKind which);

// low: tau_{-2}(pt) = 1, tau_{-1}(pt) = 0
// high: tau_{-2}(pt) = 1, tau_{-1}(g) = 0 for deg g >= 2
// vacuum: every tau_{-2}(g) -> u^-2 int g and tau_{-1}(g) -> 0, i.e. negatives
//   standing left of a positive word acting on the vacuum
enum class RestrictMode { low, high, vacuum };
GwElement restrict_negatives(const GwElement& D, RestrictMode mode);

// no tau_k(1) and no a_n(1) factors
bool is_stationary(const GwElement& D);

}  // namespace gwpt
