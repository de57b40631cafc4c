#pragma once

#include "gwpt/combinatorics.hpp"
#include "gwpt/gw_algebra.hpp"
#include "gwpt/pt_algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gwpt {

// C-circ of one connected block of tilde generators (formal symbols allowed);
// the result is written in a_n and tau_{-2} generators
GwElement c_circ(const RingPtr& ring, const PtMonomial& block);

// abstract a-polynomial: sorted mode indices -> coefficient
using APoly = std::map<std::vector<int>, WScalar>;

// C-circ of tilde ch_{k_1+2} ... tilde ch_{k_n+2} (n <= 3) for generic classes, keyed by the
// power j in gamma_1 ... gamma_n c1^j. Same formulas as c_circ, without the Kunneth split.
std::map<int, APoly> c_circ_strata(const std::vector<int>& k);

// sum over set partitions of products of C-circ, converted to the tau basis.
// A1Shift::none drops the constant of tau_0 = a_1 + (1/24) int g c2.
GwElement c_bullet(const PtElement& D, A1Shift shift = A1Shift::none);

struct IntertwineResult {
    bool ok = false;
    GwElement lhs, rhs, difference;
};

// C.(L_k^PT D) against (iu)^{-k} L~_k^GW C.(D), after restricting negative symbols
// by their action on the vacuum. D must be essential.
IntertwineResult intertwine_check(int k, const PtElement& D);

struct GwPrediction {
    GwElement gw_side;      // (-iu)^{d_beta} C.(D)
    int d_beta = 0;         // PT side carries the factor (-q)^{-d_beta/2}, kept symbolic
    std::string pt_prefactor;
};
GwPrediction gw_predict(const PtElement& D, const CurveClass& beta);

}  // namespace gwpt
