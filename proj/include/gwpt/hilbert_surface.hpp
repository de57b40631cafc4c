#pragma once

#include "gwpt/pt_algebra.hpp"

#include <string>
#include <vector>

namespace gwpt {

// D(S) shares the PtElement representation: ch basis over a surface ring.
using SurfaceDescElement = PtElement;

// L^S_k(D) = T^S_k D + R_k(D)
SurfaceDescElement apply_Lk_surface(int k, const SurfaceDescElement& D);
// L^S_k + (k+1)! R_{-1} ch_{k+1}(pt)
SurfaceDescElement apply_surface_constraint(int k, const SurfaceDescElement& D);

// ch_i(sigma) -> ch_i(sigma x pt) over X = S x P1
PtElement embed(const SurfaceDescElement& D, const RingPtr& X);
// ch_i(delta) -> ch_i(rho_* delta)
SurfaceDescElement project(const PtElement& D);

struct CompositionMismatch {
    SurfaceDescElement input, lhs, rhs;
};
struct CompositionReport {
    int checked = 0;
    std::vector<CompositionMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// project o Lcal_k^PT o embed against the surface constraint operator, on all monomials
// with at most max_factors generators ch_i(sigma), 0 <= i <= max_index
CompositionReport composition_check(int k, const RingPtr& S, int max_factors, int max_index);

}  // namespace gwpt
