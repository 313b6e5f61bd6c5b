#pragma once

#include "ug/instance.hpp"
#include "ug/lp_types.hpp"
#include "ug/sdp.hpp"

namespace ug::lp {

// Solves max sum_{((u,i),(v,j)) in Gamma} min(x(u,i), x(v,j)) subject to one
// probability simplex per vertex. Exact up to numerical tolerance; empty
// Gamma yields a feasible point with objective 0.
LPWeights solve_lp(const sdp::SuperShortSet& gamma, const UGInstance& inst);

// Objective recomputed from the weights; tests pin this against
// LPWeights::objective within 1e-9.
double lp_objective(const sdp::SuperShortSet& gamma, const UGInstance& inst,
                    const LPWeights& w);

}  // namespace ug::lp
