#pragma once

#include <utility>

#include "ug/generators.hpp"
#include "ug/instance.hpp"

namespace ug::oracle {

// Guard shared by both brute-force searches: k^n must not exceed this.
inline constexpr long long kMaxEnumerations = 10'000'000;

// Exact optimum over all k^n labelings; the returned labeling is the
// lexicographically smallest maximizer. Throws std::invalid_argument when
// k^n exceeds the guard.
std::pair<Labeling, double> brute_force_opt(const UGInstance& inst);

// Exact optimum of a 2-to-2 game (fraction of satisfied predicates).
double brute_force_2to2(const gen::TwoToTwoGame& game);

}  // namespace ug::oracle
