// Multi-coin discrete-time quantum walk steps: one coin unitary followed by
// the shift conditioned on that coin.

#pragma once

#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/graphshift.hpp"
#include "qwalk/hilbert.hpp"

namespace qwalk {

// One walk step: the coin acts on subsystem `active_coin` (>= 1; subsystem 0
// is the position), then the shift moves the position conditioned on that
// coin's value. The coin dimension must match both the subsystem dimension
// and the graph's label count.
struct WalkStep {
    int active_coin = 1;
    CoinKind coin;
    EdgeLabeledGraph graph;
};

// U = S_embedded * C_embedded on the full composite shape. The shift couples
// (position, active coin) and leaves every other subsystem alone, so a
// coin-2-conditioned shift interleaves across the coin-1 index.
OperatorMatrix step_operator(const SpaceShape& shape, const WalkStep& step);

// Applies the steps left to right: steps[0] first.
StateVector evolve(const StateVector& initial, const std::vector<WalkStep>& steps);

}  // namespace qwalk
