#include "qwalk/walk.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

void validate_step(const SpaceShape& shape, const WalkStep& step) {
    if (shape.rank() < 2) {
        throw std::invalid_argument("step_operator: shape needs a position and a coin subsystem");
    }
    if (step.active_coin < 1 || step.active_coin >= shape.rank()) {
        throw std::invalid_argument("step_operator: active coin " +
                                    std::to_string(step.active_coin) +
                                    " is not a coin subsystem of the shape");
    }
    const int coin_dim = shape.dim(step.active_coin);
    if (step.coin.dim != coin_dim) {
        throw std::invalid_argument("step_operator: coin dimension " +
                                    std::to_string(step.coin.dim) + " does not match subsystem " +
                                    std::to_string(step.active_coin) + " (dim " +
                                    std::to_string(coin_dim) + ")");
    }
    if (step.graph.n_vertices() != shape.dim(0)) {
        throw std::invalid_argument("step_operator: graph has " +
                                    std::to_string(step.graph.n_vertices()) +
                                    " vertices but the position space has dimension " +
                                    std::to_string(shape.dim(0)));
    }
    if (step.graph.n_labels() != coin_dim) {
        throw std::invalid_argument("step_operator: graph has " +
                                    std::to_string(step.graph.n_labels()) +
                                    " labels but the active coin has dimension " +
                                    std::to_string(coin_dim));
    }
}

// sum over edges of |dst><src| on position (x) |label><label| on the active
// coin (x) identity elsewhere.
OperatorMatrix embedded_shift(const SpaceShape& shape, const WalkStep& step) {
    std::map<std::pair<int, int>, std::vector<int>> dsts;  // (src, label) -> destinations
    for (const Edge& e : step.graph.edges()) {
        dsts[{e.src, e.label}].push_back(e.dst);
    }

    OperatorMatrix m = OperatorMatrix::zero(shape);
    for (int col = 0; col < shape.total(); ++col) {
        std::vector<int> multi = shape.multi_index(col);
        const auto it = dsts.find({multi[0], multi[static_cast<std::size_t>(step.active_coin)]});
        if (it == dsts.end()) continue;
        for (int dst : it->second) {
            std::vector<int> target = multi;
            target[0] = dst;
            m.add(shape.flat_index(target), col, cx{1.0, 0.0});
        }
    }
    return m;
}

OperatorMatrix embedded_coin(const SpaceShape& shape, const WalkStep& step) {
    std::vector<OperatorMatrix> factors;
    factors.reserve(static_cast<std::size_t>(shape.rank()));
    for (int i = 0; i < shape.rank(); ++i) {
        if (i == step.active_coin) {
            factors.push_back(make_coin(step.coin));
        } else {
            factors.push_back(OperatorMatrix::identity(SpaceShape({shape.dim(i)})));
        }
    }
    return kron(factors);
}

}  // namespace

OperatorMatrix step_operator(const SpaceShape& shape, const WalkStep& step) {
    validate_step(shape, step);
    return embedded_shift(shape, step) * embedded_coin(shape, step);
}

StateVector evolve(const StateVector& initial, const std::vector<WalkStep>& steps) {
    StateVector state = initial;
    for (const WalkStep& step : steps) {
        state = apply(step_operator(state.shape(), step), state);
    }
    return state;
}

}  // namespace qwalk
