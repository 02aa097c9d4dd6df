#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(const SpaceShape& shape, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::vector<cx> amps(static_cast<std::size_t>(shape.total()));
    for (cx& a : amps) a = {normal(rng), normal(rng)};
    return StateVector(shape, std::move(amps)).normalized();
}

}  // namespace

TEST_CASE("step one maps the start-vertex kets per the printed display (both listings)") {
    const SpaceShape shape({10, 3, 3});
    for (GraphVariant variant : {GraphVariant::original, GraphVariant::rearranged}) {
        const WalkStep step{1, CoinKind::identity(3), paper_graph(variant)};
        const OperatorMatrix u1 = step_operator(shape, step);
        const int expect[3] = {shape.flat_index({2, 0, 0}), shape.flat_index({0, 1, 0}),
                               shape.flat_index({8, 2, 0})};
        for (int k = 0; k < 3; ++k) {
            const StateVector out = apply(u1, basis_state(shape, {1, k, 0}));
            for (int f = 0; f < shape.total(); ++f) {
                const cx want = (f == expect[k]) ? cx{1, 0} : cx{0, 0};
                CHECK(std::abs(out.amp(f) - want) <= 1e-12);
            }
        }
    }
}

TEST_CASE("step two on |200> expands into the three rearranged branches") {
    const SpaceShape shape({10, 3, 3});
    const WalkStep step{2, CoinKind::fourier(3), paper_graph(GraphVariant::rearranged)};
    const OperatorMatrix u2 = step_operator(shape, step);
    const StateVector out = apply(u2, basis_state(shape, {2, 0, 0}));
    const double inv = 1.0 / std::sqrt(3.0);
    for (int f = 0; f < shape.total(); ++f) {
        cx want{0, 0};
        if (f == shape.flat_index({3, 0, 0}) || f == shape.flat_index({1, 0, 1}) ||
            f == shape.flat_index({1, 0, 2})) {
            want = {inv, 0};
        }
        CHECK(std::abs(out.amp(f) - want) <= 1e-12);
    }
}

TEST_CASE("coin-2 conditioned shifts interleave across the coin-1 index") {
    const SpaceShape shape({10, 3, 3});
    const WalkStep step{2, CoinKind::identity(3), paper_graph(GraphVariant::rearranged)};
    const OperatorMatrix u = step_operator(shape, step);
    // |2, c1, 1> -> |1, c1, 1> for every coin-1 value (label-1 edge 2 -> 1)
    for (int c1 = 0; c1 < 3; ++c1) {
        const StateVector out = apply(u, basis_state(shape, {2, c1, 1}));
        CHECK(std::abs(out.amp(shape.flat_index({1, c1, 1})) - cx{1, 0}) <= 1e-12);
        CHECK(std::abs(out.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("identity coin on a permutation-complete graph gives a permutation matrix") {
    const SpaceShape shape({6, 2, 2});
    const WalkStep step{1, CoinKind::identity(2), cycle_graph(6)};
    const OperatorMatrix u = step_operator(shape, step);
    CHECK(u.unitarity_defect() <= 1e-12);
    for (int c = 0; c < u.dim(); ++c) {
        int ones = 0;
        for (int r = 0; r < u.dim(); ++r) {
            const cx v = u.at(r, c);
            if (std::abs(v - cx{1, 0}) <= 1e-12) {
                ++ones;
            } else {
                CHECK(std::abs(v) <= 1e-12);
            }
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const SpaceShape shape({10, 3, 3});
    CHECK_THROWS_AS(step_operator(shape, {1, CoinKind::identity(2),
                                          paper_graph(GraphVariant::rearranged)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_operator(shape, {0, CoinKind::identity(3),
                                          paper_graph(GraphVariant::rearranged)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_operator(shape, {3, CoinKind::identity(3),
                                          paper_graph(GraphVariant::rearranged)}),
                    std::invalid_argument);
    // cycle graph has 2 labels, coin space is 3-dimensional
    CHECK_THROWS_AS(step_operator(shape, {1, CoinKind::identity(3), cycle_graph(10)}),
                    std::invalid_argument);
}

TEST_CASE("evolve: empty step list, composition, and the paper expansion") {
    const SpaceShape shape({10, 3, 3});
    std::mt19937_64 rng(7);
    const StateVector s = random_state(shape, rng);
    const StateVector same = evolve(s, {});
    for (int f = 0; f < s.dim(); ++f) CHECK(same.amp(f) == s.amp(f));

    const EdgeLabeledGraph g = paper_graph(GraphVariant::rearranged);
    const WalkStep step1{1, CoinKind::identity(3), g};
    const WalkStep step2{2, CoinKind::fourier(3), g};
    const StateVector chained = evolve(evolve(s, {step1}), {step2});
    const StateVector direct = evolve(s, {step1, step2});
    for (int f = 0; f < s.dim(); ++f) CHECK(chained.amp(f) == direct.amp(f));

    // generic-input expansion under the rearranged listing
    std::normal_distribution<double> normal;
    std::vector<cx> a(3);
    double norm_sq = 0.0;
    for (cx& v : a) {
        v = {normal(rng), normal(rng)};
        norm_sq += std::norm(v);
    }
    for (cx& v : a) v /= std::sqrt(norm_sq);
    StateVector initial = StateVector::zero(shape);
    for (int k = 0; k < 3; ++k) initial.set_amp(shape.flat_index({1, k, 0}), a[k]);

    const StateVector final = evolve(initial, {step1, step2});
    const double inv = 1.0 / std::sqrt(3.0);
    struct Term {
        int flat;
        cx amp;
    };
    const Term expected[] = {
        {shape.flat_index({3, 0, 0}), inv * a[0]}, {shape.flat_index({1, 0, 1}), inv * a[0]},
        {shape.flat_index({1, 0, 2}), inv * a[0]}, {shape.flat_index({1, 1, 0}), inv * a[1]},
        {shape.flat_index({1, 2, 1}), inv * a[2]}, {shape.flat_index({3, 2, 2}), inv * a[2]},
    };
    for (int f = 0; f < shape.total(); ++f) {
        cx want{0, 0};
        for (const Term& t : expected) {
            if (t.flat == f) want = t.amp;
        }
        CHECK(std::abs(final.amp(f) - want) <= 1e-12);
    }
}

TEST_CASE("norm is lost exactly where the listings lack edges") {
    const SpaceShape shape({10, 3, 3});
    const EdgeLabeledGraph g = paper_graph(GraphVariant::rearranged);
    const std::vector<WalkStep> steps{{1, CoinKind::identity(3), g},
                                      {2, CoinKind::fourier(3), g}};
    // the a1 branch sits at vertex 0 after step one and keeps only its label-0 exit
    const StateVector a1_final = evolve(basis_state(shape, {1, 1, 0}), steps);
    CHECK(std::abs(a1_final.norm_sq() - 1.0 / 3.0) <= 1e-12);
    // the a0 branch keeps all three exits
    const StateVector a0_final = evolve(basis_state(shape, {1, 0, 0}), steps);
    CHECK(std::abs(a0_final.norm_sq() - 1.0) <= 1e-12);
    // the a2 branch keeps two of three
    const StateVector a2_final = evolve(basis_state(shape, {1, 2, 0}), steps);
    CHECK(std::abs(a2_final.norm_sq() - 2.0 / 3.0) <= 1e-12);
}

TEST_CASE("permutation-complete steps preserve the norm of random states (property)") {
    const SpaceShape shape({10, 3, 3});
    const EdgeLabeledGraph g = paper_completed_graph();
    const std::vector<WalkStep> steps{{1, CoinKind::identity(3), g},
                                      {2, CoinKind::fourier(3), g}};
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector s = random_state(shape, rng);
        CHECK(std::abs(evolve(s, steps).norm() - 1.0) <= kNormTol);
    }
}

TEST_CASE("identity coins on a permutation graph map basis states to basis states") {
    const SpaceShape shape({5, 2, 2});
    const EdgeLabeledGraph g = cycle_graph(5);
    const std::vector<WalkStep> steps{{1, CoinKind::identity(2), g},
                                      {2, CoinKind::identity(2), g}};
    for (int f = 0; f < shape.total(); ++f) {
        StateVector s = StateVector::zero(shape);
        s.set_amp(f, cx{1, 0});
        const StateVector out = evolve(s, steps);
        int ones = 0;
        for (int i = 0; i < out.dim(); ++i) {
            if (std::abs(out.amp(i) - cx{1, 0}) <= 1e-12) ++ones;
        }
        CHECK(ones == 1);
        CHECK(std::abs(out.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("F3 phases propagate through step two with the positive-exponent convention") {
    const SpaceShape shape({10, 3, 3});
    const WalkStep step{2, CoinKind::fourier(3), paper_graph(GraphVariant::rearranged)};
    const OperatorMatrix u2 = step_operator(shape, step);
    // |2,0,1> feeds F3 column 1: amplitudes (1/sqrt3) e^{2 pi i j/3} on coin2 = j,
    // then labels 0/1/2 move 2 -> 3/1/1.
    const StateVector out = apply(u2, basis_state(shape, {2, 0, 1}));
    const double inv = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(out.amp(shape.flat_index({3, 0, 0})) - std::polar(inv, 0.0)) <= 1e-12);
    CHECK(std::abs(out.amp(shape.flat_index({1, 0, 1})) - std::polar(inv, 2.0 * kPi / 3.0)) <=
          1e-12);
    CHECK(std::abs(out.amp(shape.flat_index({1, 0, 2})) - std::polar(inv, 4.0 * kPi / 3.0)) <=
          1e-12);
}
