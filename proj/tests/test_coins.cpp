#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/coins.hpp"

using namespace qwalk;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("F3 entry (1,1) matches the closed form") {
    const OperatorMatrix f3 = make_coin(CoinKind::fourier(3));
    const cx want = std::polar(1.0 / std::sqrt(3.0), 2.0 * kPi / 3.0);
    CHECK(std::abs(f3.at(1, 1) - want) <= 1e-12);
    // spot-check the exponent convention on a second entry: (2,1) -> 4 pi/3
    CHECK(std::abs(f3.at(2, 1) - std::polar(1.0 / std::sqrt(3.0), 4.0 * kPi / 3.0)) <= 1e-12);
}

TEST_CASE("identity(3) and the degenerate fourier(1)") {
    CHECK(max_abs_diff(make_coin(CoinKind::identity(3)),
                       OperatorMatrix::identity(SpaceShape({3}))) == 0.0);
    const OperatorMatrix f1 = make_coin(CoinKind::fourier(1));
    CHECK(f1.dim() == 1);
    CHECK(std::abs(f1.at(0, 0) - cx{1, 0}) <= kEntryTol);
}

TEST_CASE("all coin kinds are unitary up to dimension 8") {
    for (int d = 1; d <= 8; ++d) {
        CHECK(make_coin(CoinKind::identity(d)).unitarity_defect() <= 1e-12);
        CHECK(make_coin(CoinKind::fourier(d)).unitarity_defect() <= 1e-12);
        CHECK(make_coin(CoinKind::grover(d)).unitarity_defect() <= 1e-12);
    }
    CHECK(make_coin(CoinKind::hadamard()).unitarity_defect() <= 1e-12);
}

TEST_CASE("fourier(2) equals hadamard") {
    CHECK(max_abs_diff(make_coin(CoinKind::fourier(2)), make_coin(CoinKind::hadamard())) <=
          1e-12);
}

TEST_CASE("invalid coin dimensions are rejected") {
    CHECK_THROWS_AS(make_coin(CoinKind::fourier(0)), std::invalid_argument);
    CHECK_THROWS_AS(make_coin(CoinKind::grover(-1)), std::invalid_argument);
    CHECK_THROWS_AS(make_coin(CoinKind{CoinKind::Family::hadamard, 3}), std::invalid_argument);
    CHECK_THROWS_AS(fourier_basis(0), std::invalid_argument);
}

TEST_CASE("fourier basis matches the printed states") {
    const std::vector<StateVector> basis = fourier_basis(3);
    REQUIRE(basis.size() == 3);
    const double inv = 1.0 / std::sqrt(3.0);
    // |f0> = (1/sqrt3)(|0> + |1> + |2>)
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(basis[0].amp(k) - cx{inv, 0}) <= 1e-12);
    }
    // |f1> = (1/sqrt3)(|0> + e^{2 pi i/3}|1> + e^{4 pi i/3}|2>)
    CHECK(std::abs(basis[1].amp(0) - cx{inv, 0}) <= 1e-12);
    CHECK(std::abs(basis[1].amp(1) - std::polar(inv, 2.0 * kPi / 3.0)) <= 1e-12);
    CHECK(std::abs(basis[1].amp(2) - std::polar(inv, 4.0 * kPi / 3.0)) <= 1e-12);
    // |f2> as printed carries e^{8 pi i/3} on |2>
    CHECK(std::abs(basis[2].amp(1) - std::polar(inv, 4.0 * kPi / 3.0)) <= 1e-12);
    CHECK(std::abs(basis[2].amp(2) - std::polar(inv, 8.0 * kPi / 3.0)) <= 1e-12);
}

TEST_CASE("fourier basis Gram matrix is the identity") {
    for (int d : {2, 3, 5}) {
        const std::vector<StateVector> basis = fourier_basis(d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const cx want = (i == j) ? cx{1, 0} : cx{0, 0};
                CHECK(std::abs(inner(basis[static_cast<std::size_t>(i)],
                                     basis[static_cast<std::size_t>(j)]) -
                               want) <= 1e-12);
            }
        }
    }
}

TEST_CASE("fourier basis states are the coin columns") {
    for (int d : {1, 3, 4}) {
        const OperatorMatrix f = make_coin(CoinKind::fourier(d));
        const std::vector<StateVector> basis = fourier_basis(d);
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                CHECK(basis[static_cast<std::size_t>(j)].amp(k) == f.at(k, j));
            }
        }
    }
}

TEST_CASE("coin kind names") {
    CHECK(CoinKind::fourier(3).name() == "fourier(3)");
    CHECK(CoinKind::hadamard().name() == "hadamard");
}
