#include "qwalk/coins.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalk {

std::string CoinKind::name() const {
    switch (family) {
        case Family::identity: return "identity(" + std::to_string(dim) + ")";
        case Family::fourier: return "fourier(" + std::to_string(dim) + ")";
        case Family::hadamard: return "hadamard";
        case Family::grover: return "grover(" + std::to_string(dim) + ")";
    }
    return "?";
}

OperatorMatrix make_coin(const CoinKind& kind) {
    if (kind.dim < 1) {
        throw std::invalid_argument("make_coin: dimension must be >= 1, got " +
                                    std::to_string(kind.dim));
    }
    const int d = kind.dim;
    switch (kind.family) {
        case CoinKind::Family::identity:
            return OperatorMatrix::identity(SpaceShape({d}));
        case CoinKind::Family::fourier: {
            OperatorMatrix m = OperatorMatrix::zero(SpaceShape({d}));
            const double inv = 1.0 / std::sqrt(static_cast<double>(d));
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    m.set(j, k, std::polar(inv, 2.0 * std::numbers::pi * j * k / d));
                }
            }
            return m;
        }
        case CoinKind::Family::hadamard: {
            if (d != 2) {
                throw std::invalid_argument("make_coin: hadamard is fixed at dimension 2");
            }
            const double h = 1.0 / std::sqrt(2.0);
            return OperatorMatrix(SpaceShape({2}), {cx{h, 0}, cx{h, 0}, cx{h, 0}, cx{-h, 0}});
        }
        case CoinKind::Family::grover: {
            // entries 2/d - delta_jk
            OperatorMatrix m = OperatorMatrix::zero(SpaceShape({d}));
            const double off = 2.0 / static_cast<double>(d);
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    m.set(j, k, cx{off - (j == k ? 1.0 : 0.0), 0.0});
                }
            }
            return m;
        }
    }
    throw std::invalid_argument("make_coin: unknown coin family");
}

std::vector<StateVector> fourier_basis(int d) {
    if (d < 1) {
        throw std::invalid_argument("fourier_basis: dimension must be >= 1");
    }
    const OperatorMatrix f = make_coin(CoinKind::fourier(d));
    std::vector<StateVector> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        StateVector s = StateVector::zero(SpaceShape({d}));
        for (int k = 0; k < d; ++k) {
            s.set_amp(k, f.at(k, j));
        }
        basis.push_back(std::move(s));
    }
    return basis;
}

}  // namespace qwalk
