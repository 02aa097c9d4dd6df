// Coin operators and coin-space measurement bases.

#pragma once

#include <string>
#include <vector>

#include "qwalk/hilbert.hpp"

namespace qwalk {

// One of the standard coin families, with its dimension.
struct CoinKind {
    enum class Family { identity, fourier, hadamard, grover };

    Family family = Family::identity;
    int dim = 1;

    static CoinKind identity(int d) { return {Family::identity, d}; }
    static CoinKind fourier(int d) { return {Family::fourier, d}; }
    static CoinKind hadamard() { return {Family::hadamard, 2}; }
    static CoinKind grover(int d) { return {Family::grover, d}; }

    std::string name() const;

    bool operator==(const CoinKind&) const = default;
};

// Unitary coin matrix of the requested kind. The Fourier coin uses the
// positive-exponent convention: entry (j,k) = exp(+2*pi*i*j*k/d)/sqrt(d).
OperatorMatrix make_coin(const CoinKind& kind);

// The d orthonormal Fourier states |f_j>; |f_j> is column j of the Fourier
// coin, i.e. (1/sqrt(d)) * sum_k exp(+2*pi*i*j*k/d) |k>.
std::vector<StateVector> fourier_basis(int d);

}  // namespace qwalk
