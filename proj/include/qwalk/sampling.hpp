// Seeded sampling of random states and unitaries for reproducible checks.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qwalk/hilbert.hpp"

namespace qwalk {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // Normalized complex amplitude vector, Gaussian-distributed direction.
    std::vector<cx> random_amplitudes(int d);

    // Haar-like random unitary: Gram-Schmidt of a Gaussian complex matrix.
    OperatorMatrix random_unitary(int d);

private:
    cx gaussian();

    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qwalk
