#include "qwalk/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

cx Sampler::gaussian() {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return {re, im};
}

std::vector<cx> Sampler::random_amplitudes(int d) {
    if (d < 1) {
        throw std::invalid_argument("random_amplitudes: dimension must be >= 1");
    }
    std::vector<cx> amps(static_cast<std::size_t>(d));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (cx& a : amps) {
            a = gaussian();
            norm_sq += std::norm(a);
        }
    } while (norm_sq < 1e-12);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (cx& a : amps) a *= inv;
    return amps;
}

OperatorMatrix Sampler::random_unitary(int d) {
    if (d < 1) {
        throw std::invalid_argument("random_unitary: dimension must be >= 1");
    }
    // Columns: Gaussian draws, modified Gram-Schmidt.
    std::vector<std::vector<cx>> cols(static_cast<std::size_t>(d),
                                      std::vector<cx>(static_cast<std::size_t>(d)));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        std::vector<cx>& col = cols[c];
        bool independent = false;
        while (!independent) {
            for (cx& v : col) v = gaussian();
            // remove projections onto the columns already fixed
            for (std::size_t prev = 0; prev < c; ++prev) {
                cx overlap{0.0, 0.0};
                for (std::size_t i = 0; i < col.size(); ++i) {
                    overlap += std::conj(cols[prev][i]) * col[i];
                }
                for (std::size_t i = 0; i < col.size(); ++i) {
                    col[i] -= overlap * cols[prev][i];
                }
            }
            double norm_sq = 0.0;
            for (const cx& v : col) norm_sq += std::norm(v);
            if (norm_sq > 1e-12) {
                const double inv = 1.0 / std::sqrt(norm_sq);
                for (cx& v : col) v *= inv;
                independent = true;
            }
        }
    }
    OperatorMatrix u = OperatorMatrix::zero(SpaceShape({d}));
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            u.set(r, c, cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
        }
    }
    return u;
}

}  // namespace qwalk
