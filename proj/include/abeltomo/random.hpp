#pragma once

#include <cstdint>
#include <random>

#include "abeltomo/channel.hpp"
#include "abeltomo/continuum.hpp"

namespace abeltomo {

/// Seeded generator with a pinned output transform: uniforms take the top 53
/// bits of mt19937_64, normals come from Box-Muller on those uniforms. Unlike
/// std:: distributions this sequence is the same on every standard library.
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64/u53/box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi<double> * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        return {re, normal()};
    }

    /// Integer uniform in [0, bound).
    int below(int bound) { return static_cast<int>(uniform() * bound); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

inline CVectord random_state_vector(int n, Rng& rng) {
    CVectord f(n);
    for (int i = 0; i < n; ++i) f(i) = rng.complex_normal();
    return f / f.norm();
}

/// Ginibre-induced mixed state G G^dagger / Tr.
inline CMatrixd random_density_matrix(int n, Rng& rng) {
    CMatrixd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    CMatrixd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

/// Arbitrary (non-Hermitian) complex matrix.
inline CMatrixd random_operator(int n, Rng& rng) {
    CMatrixd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
    return a;
}

/// q with i.i.d. exponential weights (flat Dirichlet), optionally sparse.
inline WeylChannel<double> random_channel(int n, Rng& rng, double keep_probability = 1.0) {
    RMatrixd q(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            const bool keep = rng.uniform() < keep_probability;
            q(a, b) = keep ? -std::log(u) : 0.0;
        }
    }
    if (q.sum() <= 0.0) q(0, 0) = 1.0;
    return WeylChannel<double>(q / q.sum());
}

inline CircleState<double> random_circle_state(int M, Rng& rng) {
    CVectord c(2 * M + 1);
    for (int i = 0; i < c.size(); ++i) c(i) = rng.complex_normal();
    return CircleState<double>(M, c / c.norm());
}

}  // namespace abeltomo
