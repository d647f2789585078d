#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "abeltomo/types.hpp"

namespace abeltomo {

/// Reduce an arbitrary integer into [0, n).
constexpr int mod(std::int64_t a, int n) {
    const std::int64_t r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

/// Trial-division primality test.
bool is_prime(int n);

/// The cyclic group Z_n, n >= 2.
class CyclicGroup {
public:
    explicit CyclicGroup(int n);

    int n() const { return n_; }
    bool is_prime() const { return prime_; }
    bool is_odd_prime() const { return prime_ && n_ % 2 == 1; }

    friend bool operator==(const CyclicGroup&, const CyclicGroup&) = default;

private:
    int n_;
    bool prime_;
};

/// A point (chi, g) of the phase space Z_n x Z_n. chi is a character index.
struct PhasePoint {
    int chi = 0;
    int g = 0;

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
    friend auto operator<=>(const PhasePoint&, const PhasePoint&) = default;
};

inline PhasePoint reduce(PhasePoint p, const CyclicGroup& grp) {
    return {mod(p.chi, grp.n()), mod(p.g, grp.n())};
}

inline PhasePoint add(PhasePoint a, PhasePoint b, const CyclicGroup& grp) {
    return {mod(std::int64_t(a.chi) + b.chi, grp.n()), mod(std::int64_t(a.g) + b.g, grp.n())};
}

/// G_l = {(k*l, k)} for l < n and G_n = {(k, 0)}; points are ordered by k.
struct LineSubgroup {
    int l = 0;
    std::vector<PhasePoint> points;

    bool contains(PhasePoint p) const;
};

LineSubgroup line_subgroup(int l, const CyclicGroup& grp);

/// How the n+1 line subgroups cover Z_n x Z_n. For composite n the cover is
/// deficient; that is reported, not thrown.
struct CoverReport {
    int n = 0;
    int covered = 0;
    /// intersection_sizes[l][l'] = |G_l ∩ G_l'|, (n+1) x (n+1).
    std::vector<std::vector<int>> intersection_sizes;
    std::vector<PhasePoint> uncovered;

    bool full_cover() const { return covered == n * n; }
    /// True iff every pair of distinct lines meets only at the origin.
    bool trivial_intersections() const;
};

CoverReport cover_report(const CyclicGroup& grp);

/// chi_k(m) = exp(i 2 pi k m / n). The product k*m is reduced exactly in
/// integers before the angle is formed.
template <typename Scalar = double>
Complex<Scalar> pairing(std::int64_t k, std::int64_t m, int n) {
    if (n < 2) throw InvalidGroup("cyclic group needs n >= 2, got " + std::to_string(n));
    const int r = mod(mod(k, n) * std::int64_t(mod(m, n)), n);
    const Scalar angle = Scalar(2) * kPi<Scalar> * Scalar(r) / Scalar(n);
    return std::polar(Scalar(1), angle);
}

template <typename Scalar = double>
Complex<Scalar> pairing(std::int64_t k, std::int64_t m, const CyclicGroup& grp) {
    return pairing<Scalar>(k, m, grp.n());
}

/// (e^{i phi})^{1/2} = e^{i phi/2} with phi first reduced into [0, 2 pi).
template <typename Scalar = double>
Complex<Scalar> half_phase(Scalar phi) {
    const Scalar two_pi = Scalar(2) * kPi<Scalar>;
    Scalar reduced = std::fmod(phi, two_pi);
    if (reduced < 0) reduced += two_pi;
    if (reduced >= two_pi) reduced = 0;
    return std::polar(Scalar(1), reduced / Scalar(2));
}

}  // namespace abeltomo
