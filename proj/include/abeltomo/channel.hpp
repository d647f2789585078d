#pragma once

#include <cmath>

#include "abeltomo/tomogram.hpp"

namespace abeltomo {

/// Mixed-unitary Weyl channel rho -> sum_{a,b} q(a, b) W_{a,b} rho W_{a,b}^dagger.
/// q is indexed by line-labelled phase points: (k l, k) on line l < n and
/// (k, 0) on line n, with W the line representation pi_l at that point.
template <typename Scalar = double>
class WeylChannel {
public:
    explicit WeylChannel(RMatrix<Scalar> q, double tol = 1e-12) : q_(std::move(q)) {
        if (q_.rows() != q_.cols() || q_.rows() < 2) throw InvalidChannel("q must be a square grid with n >= 2");
        if (!q_.allFinite()) throw InvalidChannel("q has non-finite entries");
        if (q_.minCoeff() < Scalar(0)) {
            throw InvalidChannel("q has negative entry " + std::to_string(static_cast<double>(q_.minCoeff())));
        }
        const double defect = std::abs(static_cast<double>(q_.sum()) - 1.0);
        if (defect > tol) throw InvalidChannel("q sums to 1 + " + std::to_string(defect));
    }

    static WeylChannel identity(const CyclicGroup& grp) {
        RMatrix<Scalar> q = RMatrix<Scalar>::Zero(grp.n(), grp.n());
        q(0, 0) = 1;
        return WeylChannel(std::move(q));
    }

    static WeylChannel uniform(const CyclicGroup& grp) {
        const int n = grp.n();
        return WeylChannel(RMatrix<Scalar>::Constant(n, n, Scalar(1) / Scalar(n * n)));
    }

    int n() const { return static_cast<int>(q_.rows()); }
    const RMatrix<Scalar>& q() const { return q_; }
    Scalar q(int a, int b) const { return q_(mod(a, n()), mod(b, n())); }

private:
    RMatrix<Scalar> q_;
};

/// Q(m, l) for 0 <= m < n, 0 <= l <= n.
template <typename Scalar = double>
struct LineMarginals {
    RMatrix<Scalar> Q;

    int n() const { return static_cast<int>(Q.rows()); }
    auto column(int l) const { return Q.col(l); }
};

namespace detail {

template <typename Scalar>
void check_channel(const WeylChannel<Scalar>& ch, const CyclicGroup& grp) {
    if (ch.n() != grp.n()) {
        throw DimensionMismatch("channel has n=" + std::to_string(ch.n()) + ", group has n=" + std::to_string(grp.n()));
    }
}

}  // namespace detail

/// Kraus unitary at line-labelled point (a, b): pi_n(a, 0) for b = 0, else
/// pi_l(b l, b) for the first line through the point. Points on no line
/// (composite n) use U^a V^b, which agrees with pi_l up to a phase wherever
/// both exist.
template <typename Scalar = double>
CMatrix<Scalar> weyl_unitary(PhasePoint labelled, const CyclicGroup& grp) {
    const int n = grp.n();
    const PhasePoint p = reduce(labelled, grp);
    if (p.g == 0) return pi_line<Scalar>(n, p.chi, grp);
    for (int l = 0; l < n; ++l) {
        if (mod(std::int64_t(p.g) * l, n) == p.chi) return pi_line<Scalar>(l, p.g, grp);
    }
    return displacement<Scalar>({p.chi, -p.g}, grp);
}

template <typename Scalar>
CMatrix<Scalar> apply(const WeylChannel<Scalar>& ch, const CMatrix<Scalar>& rho, const CyclicGroup& grp) {
    detail::check_channel(ch, grp);
    detail::check_dimension(rho.rows(), rho.cols(), grp);
    const int n = grp.n();
    CMatrix<Scalar> out = CMatrix<Scalar>::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const Scalar w = ch.q(a, b);
            if (w == Scalar(0)) continue;
            const CMatrix<Scalar> u = weyl_unitary<Scalar>({a, b}, grp);
            out.noalias() += w * (u * rho * u.adjoint());
        }
    }
    return out;
}

/// Q(m, l) = sum_k q(m + k l, k) for l < n and Q(m, n) = sum_a q(a, m).
template <typename Scalar>
LineMarginals<Scalar> marginals(const WeylChannel<Scalar>& ch) {
    const int n = ch.n();
    LineMarginals<Scalar> out{RMatrix<Scalar>::Zero(n, n + 1)};
    for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) out.Q(m, l) += ch.q(mod(m + std::int64_t(k) * l, n), k);
        }
    }
    for (int m = 0; m < n; ++m) out.Q(m, n) = ch.q().col(m).sum();
    return out;
}

/// Factor by which the channel multiplies Tr(pi_l(k) rho), k in Z_n:
/// sum_m Q(m, l) e^{-i 2 pi k m/n} for l < n and sum_m Q(m, n) e^{+i 2 pi k m/n}.
/// The sign flip between the two cases comes from pi_l(kl, k) being
/// proportional to pi(kl, -k) while pi_n(k, 0) = pi(k, 0).
template <typename Scalar>
CVector<Scalar> line_multiplier(const LineMarginals<Scalar>& marg, int l) {
    const int n = marg.n();
    const int sign = l < n ? -1 : 1;
    CVector<Scalar> out = CVector<Scalar>::Zero(n);
    for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) out(k) += marg.Q(m, l) * pairing<Scalar>(sign * k, m, n);
    }
    return out;
}

/// Output characteristic function via the line marginals. Each point of the
/// displacement grid is routed to a line carrying it; the rare uncovered
/// points of composite n fall back to the full character sum
/// sum_{a,b} q(a, b) e^{i 2 pi (a g + b chi)/n}.
template <typename Scalar>
CharFunction<Scalar> output_char(const WeylChannel<Scalar>& ch, const CharFunction<Scalar>& F_in,
                                 const CyclicGroup& grp) {
    detail::check_channel(ch, grp);
    detail::check_dimension(F_in.values.rows(), F_in.values.cols(), grp);
    const int n = grp.n();
    const auto marg = marginals(ch);
    std::vector<CVector<Scalar>> mult;
    mult.reserve(n + 1);
    for (int l = 0; l <= n; ++l) mult.push_back(line_multiplier(marg, l));

    CharFunction<Scalar> out{CMatrix<Scalar>(n, n)};
    for (int chi = 0; chi < n; ++chi) {
        for (int g = 0; g < n; ++g) {
            Complex<Scalar> factor(0);
            if (const auto lc = line_coordinates({chi, g}, grp)) {
                factor = mult[lc->l](lc->k);
            } else {
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) {
                        factor += ch.q(a, b) * pairing<Scalar>(std::int64_t(a) * g + std::int64_t(b) * chi, 1, n);
                    }
                }
            }
            out.values(chi, g) = factor * F_in.values(chi, g);
        }
    }
    return out;
}

/// Output tomogram as a per-line cyclic convolution with the marginals:
/// omega_out(j, l) = sum_m Q(m, l) omega_in(j + m, l) for l < n and
/// omega_out(j, n) = sum_m Q(m, n) omega_in(j - m, n).
template <typename Scalar>
Tomogram<Scalar> output_tomogram(const WeylChannel<Scalar>& ch, const Tomogram<Scalar>& t_in,
                                 const CyclicGroup& grp) {
    detail::check_channel(ch, grp);
    const int n = grp.n();
    if (t_in.rows.rows() != n + 1 || t_in.rows.cols() != n) throw DimensionMismatch("tomogram shape mismatch");
    const auto marg = marginals(ch);
    Tomogram<Scalar> out{RMatrix<Scalar>::Zero(n + 1, n)};
    for (int l = 0; l <= n; ++l) {
        const int sign = l < n ? 1 : -1;
        for (int j = 0; j < n; ++j) {
            Scalar acc = 0;
            for (int m = 0; m < n; ++m) acc += marg.Q(m, l) * t_in.rows(l, mod(j + sign * m, n));
            out.rows(l, j) = acc;
        }
    }
    return out;
}

/// Shannon entropy (nats) of each marginal column. Diagnostic only.
template <typename Scalar>
RVector<Scalar> marginal_entropies(const WeylChannel<Scalar>& ch) {
    const auto marg = marginals(ch);
    const int n = ch.n();
    RVector<Scalar> h = RVector<Scalar>::Zero(n + 1);
    for (int l = 0; l <= n; ++l) {
        for (int m = 0; m < n; ++m) {
            const Scalar p = marg.Q(m, l);
            if (p > Scalar(0)) h(l) -= p * std::log(p);
        }
    }
    return h;
}

/// Channel equal to applying `first` and then `second`. Weyl unitaries
/// multiply up to phase by adding labels, so q is the group convolution.
template <typename Scalar>
WeylChannel<Scalar> compose(const WeylChannel<Scalar>& first, const WeylChannel<Scalar>& second) {
    if (first.n() != second.n()) throw DimensionMismatch("composing channels of different n");
    const int n = first.n();
    RMatrix<Scalar> q = RMatrix<Scalar>::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (first.q(a, b) == Scalar(0)) continue;
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) q(mod(a + c, n), mod(b + d, n)) += first.q(a, b) * second.q(c, d);
            }
        }
    }
    return WeylChannel<Scalar>(std::move(q), 1e-10);
}

}  // namespace abeltomo
