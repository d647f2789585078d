#pragma once

#include <algorithm>

#include "abeltomo/char_map.hpp"

namespace abeltomo {

/// (n+1) x n table of line distributions: rows(l, j) = omega(j, l).
template <typename Scalar = double>
struct Tomogram {
    RMatrix<Scalar> rows;

    int n() const { return static_cast<int>(rows.cols()); }
};

/// F_l(k) = Tr(pi_l(k) rho), k in Z_n.
template <typename Scalar>
CVector<Scalar> restricted_char(const CMatrix<Scalar>& rho, int l, const CyclicGroup& grp) {
    detail::check_dimension(rho.rows(), rho.cols(), grp);
    const int n = grp.n();
    CVector<Scalar> out(n);
    for (int k = 0; k < n; ++k) out(k) = trace_product(pi_line<Scalar>(l, k, grp), rho);
    return out;
}

/// omega(j) = (1/n) sum_k e^{-i 2 pi j k/n} F(k), before any clipping.
template <typename Scalar>
CVector<Scalar> line_density_raw(const CVector<Scalar>& restricted, const CyclicGroup& grp) {
    const int n = grp.n();
    CVector<Scalar> out = CVector<Scalar>::Zero(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) out(j) += std::conj(pairing<Scalar>(j, k, n)) * restricted(k);
    }
    return out / Scalar(n);
}

/// Spectral projector of U^l V (or U for l = n) onto eigenvalue e^{i 2 pi j/n}:
/// P = (1/n) sum_k e^{-i 2 pi j k/n} pi_l(k). For l = n this is |e_j><e_j|.
template <typename Scalar = double>
CMatrix<Scalar> mub_projector(int l, int j, const CyclicGroup& grp) {
    const int n = grp.n();
    CMatrix<Scalar> p = CMatrix<Scalar>::Zero(n, n);
    for (int k = 0; k < n; ++k) p += std::conj(pairing<Scalar>(j, k, n)) * pi_line<Scalar>(l, k, grp);
    return p / Scalar(n);
}

template <typename Scalar = double>
struct MubBasis {
    int l = 0;
    /// Column j is e_j^l.
    CMatrix<Scalar> vectors;
    /// False outside the odd-prime regime, where unbiasedness is not promised.
    bool guaranteed = true;
};

/// Builds each e_j^l from its projector, checking the projector is rank one.
/// The global phase makes the first nonzero component real positive.
template <typename Scalar = double>
MubBasis<Scalar> mub_basis(int l, const CyclicGroup& grp) {
    const int n = grp.n();
    if (l < 0 || l > n) throw IndexError("line index " + std::to_string(l) + " out of range");
    MubBasis<Scalar> basis{l, CMatrix<Scalar>(n, n), grp.is_odd_prime()};
    for (int j = 0; j < n; ++j) {
        const CMatrix<Scalar> p = mub_projector<Scalar>(l, j, grp);
        const CMatrix<Scalar> herm = (p + p.adjoint()) / Scalar(2);
        Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(herm);
        const auto& ev = es.eigenvalues();  // ascending
        const double second = n > 1 ? static_cast<double>(ev(n - 2)) : 0.0;
        const double skew = static_cast<double>(max_abs(p - p.adjoint()));
        if (std::abs(second) > 1e-8 || skew > 1e-8 || std::abs(static_cast<double>(ev(n - 1)) - 1.0) > 1e-8) {
            throw DegenerateBasis(l, j, std::max(std::abs(second), skew));
        }
        CVector<Scalar> v = es.eigenvectors().col(n - 1);
        for (int a = 0; a < n; ++a) {
            if (std::abs(v(a)) > Scalar(1e-8)) {
                v *= std::conj(v(a)) / std::abs(v(a));
                v(a) = Complex<Scalar>(std::real(v(a)), Scalar(0));
                break;
            }
        }
        basis.vectors.col(j) = v / v.norm();
    }
    return basis;
}

/// Tomogram via the line characteristic functions and an inverse DFT.
/// Rounding negatives in (-1e-10, 0) are clipped and rows renormalised.
template <typename Scalar>
Tomogram<Scalar> tomogram(const CMatrix<Scalar>& rho, const CyclicGroup& grp) {
    const int n = grp.n();
    Tomogram<Scalar> t{RMatrix<Scalar>(n + 1, n)};
    for (int l = 0; l <= n; ++l) {
        const CVector<Scalar> raw = line_density_raw(restricted_char(rho, l, grp), grp);
        const Scalar residue = raw.imag().cwiseAbs().maxCoeff();
        if (residue > Scalar(1e-8)) {
            throw ConsistencyError("tomogram row " + std::to_string(l) + " has imaginary residue " +
                                   std::to_string(static_cast<double>(residue)));
        }
        RVector<Scalar> row = raw.real();
        if (row.minCoeff() < Scalar(-1e-10)) {
            throw InvalidState("tomogram row " + std::to_string(l) + " has negative mass " +
                               std::to_string(static_cast<double>(row.minCoeff())) +
                               "; input is not positive (see bochner_check)");
        }
        row = row.cwiseMax(Scalar(0));
        const Scalar total = row.sum();
        if (total > Scalar(0)) row /= total;
        t.rows.row(l) = row.transpose();
    }
    return t;
}

/// Tomogram via MUB overlaps: rows(l, j) = <e_j^l, rho e_j^l>.
template <typename Scalar>
Tomogram<Scalar> overlap_tomogram(const CMatrix<Scalar>& rho, const CyclicGroup& grp) {
    detail::check_dimension(rho.rows(), rho.cols(), grp);
    const int n = grp.n();
    Tomogram<Scalar> t{RMatrix<Scalar>(n + 1, n)};
    for (int l = 0; l <= n; ++l) {
        const auto basis = mub_basis<Scalar>(l, grp);
        for (int j = 0; j < n; ++j) {
            const auto e = basis.vectors.col(j);
            t.rows(l, j) = std::real(e.dot(rho * e));
        }
    }
    return t;
}

/// Most negative entry of line l's density before clipping. Nonnegative for
/// states in the odd-prime regime; strictly negative flags a non-positive input.
template <typename Scalar>
Scalar bochner_check(const CMatrix<Scalar>& rho, int l, const CyclicGroup& grp) {
    return line_density_raw(restricted_char(rho, l, grp), grp).real().minCoeff();
}

/// Largest |row sum - 1| and most negative entry.
template <typename Scalar>
std::pair<Scalar, Scalar> tomogram_defects(const Tomogram<Scalar>& t) {
    const Scalar sum_defect = (t.rows.rowwise().sum().array() - Scalar(1)).abs().maxCoeff();
    return {sum_defect, t.rows.minCoeff()};
}

/// rho = sum_{l,j} omega(j, l) |e_j^l><e_j^l| - I. Needs n odd prime.
template <typename Scalar>
CMatrix<Scalar> reconstruct_from_tomogram(const Tomogram<Scalar>& t, const CyclicGroup& grp) {
    const int n = grp.n();
    if (!grp.is_odd_prime()) {
        throw UnsupportedRegime("tomogram reconstruction needs odd prime n, got " + std::to_string(n));
    }
    if (t.rows.rows() != n + 1 || t.rows.cols() != n) {
        throw DimensionMismatch("tomogram shape does not match n=" + std::to_string(n));
    }
    const Scalar sum_defect = tomogram_defects(t).first;
    if (sum_defect > Scalar(1e-8)) {
        throw InvalidTomogram("tomogram row sum defect " + std::to_string(static_cast<double>(sum_defect)));
    }
    CMatrix<Scalar> rho = -CMatrix<Scalar>::Identity(n, n);
    for (int l = 0; l <= n; ++l) {
        for (int j = 0; j < n; ++j) {
            rho += t.rows(l, j) * mub_projector<Scalar>(l, j, grp);
        }
    }
    return rho;
}

}  // namespace abeltomo
