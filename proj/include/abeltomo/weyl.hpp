#pragma once

#include <optional>

#include "abeltomo/group.hpp"

namespace abeltomo {

// Clock and shift on L^2(Z_n): U e_j = e^{i 2 pi j/n} e_j, V e_j = e_{j+1}.
// States are column vectors; V[j+1 mod n, j] = 1.

template <typename Scalar = double>
CMatrix<Scalar> build_U(const CyclicGroup& grp) {
    const int n = grp.n();
    CMatrix<Scalar> u = CMatrix<Scalar>::Zero(n, n);
    for (int j = 0; j < n; ++j) u(j, j) = pairing<Scalar>(j, 1, n);
    return u;
}

template <typename Scalar = double>
CMatrix<Scalar> build_V(const CyclicGroup& grp) {
    const int n = grp.n();
    CMatrix<Scalar> v = CMatrix<Scalar>::Zero(n, n);
    for (int j = 0; j < n; ++j) v(mod(j + 1, n), j) = Scalar(1);
    return v;
}

/// (pi(chi, g) f)(a) = chi(a) f(a + g), i.e. pi[a, a+g] = chi_chi(a).
template <typename Scalar = double>
CMatrix<Scalar> displacement(PhasePoint p, const CyclicGroup& grp) {
    const int n = grp.n();
    p = reduce(p, grp);
    CMatrix<Scalar> d = CMatrix<Scalar>::Zero(n, n);
    for (int a = 0; a < n; ++a) d(a, mod(a + p.g, n)) = pairing<Scalar>(p.chi, a, n);
    return d;
}

/// pi_l(kl, k) = (U^l V)^k for l < n, pi_n(k, 0) = U^k.
///
/// Built in closed form: (U^l V)^k = exp(-i 2 pi l k(k-1)/(2n)) pi(kl, -k),
/// with k taken in [0, n). The exponent l k(k-1)/2 is an exact integer.
template <typename Scalar = double>
CMatrix<Scalar> pi_line(int l, int k, const CyclicGroup& grp) {
    const int n = grp.n();
    if (l < 0 || l > n) {
        throw IndexError("line index " + std::to_string(l) + " outside [0, " + std::to_string(n) + "]");
    }
    k = mod(k, n);
    if (l == n) return displacement<Scalar>({k, 0}, grp);
    const std::int64_t tri = std::int64_t(k) * (k - 1) / 2;
    const Complex<Scalar> phase = pairing<Scalar>(-std::int64_t(l) * mod(tri, n), 1, n);
    return phase * displacement<Scalar>({mod(std::int64_t(k) * l, n), -k}, grp);
}

/// Line coordinates (l, k) with pi(p) proportional to pi_line(l, k).
struct LineCoordinate {
    int l = 0;
    int k = 0;
};

/// For a displacement-labelled point p = (chi, g): g = 0 lies on line n with
/// k = chi; otherwise k = -g and l solves k l = chi (mod n). Returns nullopt
/// when no line carries p, which only happens for composite n.
inline std::optional<LineCoordinate> line_coordinates(PhasePoint p, const CyclicGroup& grp) {
    const int n = grp.n();
    p = reduce(p, grp);
    if (p.g == 0) return LineCoordinate{n, p.chi};
    const int k = mod(-p.g, n);
    for (int l = 0; l < n; ++l) {
        if (mod(std::int64_t(k) * l, n) == p.chi) return LineCoordinate{l, k};
    }
    return std::nullopt;
}

/// Max-entry norm of pi(chi'chi, g'+g) - chi(g')^* pi(chi', g') pi(chi, g),
/// with p1 = (chi', g') and p2 = (chi, g).
template <typename Scalar = double>
Scalar verify_projective_identity(PhasePoint p1, PhasePoint p2, const CyclicGroup& grp) {
    const auto lhs = displacement<Scalar>(add(p1, p2, grp), grp);
    const auto cocycle = std::conj(pairing<Scalar>(p2.chi, p1.g, grp));
    const CMatrix<Scalar> rhs = cocycle * displacement<Scalar>(p1, grp) * displacement<Scalar>(p2, grp);
    return max_abs(lhs - rhs);
}

template <typename Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
    using Plain = typename Derived::PlainObject;
    const Plain prod = m * m.adjoint();
    return max_abs(prod - Plain::Identity(m.rows(), m.cols()));
}

/// Tr(A B) in O(n^2).
template <typename DA, typename DB>
auto trace_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

// ---- state validation

struct StateDefects {
    double norm_or_trace = 0;
    double hermitian = 0;
    double min_eigenvalue = 0;
};

template <typename Scalar>
StateDefects density_defects(const CMatrix<Scalar>& rho) {
    StateDefects d;
    d.norm_or_trace = static_cast<double>(std::abs(rho.trace() - Complex<Scalar>(1)));
    d.hermitian = static_cast<double>(max_abs(rho - rho.adjoint()));
    const CMatrix<Scalar> herm = (rho + rho.adjoint()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = static_cast<double>(es.eigenvalues().minCoeff());
    return d;
}

template <typename Scalar>
bool is_density_matrix(const CMatrix<Scalar>& rho, double tol_trace = 1e-10, double tol_herm = 1e-12,
                       double tol_eig = 1e-10) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
    const auto d = density_defects(rho);
    return d.norm_or_trace <= tol_trace && d.hermitian <= tol_herm && d.min_eigenvalue >= -tol_eig;
}

template <typename Scalar>
void require_density_matrix(const CMatrix<Scalar>& rho, double tol_trace = 1e-10, double tol_herm = 1e-12,
                            double tol_eig = 1e-10) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw InvalidState("density matrix must be square");
    const auto d = density_defects(rho);
    if (d.norm_or_trace > tol_trace) throw InvalidState("trace defect " + std::to_string(d.norm_or_trace));
    if (d.hermitian > tol_herm) throw InvalidState("hermiticity defect " + std::to_string(d.hermitian));
    if (d.min_eigenvalue < -tol_eig) throw InvalidState("negative eigenvalue " + std::to_string(d.min_eigenvalue));
}

template <typename Scalar>
void require_state_vector(const CVector<Scalar>& f, double tol = 1e-10) {
    if (f.size() == 0) throw InvalidState("empty state vector");
    const double defect = static_cast<double>(std::abs(f.norm() - Scalar(1)));
    if (defect > tol) throw InvalidState("state vector norm defect " + std::to_string(defect));
}

template <typename Scalar>
CMatrix<Scalar> projector(const CVector<Scalar>& f) {
    return f * f.adjoint();
}

}  // namespace abeltomo
