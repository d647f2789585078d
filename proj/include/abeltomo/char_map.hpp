#pragma once

#include <utility>
#include <vector>

#include "abeltomo/weyl.hpp"

namespace abeltomo {

/// Image of an operator under the characteristic-function map:
/// values(chi, g) = Tr(pi(chi, g) rho).
template <typename Scalar = double>
struct CharFunction {
    CMatrix<Scalar> values;

    int n() const { return static_cast<int>(values.rows()); }
    Complex<Scalar> operator()(PhasePoint p) const {
        return values(mod(p.chi, n()), mod(p.g, n()));
    }
};

namespace detail {

inline void check_dimension(Eigen::Index rows, Eigen::Index cols, const CyclicGroup& grp) {
    if (rows != grp.n() || cols != grp.n()) {
        throw DimensionMismatch("operator is " + std::to_string(rows) + "x" + std::to_string(cols) +
                                ", group has n=" + std::to_string(grp.n()));
    }
}

}  // namespace detail

/// Characteristic function of a Hilbert-Schmidt operator. Reference path:
/// n^2 trace evaluations, each O(n^2) because pi(chi, g) is monomial.
template <typename Scalar>
CharFunction<Scalar> phi(const CMatrix<Scalar>& rho, const CyclicGroup& grp) {
    detail::check_dimension(rho.rows(), rho.cols(), grp);
    const int n = grp.n();
    CharFunction<Scalar> out{CMatrix<Scalar>(n, n)};
    for (int chi = 0; chi < n; ++chi) {
        for (int g = 0; g < n; ++g) {
            out.values(chi, g) = trace_product(displacement<Scalar>({chi, g}, grp), rho);
        }
    }
    return out;
}

/// Phi(|f><h|)(chi, g) = <h, pi(chi, g) f>.
template <typename Scalar>
CharFunction<Scalar> phi_rank_one(const CVector<Scalar>& f, const CVector<Scalar>& h, const CyclicGroup& grp) {
    detail::check_dimension(f.size(), h.size(), grp);
    const int n = grp.n();
    CharFunction<Scalar> out{CMatrix<Scalar>(n, n)};
    for (int chi = 0; chi < n; ++chi) {
        for (int g = 0; g < n; ++g) {
            out.values(chi, g) = h.dot(displacement<Scalar>({chi, g}, grp) * f);
        }
    }
    return out;
}

/// Squared norm on the dual-times-group space: counting measure on Z_n and
/// counting measure / n on the dual.
template <typename Scalar>
Scalar char_norm_squared(const CharFunction<Scalar>& F) {
    return F.values.squaredNorm() / Scalar(F.n());
}

/// | ||Phi(rho)||^2 - Tr(rho^* rho) |.
template <typename Scalar>
Scalar parseval_defect(const CMatrix<Scalar>& rho, const CyclicGroup& grp) {
    const auto F = phi(rho, grp);
    const Scalar hs = std::real(trace_product(CMatrix<Scalar>(rho.adjoint()), rho));
    return std::abs(char_norm_squared(F) - hs);
}

/// rho = (1/n) sum F(chi, g) pi(chi, g)^dagger.
template <typename Scalar>
CMatrix<Scalar> phi_inverse(const CharFunction<Scalar>& F, const CyclicGroup& grp) {
    detail::check_dimension(F.values.rows(), F.values.cols(), grp);
    const int n = grp.n();
    CMatrix<Scalar> rho = CMatrix<Scalar>::Zero(n, n);
    for (int chi = 0; chi < n; ++chi) {
        for (int g = 0; g < n; ++g) {
            rho.noalias() += F.values(chi, g) * displacement<Scalar>({chi, g}, grp).adjoint();
        }
    }
    return rho / Scalar(n);
}

/// A finite combination of point evaluations sum_i c_i delta_{p_i}; the
/// symbol of sum_i c_i pi(p_i).
template <typename Scalar = double>
class Symbol {
public:
    using Term = std::pair<PhasePoint, Complex<Scalar>>;

    Symbol() = default;
    explicit Symbol(std::vector<Term> terms) : terms_(std::move(terms)) {
        for (std::size_t a = 0; a < terms_.size(); ++a) {
            for (std::size_t b = a + 1; b < terms_.size(); ++b) {
                if (terms_[a].first == terms_[b].first) throw Error("symbol has repeated phase point");
            }
        }
    }

    static Symbol delta(PhasePoint p, Complex<Scalar> c = Complex<Scalar>(1)) { return Symbol({{p, c}}); }

    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

/// <W, F> for a finite delta symbol.
template <typename Scalar>
Complex<Scalar> mean_value(const Symbol<Scalar>& sym, const CharFunction<Scalar>& F) {
    Complex<Scalar> acc(0);
    const int n = F.n();
    for (const auto& [p, c] : sym.terms()) {
        if (p.chi < 0 || p.chi >= n || p.g < 0 || p.g >= n) {
            throw IndexError("symbol point (" + std::to_string(p.chi) + "," + std::to_string(p.g) +
                             ") outside Z_" + std::to_string(n) + " x Z_" + std::to_string(n));
        }
        acc += c * F.values(p.chi, p.g);
    }
    return acc;
}

}  // namespace abeltomo
