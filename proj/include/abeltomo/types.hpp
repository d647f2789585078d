#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace abeltomo {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;
using RMatrixd = RMatrix<double>;
using RVectord = RVector<double>;

template <typename Scalar>
inline constexpr Scalar kPi = Scalar(3.141592653589793238462643383279502884L);

// Error hierarchy. Everything thrown by the library derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidGroup : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct InvalidState : Error {
    using Error::Error;
};

struct InvalidTomogram : Error {
    using Error::Error;
};

struct InvalidChannel : Error {
    using Error::Error;
};

/// A guarantee needs a regime (odd prime n) that the input is not in.
struct UnsupportedRegime : Error {
    using Error::Error;
};

struct ConsistencyError : Error {
    using Error::Error;
};

/// Raised when a spectral projector that should be rank one is not; carries
/// the offending line and eigenvalue index.
struct DegenerateBasis : Error {
    DegenerateBasis(int line, int index, double second_eigenvalue)
        : Error("degenerate basis: projector (l=" + std::to_string(line) +
                ", j=" + std::to_string(index) + ") is not rank one (second eigenvalue " +
                std::to_string(second_eigenvalue) + ")"),
          l(line),
          j(index) {}
    int l;
    int j;
};

struct DomainTruncation : Error {
    DomainTruncation(const std::string& what, double tail_mass)
        : Error(what + " (tail " + std::to_string(tail_mass) + ")"), tail(tail_mass) {}
    double tail;
};

/// Max-entry norm of a dense expression.
template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    if (m.size() == 0) return Real(0);
    return m.cwiseAbs().maxCoeff();
}

}  // namespace abeltomo
