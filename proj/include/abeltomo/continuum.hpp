#pragma once

#include <functional>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "abeltomo/group.hpp"

namespace abeltomo {

// ---------------------------------------------------------------------------
// G = R: wavefunctions on a uniform grid, optical characteristic function and
// optical tomogram.

/// Samples f(x_i), x_i = x_min + i dx, dx = (x_max - x_min) / num_points.
template <typename Scalar = double>
class GridWavefunction {
public:
    GridWavefunction(Scalar x_min, Scalar x_max, CVector<Scalar> samples, double tol = 1e-8)
        : x_min_(x_min), x_max_(x_max), samples_(std::move(samples)) {
        const auto n = samples_.size();
        if (!(x_max_ > x_min_)) throw InvalidState("grid needs x_max > x_min");
        if (n < 2 || (n & (n - 1)) != 0) throw InvalidState("grid size must be a power of two");
        const double defect = std::abs(static_cast<double>(samples_.squaredNorm() * dx()) - 1.0);
        if (defect > tol) throw InvalidState("grid wavefunction norm defect " + std::to_string(defect));
    }

    /// Samples `fn` and rescales so that sum |f|^2 dx = 1.
    static GridWavefunction sample(const std::function<Complex<Scalar>(Scalar)>& fn, Scalar x_min, Scalar x_max,
                                   int num_points) {
        CVector<Scalar> s(num_points);
        const Scalar h = (x_max - x_min) / Scalar(num_points);
        for (int i = 0; i < num_points; ++i) s(i) = fn(x_min + Scalar(i) * h);
        const Scalar norm = std::sqrt(s.squaredNorm() * h);
        if (!(norm > Scalar(0))) throw InvalidState("sampled wavefunction vanishes on the grid");
        return GridWavefunction(x_min, x_max, s / norm);
    }

    Scalar x_min() const { return x_min_; }
    Scalar x_max() const { return x_max_; }
    int num_points() const { return static_cast<int>(samples_.size()); }
    Scalar length() const { return x_max_ - x_min_; }
    Scalar dx() const { return length() / Scalar(num_points()); }
    Scalar x(int i) const { return x_min_ + Scalar(i) * dx(); }
    const CVector<Scalar>& samples() const { return samples_; }

private:
    Scalar x_min_;
    Scalar x_max_;
    CVector<Scalar> samples_;
};

/// Harmonic-oscillator eigenfunction psi_order (hbar = m = omega = 1) by the
/// normalised Hermite recurrence.
template <typename Scalar = double>
Scalar hermite_function(int order, Scalar x) {
    Scalar prev = 0;
    Scalar cur = std::pow(kPi<Scalar>, Scalar(-0.25)) * std::exp(-x * x / Scalar(2));
    for (int k = 0; k < order; ++k) {
        const Scalar next = std::sqrt(Scalar(2) / Scalar(k + 1)) * x * cur - std::sqrt(Scalar(k) / Scalar(k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

template <typename Scalar = double>
GridWavefunction<Scalar> oscillator_eigenstate(int order, Scalar x_min = -8, Scalar x_max = 8, int num_points = 1024) {
    if (order < 0) throw InvalidState("oscillator order must be >= 0");
    return GridWavefunction<Scalar>::sample([order](Scalar x) { return Complex<Scalar>(hermite_function(order, x)); },
                                            x_min, x_max, num_points);
}

enum class Interpolation {
    BandLimited,  ///< exact shift of the trigonometric interpolant on a padded grid
    Linear,       ///< piecewise-linear, zero outside the grid
};

namespace detail {

/// Evaluates F(x, y) = sum_s e^{i x s} f(s + y/2) f^*(s - y/2) ds for one
/// wavefunction. f is zero-padded to twice its length so that shifts up to
/// half the grid never wrap.
template <typename Scalar>
class OpticalEvaluator {
public:
    OpticalEvaluator(const GridWavefunction<Scalar>& f, Interpolation mode) : f_(f), mode_(mode) {
        const int n = f.num_points();
        padded_ = 2 * n;
        offset_ = n / 2;
        s0_ = f.x_min() - Scalar(offset_) * f.dx();
        std::vector<Complex<Scalar>> buf(padded_, Complex<Scalar>(0));
        for (int i = 0; i < n; ++i) buf[offset_ + i] = f.samples()(i);
        fft_.fwd(spectrum_, buf);
        wavenumber_.resize(padded_);
        const Scalar span = Scalar(padded_) * f.dx();
        for (int p = 0; p < padded_; ++p) {
            const int signed_p = p < padded_ / 2 ? p : p - padded_;
            wavenumber_[p] = Scalar(2) * kPi<Scalar> * Scalar(signed_p) / span;
        }
        cumulative_.resize(n + 1, 0);
        for (int i = 0; i < n; ++i) cumulative_[i + 1] = cumulative_[i] + std::norm(f.samples()(i)) * f.dx();
    }

    /// Mass of f within `width` of either end of the grid.
    Scalar edge_mass(Scalar width) const {
        const int n = f_.num_points();
        const int cells = std::min(n / 2, static_cast<int>(std::ceil(width / f_.dx())));
        return cumulative_[cells] + (cumulative_[n] - cumulative_[n - cells]);
    }

    Complex<Scalar> operator()(Scalar x, Scalar y) const {
        const Scalar half = y / Scalar(2);
        if (y != Scalar(0)) {
            const Scalar tail = edge_mass(std::min(std::abs(half), f_.length() / Scalar(8)));
            if (tail > Scalar(1e-6)) {
                throw DomainTruncation("shifted wavefunction leaves the grid", static_cast<double>(tail));
            }
        }
        if (std::abs(y) >= f_.length()) return Complex<Scalar>(0);
        const auto plus = shifted(half);
        const auto minus = shifted(-half);
        // e^{ixs} by a rotating phasor, re-anchored every 64 samples.
        const Complex<Scalar> step = std::polar(Scalar(1), x * f_.dx());
        Complex<Scalar> acc(0);
        Complex<Scalar> phase(1);
        for (int i = 0; i < padded_; ++i) {
            if (i % 64 == 0) phase = std::polar(Scalar(1), x * (s0_ + Scalar(i) * f_.dx()));
            acc += phase * plus[i] * std::conj(minus[i]);
            phase *= step;
        }
        return acc * f_.dx();
    }

private:
    /// Samples of s -> f(s + d) on the padded grid.
    std::vector<Complex<Scalar>> shifted(Scalar d) const {
        std::vector<Complex<Scalar>> out(padded_, Complex<Scalar>(0));
        if (d == Scalar(0)) {
            for (int i = 0; i < f_.num_points(); ++i) out[offset_ + i] = f_.samples()(i);
            return out;
        }
        if (mode_ == Interpolation::BandLimited) {
            std::vector<Complex<Scalar>> spec(spectrum_);
            const int nyquist = padded_ / 2;
            const Complex<Scalar> step = std::polar(Scalar(1), wavenumber_[1] * d);
            Complex<Scalar> up(1), down(1);
            for (int p = 1; p < nyquist; ++p) {
                if (p % 64 == 0) {
                    up = std::polar(Scalar(1), wavenumber_[p] * d);
                    down = std::conj(up);
                } else {
                    up *= step;
                    down *= std::conj(step);
                }
                spec[p] *= up;
                spec[padded_ - p] *= down;
            }
            spec[nyquist] *= std::cos(wavenumber_[nyquist] * d);
            fft_.inv(out, spec);
            return out;
        }
        const int n = f_.num_points();
        const Scalar shift_cells = d / f_.dx();
        for (int i = 0; i < padded_; ++i) {
            const Scalar pos = Scalar(i - offset_) + shift_cells;
            const auto lo = static_cast<int>(std::floor(pos));
            const Scalar frac = pos - Scalar(lo);
            const auto at = [&](int idx) { return idx >= 0 && idx < n ? f_.samples()(idx) : Complex<Scalar>(0); };
            out[i] = (Scalar(1) - frac) * at(lo) + frac * at(lo + 1);
        }
        return out;
    }

    const GridWavefunction<Scalar>& f_;
    Interpolation mode_;
    int padded_ = 0;
    int offset_ = 0;
    Scalar s0_ = 0;
    std::vector<Complex<Scalar>> spectrum_;
    std::vector<Scalar> wavenumber_;
    std::vector<Scalar> cumulative_;
    mutable Eigen::FFT<Scalar> fft_;
};

}  // namespace detail

/// F_f(t cos phi, t sin phi) with F_f(x, y) = int e^{ixs} f(s + y/2) f^*(s - y/2) ds.
template <typename Scalar>
Complex<Scalar> optical_char(const GridWavefunction<Scalar>& f, Scalar t, Scalar phi,
                             Interpolation mode = Interpolation::BandLimited) {
    const detail::OpticalEvaluator<Scalar> eval(f, mode);
    return eval(t * std::cos(phi), t * std::sin(phi));
}

template <typename Scalar = double>
struct OpticalTomogram {
    Scalar phi = 0;
    RVector<Scalar> X;
    RVector<Scalar> density;
    Scalar dX = 0;
    /// Smallest density value before clipping.
    Scalar min_before_clip = 0;
    /// sum density * dX after clipping.
    Scalar mass = 0;
    /// Largest |F| among the outermost t samples.
    Scalar char_tail = 0;
};

/// omega(X, phi) = (1/2pi) int e^{-iXt} F_f(t cos phi, t sin phi) dt from
/// num_t samples t_i = -t_max + i dt, dt = 2 t_max / num_t, evaluated on the
/// FFT grid X_j = j pi / t_max, j in [-num_t/2, num_t/2).
template <typename Scalar>
OpticalTomogram<Scalar> optical_tomogram(const GridWavefunction<Scalar>& f, Scalar phi, Scalar t_max = 16,
                                         int num_t = 2048, Interpolation mode = Interpolation::BandLimited) {
    if (num_t < 4 || num_t % 2 != 0) throw InvalidState("num_t must be even and >= 4");
    if (!(t_max > Scalar(0))) throw InvalidState("t_max must be positive");
    const detail::OpticalEvaluator<Scalar> eval(f, mode);
    const Scalar dt = Scalar(2) * t_max / Scalar(num_t);
    const Scalar c = std::cos(phi);
    const Scalar s = std::sin(phi);

    std::vector<Complex<Scalar>> samples(num_t);
    const int half = num_t / 2;
    // Hermitian state: F(-t) = F(t)^*.
    for (int i = half; i < num_t; ++i) {
        const Scalar t = -t_max + Scalar(i) * dt;
        samples[i] = eval(t * c, t * s);
        if (i > half) samples[num_t - i] = std::conj(samples[i]);
    }
    samples[0] = eval(-t_max * c, -t_max * s);

    OpticalTomogram<Scalar> out;
    out.phi = phi;
    const int edge = std::max(1, num_t / 100);
    for (int i = 0; i < edge; ++i) {
        out.char_tail = std::max({out.char_tail, std::abs(samples[i]), std::abs(samples[num_t - 1 - i])});
    }
    if (out.char_tail > Scalar(1e-8)) {
        throw DomainTruncation("characteristic function not decayed at t_max", static_cast<double>(out.char_tail));
    }

    Eigen::FFT<Scalar> fft;
    std::vector<Complex<Scalar>> spectrum;
    fft.fwd(spectrum, samples);

    out.dX = kPi<Scalar> / t_max;
    out.X.resize(num_t);
    out.density.resize(num_t);
    Scalar min_raw = std::numeric_limits<Scalar>::max();
    for (int idx = 0; idx < num_t; ++idx) {
        const int j = idx - half;
        const Complex<Scalar> v = spectrum[mod(j, num_t)] * (j % 2 == 0 ? Scalar(1) : Scalar(-1));
        const Scalar rho = std::real(v) * dt / (Scalar(2) * kPi<Scalar>);
        min_raw = std::min(min_raw, rho);
        out.X(idx) = Scalar(j) * out.dX;
        out.density(idx) = rho;
    }
    out.min_before_clip = min_raw;
    if (min_raw < Scalar(-1e-6)) {
        throw ConsistencyError("optical density dips to " + std::to_string(static_cast<double>(min_raw)));
    }
    out.density = out.density.cwiseMax(Scalar(0));
    out.mass = out.density.sum() * out.dX;
    return out;
}

// ---------------------------------------------------------------------------
// G = T: trigonometric-polynomial states f(psi) = sum_{|k|<=M} c_k e^{ik psi}
// with sum |c_k|^2 = 1, so int |f|^2 dpsi = 2 pi = F(0, 0).

template <typename Scalar = double>
class CircleState {
public:
    CircleState(int M, CVector<Scalar> coeffs, double tol = 1e-10) : M_(M), coeffs_(std::move(coeffs)) {
        if (M_ < 0) throw InvalidState("truncation order must be >= 0");
        if (coeffs_.size() != 2 * M_ + 1) throw InvalidState("circle state needs 2M+1 coefficients");
        const double defect = std::abs(static_cast<double>(coeffs_.squaredNorm()) - 1.0);
        if (defect > tol) throw InvalidState("circle state norm defect " + std::to_string(defect));
    }

    static CircleState single_mode(int M, int k0) {
        if (k0 < -M || k0 > M) throw IndexError("mode outside truncation");
        CVector<Scalar> c = CVector<Scalar>::Zero(2 * M + 1);
        c(k0 + M) = Scalar(1);
        return CircleState(M, std::move(c));
    }

    int M() const { return M_; }
    const CVector<Scalar>& coeffs() const { return coeffs_; }
    /// c_k, zero outside [-M, M].
    Complex<Scalar> c(int k) const { return k < -M_ || k > M_ ? Complex<Scalar>(0) : coeffs_(k + M_); }

    /// f(psi) = sum_k c_k e^{ik psi}.
    Complex<Scalar> operator()(Scalar psi) const {
        Complex<Scalar> acc(0);
        for (int k = -M_; k <= M_; ++k) acc += c(k) * std::polar(Scalar(1), Scalar(k) * psi);
        return acc;
    }

private:
    int M_;
    CVector<Scalar> coeffs_;
};

/// F(m, m theta) = int e^{im psi} f(psi + m theta/2) f^*(psi - m theta/2) dpsi
///               = 2 pi sum_k c_k c_{k+m}^* e^{i (k + m/2) m theta}.
template <typename Scalar>
Complex<Scalar> circle_char_line(const CircleState<Scalar>& s, int m, Scalar theta) {
    Complex<Scalar> acc(0);
    const int M = s.M();
    for (int k = -M; k <= M; ++k) {
        const auto partner = s.c(k + m);
        if (partner == Complex<Scalar>(0)) continue;
        acc += s.c(k) * std::conj(partner) * std::polar(Scalar(1), (Scalar(k) + Scalar(m) / Scalar(2)) * Scalar(m) * theta);
    }
    return Scalar(2) * kPi<Scalar> * acc;
}

/// F(0, phi) = int f(psi + phi) f^*(psi) dpsi = 2 pi sum_k |c_k|^2 e^{ik phi}.
template <typename Scalar>
Complex<Scalar> circle_char_star(const CircleState<Scalar>& s, Scalar phi) {
    Complex<Scalar> acc(0);
    for (int k = -s.M(); k <= s.M(); ++k) acc += std::norm(s.c(k)) * std::polar(Scalar(1), Scalar(k) * phi);
    return Scalar(2) * kPi<Scalar> * acc;
}

/// omega(n, *) for n in [-M, M], normalised by F(0, 0). Evaluated from the
/// integral by a uniform rule that is exact at this degree, then checked
/// against |c_n|^2.
template <typename Scalar>
RVector<Scalar> circle_tomogram_star(const CircleState<Scalar>& s) {
    const int M = s.M();
    const int nodes = 4 * M + 2;
    const Scalar h = Scalar(2) * kPi<Scalar> / Scalar(nodes);
    std::vector<Complex<Scalar>> F(nodes);
    for (int i = 0; i < nodes; ++i) F[i] = circle_char_star(s, Scalar(i) * h);
    const Complex<Scalar> F00 = circle_char_star(s, Scalar(0));

    RVector<Scalar> masses(2 * M + 1);
    for (int n = -M; n <= M; ++n) {
        Complex<Scalar> acc(0);
        for (int i = 0; i < nodes; ++i) acc += std::polar(Scalar(1), -Scalar(n) * Scalar(i) * h) * F[i];
        const Scalar mass = std::real(acc * h / (Scalar(2) * kPi<Scalar>) / F00);
        masses(n + M) = mass;
        if (std::abs(mass - std::norm(s.c(n))) > Scalar(1e-9)) {
            throw ConsistencyError("circle star tomogram disagrees with coefficients at n=" + std::to_string(n));
        }
    }
    return masses;
}

template <typename Scalar = double>
struct CircleDensity {
    Scalar theta = 0;
    RVector<Scalar> x;
    RVector<Scalar> density;
    Scalar max_imag = 0;
    Scalar min_before_clip = 0;
    Scalar mass = 0;
};

/// Density on the dual circle of the line G_theta:
/// omega(x, theta) = (1/2pi) sum_{|m| <= 2M} e^{-ixm} F(m, m theta) / F(0, 0),
/// at x_j = 2 pi j / num_x.
template <typename Scalar>
CircleDensity<Scalar> circle_tomogram_line(const CircleState<Scalar>& s, Scalar theta, int num_x = 256) {
    if (num_x < 1) throw InvalidState("num_x must be positive");
    const int M = s.M();
    const int span = 2 * M;
    const Scalar F00 = std::real(circle_char_line(s, 0, theta));
    std::vector<Complex<Scalar>> F(2 * span + 1);
    for (int m = -span; m <= span; ++m) F[m + span] = circle_char_line(s, m, theta) / F00;

    CircleDensity<Scalar> out;
    out.theta = theta;
    out.x.resize(num_x);
    out.density.resize(num_x);
    const Scalar two_pi = Scalar(2) * kPi<Scalar>;
    out.min_before_clip = std::numeric_limits<Scalar>::max();
    for (int j = 0; j < num_x; ++j) {
        const Scalar x = two_pi * Scalar(j) / Scalar(num_x);
        Complex<Scalar> acc(0);
        for (int m = -span; m <= span; ++m) acc += std::polar(Scalar(1), -x * Scalar(m)) * F[m + span];
        acc /= two_pi;
        out.x(j) = x;
        out.density(j) = std::real(acc);
        out.max_imag = std::max(out.max_imag, std::abs(std::imag(acc)));
        out.min_before_clip = std::min(out.min_before_clip, std::real(acc));
    }
    if (out.min_before_clip < Scalar(-1e-8)) {
        throw ConsistencyError("circle density dips to " + std::to_string(static_cast<double>(out.min_before_clip)));
    }
    out.density = out.density.cwiseMax(Scalar(0));
    out.mass = out.density.sum() * two_pi / Scalar(num_x);
    return out;
}

}  // namespace abeltomo
