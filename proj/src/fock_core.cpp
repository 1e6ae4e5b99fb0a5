#include "fockpr/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fockpr/errors.hpp"

namespace fockpr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (pi^n / n!)^{1/2} via lgamma, exact enough down to 1e-16 relative.
double basis_factor(int n) {
    return std::exp(0.5 * (n * std::log(kPi) - std::lgamma(n + 1.0)));
}

} // namespace

std::vector<cplx> trim_coeffs(std::vector<cplx> coeffs) {
    if (coeffs.empty()) return {cplx(0.0)};
    double peak = 0.0;
    for (const cplx& c : coeffs) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return {cplx(0.0)};
    std::size_t last = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (std::abs(coeffs[i]) > kTrimTol * peak) last = i;
    }
    coeffs.resize(last + 1);
    return coeffs;
}

HermiteExpansion::HermiteExpansion(std::vector<cplx> coeffs)
    : coeffs_(trim_coeffs(std::move(coeffs))) {}

bool HermiteExpansion::is_zero() const noexcept {
    return coeffs_.size() == 1 && coeffs_[0] == cplx(0.0);
}

double HermiteExpansion::norm() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

FockPolynomial::FockPolynomial(std::vector<cplx> coeffs)
    : coeffs_(trim_coeffs(std::move(coeffs))) {}

bool FockPolynomial::is_zero() const noexcept {
    return coeffs_.size() == 1 && coeffs_[0] == cplx(0.0);
}

double FockPolynomial::max_coeff() const {
    double peak = 0.0;
    for (const cplx& c : coeffs_) peak = std::max(peak, std::abs(c));
    return peak;
}

FockPolynomial hermite_to_fock(const HermiteExpansion& h) {
    std::vector<cplx> out(h.coeffs().size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = h.coeffs()[n] * basis_factor(static_cast<int>(n));
    return FockPolynomial(std::move(out));
}

HermiteExpansion fock_to_hermite(const FockPolynomial& p) {
    std::vector<cplx> out(p.coeffs().size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = p.coeffs()[n] / basis_factor(static_cast<int>(n));
    return HermiteExpansion(std::move(out));
}

cplx eval_poly(const FockPolynomial& p, cplx z) {
    const auto& c = p.coeffs();
    if (std::abs(z) <= 1.0) {
        cplx acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
        return acc;
    }
    // reversed Horner in 1/z keeps intermediate magnitudes near the result
    cplx w = 1.0 / z;
    cplx acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc = acc * w + c[i];
    cplx zn = 1.0;
    for (std::size_t i = 1; i < c.size(); ++i) zn *= z;
    return acc * zn;
}

double eval_poly_log_abs(const FockPolynomial& p, cplx z) {
    const auto& c = p.coeffs();
    double az = std::abs(z);
    if (az <= 1.0) {
        cplx v = eval_poly(p, z);
        return v == cplx(0.0) ? -kInf : std::log(std::abs(v));
    }
    cplx w = 1.0 / z;
    cplx acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc = acc * w + c[i];
    if (acc == cplx(0.0)) return -kInf;
    return std::log(std::abs(acc)) + (static_cast<double>(c.size()) - 1.0) * std::log(az);
}

double gabor_magnitude(const HermiteExpansion& h, TimeFreqPoint pt) {
    FockPolynomial p = hermite_to_fock(h);
    cplx z(pt.x, -pt.omega);
    return std::abs(eval_poly(p, z)) *
           std::exp(-0.5 * kPi * (pt.x * pt.x + pt.omega * pt.omega));
}

cplx hermite_function(int n, cplx t) {
    if (n < 0) raise(errc::invalid_argument, "hermite_function: negative index");
    // h_n(t) = 2^{1/4} (n! 2^n)^{-1/2} H_n(sqrt(2 pi) t) e^{-pi t^2}
    // with the physicists' Hermite polynomials H_n.
    cplx x = std::sqrt(2.0 * kPi) * t;
    cplx h0 = 1.0, h1 = 2.0 * x;
    cplx hn = (n == 0) ? h0 : h1;
    for (int k = 1; k < n; ++k) {
        cplx next = 2.0 * x * hn - 2.0 * static_cast<double>(k) * h0;
        h0 = hn;
        hn = next;
    }
    double logc = 0.25 * std::log(2.0) - 0.5 * (std::lgamma(n + 1.0) + n * std::log(2.0));
    return std::exp(logc) * hn * std::exp(-kPi * t * t);
}

cplx hermite_eval(const HermiteExpansion& h, cplx t) {
    cplx acc = 0.0;
    for (std::size_t n = 0; n < h.coeffs().size(); ++n)
        acc += h.coeffs()[n] * hermite_function(static_cast<int>(n), t);
    return acc;
}

cplx bargmann_quadrature(const std::function<cplx(cplx)>& f_time, cplx z) {
    if (std::abs(z) > 10.0)
        raise(errc::domain_error, "bargmann_quadrature: |z| exceeds the validity window 10");
    // Contour shifted to Im t = Im(z)/2 and centered at Re t = Re(z)/2: for
    // Hermite-type integrands the combined kernel is exp(-2 pi (s - Re z/2)^2)
    // along this contour, so the trapezoidal sum has no cancellation and its
    // truncation/aliasing errors are far below 1e-10 at half-width 8.
    constexpr int kNodes = 200;
    constexpr double kHalfWidth = 8.0;
    const double center = 0.5 * z.real();
    const double shift = 0.5 * z.imag();
    const double step = 2.0 * kHalfWidth / (kNodes - 1);
    cplx acc = 0.0;
    for (int j = 0; j < kNodes; ++j) {
        double s = center - kHalfWidth + j * step;
        cplx t(s, shift);
        cplx kernel = std::exp(2.0 * kPi * t * z - kPi * t * t - 0.5 * kPi * z * z);
        cplx term = f_time(t) * kernel;
        if (j == 0 || j == kNodes - 1) term *= 0.5;
        acc += term;
    }
    return std::pow(2.0, 0.25) * acc * step;
}

ClosedFormFunction ClosedFormFunction::polynomial(FockPolynomial p) {
    return ClosedFormFunction(Variant(std::move(p)));
}

ClosedFormFunction ClosedFormFunction::shifted_sine(double scale, double offset) {
    if (scale == 0.0) raise(errc::invalid_argument, "shifted_sine: zero scale");
    return ClosedFormFunction(Variant(ShiftedSine{scale, offset}));
}

ClosedFormFunction ClosedFormFunction::scaled_sine(double scale) {
    if (scale <= 0.0) raise(errc::invalid_argument, "scaled_sine: scale must be positive");
    return ClosedFormFunction(Variant(ScaledSine{scale}));
}

ClosedFormFunction ClosedFormFunction::exp_quadratic(cplx a2, cplx a1, cplx a0) {
    return ClosedFormFunction(Variant(ExpQuadratic{a2, a1, a0}));
}

namespace {

// log|sin(w)| = 0.5 log(sin^2(Re w) + sinh^2(Im w)); for |Im w| > 20 the
// asymptotic |Im w| - log 2 is exact to double precision.
double log_abs_sin(cplx w) {
    double u = w.real(), v = std::abs(w.imag());
    if (v > 20.0) return v - std::log(2.0);
    double s = std::sin(u), sh = std::sinh(v);
    double m = s * s + sh * sh;
    if (m == 0.0) return -kInf;
    return 0.5 * std::log(m);
}

} // namespace

cplx ClosedFormFunction::value(cplx z) const {
    return std::visit(
        [&](const auto& f) -> cplx {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FockPolynomial>) {
                return eval_poly(f, z);
            } else if constexpr (std::is_same_v<T, ShiftedSine>) {
                return std::sin(cplx(f.offset) + f.scale * z);
            } else if constexpr (std::is_same_v<T, ScaledSine>) {
                return std::sin(f.scale * z);
            } else {
                return std::exp(f.a2 * z * z + f.a1 * z + f.a0);
            }
        },
        v_);
}

double ClosedFormFunction::log_magnitude(cplx z) const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FockPolynomial>) {
                return eval_poly_log_abs(f, z);
            } else if constexpr (std::is_same_v<T, ShiftedSine>) {
                return log_abs_sin(cplx(f.offset) + f.scale * z);
            } else if constexpr (std::is_same_v<T, ScaledSine>) {
                return log_abs_sin(f.scale * z);
            } else {
                return (f.a2 * z * z + f.a1 * z + f.a0).real();
            }
        },
        v_);
}

double ClosedFormFunction::tau_lower() const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ExpQuadratic>) {
                return std::abs(f.a2);
            } else {
                (void)f;
                return 0.0;
            }
        },
        v_);
}

double ClosedFormFunction::natural_order() const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ExpQuadratic>) {
                return f.a2 == cplx(0.0) ? 1.0 : 2.0;
            } else {
                (void)f;
                return 1.0;
            }
        },
        v_);
}

} // namespace fockpr
