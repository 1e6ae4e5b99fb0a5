#ifndef FOCKPR_FOCK_CORE_HPP
#define FOCKPR_FOCK_CORE_HPP

#include <complex>
#include <functional>
#include <variant>
#include <vector>

namespace fockpr {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Trailing coefficients with |c| <= kTrimTol * max|c| are dropped so that the
// degree of a polynomial-like object is well defined.
inline constexpr double kTrimTol = 1e-13;

std::vector<cplx> trim_coeffs(std::vector<cplx> coeffs);

// Finite expansion sum lambda_n h_n in the Hermite basis of L^2(R).
// The zero signal is represented by the single coefficient {0}.
class HermiteExpansion {
public:
    HermiteExpansion() : coeffs_{cplx(0.0)} {}
    explicit HermiteExpansion(std::vector<cplx> coeffs);

    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept;
    double norm() const; // L^2 norm = Euclidean norm of the coefficients

private:
    std::vector<cplx> coeffs_;
};

// Entire polynomial sum c_n z^n on the Fock side, monomial basis.
class FockPolynomial {
public:
    FockPolynomial() : coeffs_{cplx(0.0)} {}
    explicit FockPolynomial(std::vector<cplx> coeffs);

    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept;
    cplx leading() const noexcept { return coeffs_.back(); }
    double max_coeff() const;

private:
    std::vector<cplx> coeffs_;
};

struct TimeFreqPoint {
    double x = 0.0;
    double omega = 0.0;
};

// c_n = lambda_n (pi^n/n!)^{1/2}, the change of basis h_n -> e_n.
FockPolynomial hermite_to_fock(const HermiteExpansion& h);
HermiteExpansion fock_to_hermite(const FockPolynomial& p);

// Horner evaluation; overflow-safe for any |z| via the reversed form when |z| > 1.
cplx eval_poly(const FockPolynomial& p, cplx z);
// log|p(z)|, -inf at zeros, no overflow for large |z|.
double eval_poly_log_abs(const FockPolynomial& p, cplx z);

// |Gf(x, omega)| computed through the Fock side:
// |B f(x - i omega)| * exp(-(pi/2)(x^2 + omega^2)).
double gabor_magnitude(const HermiteExpansion& h, TimeFreqPoint pt);

// h_n(t), normalized so that the Bargmann transform maps h_n to
// e_n(z) = (pi^n/n!)^{1/2} z^n. Accepts complex arguments (the functions are
// entire), which the quadrature below uses for its shifted contour.
cplx hermite_function(int n, cplx t);
// Time-domain value of a finite Hermite expansion.
cplx hermite_eval(const HermiteExpansion& h, cplx t);

// Numerical Bargmann transform B f(z) by a fixed 200-node rule on an interval
// of half-width 8 around the integrand's Gaussian center, with the contour
// shifted to Im t = Im(z)/2 where the integrand is positive-Gaussian for
// Hermite-type f (no cancellation). f must be entire with Gaussian decay in
// horizontal strips. Validity window |z| <= 10; used as a test oracle.
cplx bargmann_quadrature(const std::function<cplx(cplx)>& f_time, cplx z);

// Closed-form entire functions used by the counterexample and growth
// diagnostics. ShiftedSine is z -> sin(offset + scale*z), ScaledSine is
// z -> sin(scale*z), ExpQuadratic is z -> exp(a2 z^2 + a1 z + a0).
struct ShiftedSine {
    double scale = 1.0; // nonzero
    double offset = 0.0;
};
struct ScaledSine {
    double scale = 1.0; // positive
};
struct ExpQuadratic {
    cplx a2, a1, a0;
};

class ClosedFormFunction {
public:
    using Variant = std::variant<FockPolynomial, ShiftedSine, ScaledSine, ExpQuadratic>;

    static ClosedFormFunction polynomial(FockPolynomial p);
    static ClosedFormFunction shifted_sine(double scale, double offset);
    static ClosedFormFunction scaled_sine(double scale);
    static ClosedFormFunction exp_quadratic(cplx a2, cplx a1, cplx a0);

    cplx value(cplx z) const;
    // log|f(z)|; returns -infinity at exact zeros; never overflows.
    double log_magnitude(cplx z) const;

    // Lower order-2 growth constant: liminf_r log max_{|z|=r} |f| / r^2.
    // 0 for polynomials and sines (exponential type), |a2| for ExpQuadratic.
    double tau_lower() const;
    // Natural order of the variant (1 for sines/polynomials, 2 for a2 != 0).
    double natural_order() const;

    const Variant& variant() const noexcept { return v_; }

private:
    explicit ClosedFormFunction(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

inline double eval_log_magnitude(const ClosedFormFunction& f, cplx z) {
    return f.log_magnitude(z);
}

} // namespace fockpr

#endif
