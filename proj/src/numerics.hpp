#ifndef FOCKPR_NUMERICS_HPP
#define FOCKPR_NUMERICS_HPP

// Internal fitting machinery behind interpolate_squared_modulus and
// reconstruct. Not installed; the public contract lives in retrieval.hpp.

#include <functional>
#include <vector>

#include "fockpr/fock_core.hpp"

namespace fockpr::detail {

// Second-form barycentric interpolation through (nodes, values) with on-demand
// derivative. Nodes must be distinct; weights are computed in log scale.
class BarycentricInterpolant {
public:
    BarycentricInterpolant(std::vector<double> nodes, std::vector<double> values);

    // (G(z), G'(z)); z is nudged off exact nodes.
    std::pair<cplx, cplx> eval(cplx z) const;

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> weights_;
};

// Simultaneous value-space root capture (Aberth iteration on the interpolant)
// from a perturbed circle start.
std::vector<cplx> aberth_on_values(const BarycentricInterpolant& interp, int count,
                                   double radius, double rotation, int max_sweeps = 300);

// Dense Levenberg-Marquardt for small nonlinear least squares.
// residual_jacobian fills r (m) and J (m x n, row-major).
struct LmResult {
    std::vector<double> theta;
    double cost = 0.0; // final sum of squares
    int iterations = 0;
};
LmResult levenberg_marquardt(
    const std::function<void(const std::vector<double>&, std::vector<double>&,
                             std::vector<double>&)>& residual_jacobian,
    std::vector<double> theta0, int m, int max_iters = 120);

// One progression's squared-modulus data fitted by the multiplicative model
// lead * prod_j |x - w_j|^2 (w_j in the closed upper half plane).
struct PairFit {
    std::vector<cplx> reps; // q upper-half-plane root representatives
    double lead = 0.0;      // leading coefficient of the degree-2q polynomial
    double held_out_residual = 0.0; // relative to max value
};
PairFit fit_squared_modulus(const std::vector<double>& nodes, const std::vector<double>& values,
                            int q, int max_restarts = 8);

// Joint magnitude fit over arbitrary complex sample points:
// log|g(P)| = log(lead) + sum_j log|P - w_j|. Returns the refined roots/lead.
struct JointFit {
    std::vector<cplx> roots;
    double lead = 0.0;
    bool converged = false;
};
JointFit joint_magnitude_fit(const std::vector<cplx>& points, const std::vector<double>& mags,
                             const std::vector<cplx>& roots0, double lead0, int max_iters = 150);

// max over samples of | lead * prod|p - w| - mag |.
double product_model_residual(const std::vector<cplx>& points, const std::vector<double>& mags,
                              const std::vector<cplx>& roots, double lead);

} // namespace fockpr::detail

#endif
