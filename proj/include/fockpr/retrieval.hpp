#ifndef FOCKPR_RETRIEVAL_HPP
#define FOCKPR_RETRIEVAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fockpr/factorization.hpp"
#include "fockpr/fock_core.hpp"
#include "fockpr/lattice_geometry.hpp"

namespace fockpr {

// Rigid motion raw = e^{i theta} w + translation mapping the normalized frame
// (L1 = R) to raw coordinates.
struct Frame {
    double theta = 0.0;
    cplx translation;

    cplx to_raw(cplx w) const;
    cplx to_normalized(cplx z) const;
};

struct MagnitudeRecord {
    cplx point;
    double magnitude = 0.0;
};

class MagnitudeSamples {
public:
    MagnitudeSamples() = default;
    MagnitudeSamples(std::vector<MagnitudeRecord> records, std::optional<Frame> frame = {});

    const std::vector<MagnitudeRecord>& records() const noexcept { return records_; }
    const std::optional<Frame>& frame() const noexcept { return frame_; }
    std::size_t size() const noexcept { return records_.size(); }
    double max_magnitude() const;

private:
    std::vector<MagnitudeRecord> records_;
    std::optional<Frame> frame_;
};

struct RetrievalResult {
    FockPolynomial recovered;   // canonical phase: leading coefficient real positive
    double residual = 0.0;      // max over all samples of ||recovered| - magnitude|
    bool ambiguity_flag = false;
    int detected_degree = 0;
    Frame frame;
};

enum class GrowthFunctionKind {
    Linear, // H(r) = r
    Log1p,  // H(r) = log(1 + r)
};
double growth_function(GrowthFunctionKind kind, double r);

struct GrowthEstimate {
    double order = 1.0;
    double type_estimate = 0.0;
    std::vector<std::pair<double, double>> per_radius; // (r, max log|f| / H(r))
    bool tail_monotone = true;
};

struct EarlReport {
    double kappa_lattice = 0.0;
    double kappa_global = 0.0;
    double slack = 0.15;
    bool bound_holds = false;
    GrowthFunctionKind h = GrowthFunctionKind::Linear;
    double radius = 0.0;
};

struct CounterexampleReport {
    double online_max_gap = 0.0;          // max | |f+| - |f-| | on the line set
    double offline_phase_gap = 0.0;       // min over tau of max |f+ - tau f-| off the lines
    bool modulus_agrees = false;
    bool not_phase_equivalent = false;
};

struct InterpolationResult {
    FockPolynomial f1;              // degree 2q, real coefficients
    double held_out_residual = 0.0; // max held-out misfit / max value
    // factored form of f1: upper-half-plane representatives of its root pairs
    // in the node variable, plus the leading coefficient; carrying these avoids
    // re-rooting the assembled coefficients (which is ill-conditioned for
    // clustered pairs)
    std::vector<cplx> pair_reps;
    double lead = 0.0;
};

// |p| sampled at every point of the set; the frame is recorded from S.
MagnitudeSamples forward_sample(const FockPolynomial& p, const StructuredSet& s);
MagnitudeSamples forward_sample(const FockPolynomial& p, const PointSet& s);

// Least-squares fit of degree 2q to magnitude^2 on integer nodes of one
// progression. Fitting runs in the multiplicative root/leading parametrization
// (value-space barycentric root capture + log-domain Gauss-Newton): no global
// polynomial basis stays stable across the dynamic range of |f|^2 on [-N, N].
// Throws degree-mismatch when the held-out residual exceeds
// rel_tol * (max magnitude)^2, conditioning for q > 15.
InterpolationResult interpolate_squared_modulus(const std::vector<std::pair<int, double>>& samples,
                                                double rho, int degree_bound,
                                                double rel_tol = 1e-8);

// Roots of F1 scaled by rho: {zeros of f} + {conjugated zeros of f} in the
// normalized frame. Throws conjugate-closure if the multiset does not pair up.
ZeroMultiset zero_pairs_from_line(const FockPolynomial& f1, double rho);

struct DisambiguationResult {
    ZeroMultiset zeros;
    bool used_fallback = false;
};

// Selects, for each conjugate pair in s1, the member consistent with
// s2 = zeros(f) + reflect(zeros(f), line2); falls back to enumeration over the
// unresolved choices scored by the residual against all_samples (in the same
// frame as the multisets). Throws no-consistent-assignment when every
// candidate exceeds residual_tol * max magnitude.
DisambiguationResult disambiguate_zeros(const ZeroMultiset& s1, const ZeroMultiset& s2,
                                        Line line2, const MagnitudeSamples& all_samples,
                                        int q, double residual_tol = 1e-3);

// Full pipeline: frame normalization, degree detection, per-line interpolation,
// zero pairing, disambiguation, joint magnitude refinement over all samples,
// canonical-phase assembly.
RetrievalResult reconstruct(const MagnitudeSamples& samples, const StructuredSet& s, int q_max);

// True iff a = tau b for a unit-modulus tau; tau is taken from the
// largest-modulus coefficient pair and verified across all coefficients within
// tol relative to the largest coefficient modulus.
std::pair<bool, std::optional<cplx>> phase_equivalent(const FockPolynomial& a,
                                                      const FockPolynomial& b, double tol);

// f_{a,+}(z) = sin(pi/4 + pi z/(2a)), f_{a,-}(z) = sin(pi/4 - pi z/(2a)):
// exponential type pi/(2a), equal modulus on a Z + i R, not phase equivalent.
std::pair<ClosedFormFunction, ClosedFormFunction> counterexample_pair(double a);

CounterexampleReport verify_counterexample(const std::pair<ClosedFormFunction, ClosedFormFunction>& pair,
                                           double a, int n_points, double tol);

// max over an angle grid of log|f| / r^rho per radius; the type estimate is the
// value at the largest radius.
GrowthEstimate growth_type_estimate(const ClosedFormFunction& f, double rho,
                                    const std::vector<double>& radii, int angle_count = 360);

// kappa_Lambda = max over lattice points (2 <= |z| <= radius) of log|f|/H(|z|),
// kappa_global = same max over the circle |z| = radius; reports whether
// kappa_global <= kappa_Lambda * (1 + slack). Throws density-hypothesis when
// D^-(lattice) <= 2 tau_lower(f) / pi.
EarlReport earl_bound_check(const ClosedFormFunction& f, const ShiftedLattice& lattice,
                            GrowthFunctionKind h, double radius, double slack = 0.15);

} // namespace fockpr

#endif
