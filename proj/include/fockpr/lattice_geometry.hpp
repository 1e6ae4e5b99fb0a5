#ifndef FOCKPR_LATTICE_GEOMETRY_HPP
#define FOCKPR_LATTICE_GEOMETRY_HPP

#include <vector>

#include "fockpr/fock_core.hpp"

namespace fockpr {

// z0 + omega1 Z + omega2 Z with omega1/omega2 not real.
struct ShiftedLattice {
    cplx z0;
    cplx omega1{1.0, 0.0};
    cplx omega2{0.0, 1.0};
};

// Finite set of pairwise-distinct points.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<cplx> points);

    const std::vector<cplx>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<cplx> points_;
};

// Two arithmetic progressions z1 + rho1 e^{i theta} n and z2 + rho2 e^{i theta} n
// (n in [-truncation, truncation]) on distinct parallel lines, plus filler points.
struct StructuredSet {
    cplx z1;
    cplx z2;
    double theta = 0.0;
    double rho1 = 1.0;
    double rho2 = 1.0;
    std::vector<cplx> extra;
    int truncation = 20;

    double line_distance() const;
    std::vector<cplx> progression1() const;
    std::vector<cplx> progression2() const;
    std::vector<cplx> all_points() const;
    void validate() const; // throws invalid-argument on a degenerate geometry
};

struct ConditionReport {
    double covolume = 0.0;
    double exact_density = 0.0;
    bool density_ok = false;
    bool spacing_ok = false;
    bool distance_ok = false;
    bool verdict = false;
    double tau_lower = 0.0;
    double kappa = 0.0;
};

// |Im(omega1 conj(omega2))|; throws degenerate-lattice when zero.
double covolume(const ShiftedLattice& lattice);

// D^-(lattice) = 1 / covolume.
double exact_lower_density(const ShiftedLattice& lattice);

// Truncated Beurling-density scan: min over r of the worst square-window count
// over a translate grid, divided by r^2. Square windows of side r, closed
// boundary, translates on a grid of step grid_step over [0, scan_extent]^2.
double estimate_lower_density(const PointSet& points, const std::vector<double>& radii,
                              double grid_step, double scan_extent = 4.0);

// Minimum pairwise distance via a bucket grid seeded with a sorted-neighbor
// upper bound; O(n) expected after the initial sort.
double separation(const PointSet& points);

// Strict inequalities per the uniqueness conditions:
//   density:  covolume < pi/(2 tau_lower)   (vacuous for tau_lower = 0)
//   spacing:  |omega2| < pi/(2 kappa)        (vacuous for kappa = 0)
//   distance: covolume/|omega2| < pi/(2 kappa)
ConditionReport check_lattice_conditions(const ShiftedLattice& lattice,
                                         double tau_lower, double kappa);

// The progressions z0 + omega2 Z (on L1) and z0 + omega1 + omega2 Z (on L2),
// both with spacing |omega2| and angle arg(omega2).
StructuredSet canonical_progressions(const ShiftedLattice& lattice, int truncation = 20);

// All lattice points with |z| <= radius, exactly.
PointSet enumerate_points(const ShiftedLattice& lattice, double radius);

} // namespace fockpr

#endif
