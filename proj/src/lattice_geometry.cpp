#include "fockpr/lattice_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "fockpr/errors.hpp"

namespace fockpr {

namespace {

double lattice_area(const ShiftedLattice& lattice) {
    return std::imag(lattice.omega1 * std::conj(lattice.omega2));
}

void require_valid(const ShiftedLattice& lattice) {
    if (lattice.omega1 == cplx(0.0) || lattice.omega2 == cplx(0.0) || lattice_area(lattice) == 0.0)
        raise(errc::degenerate_lattice, "omega1/omega2 must be non-real (nonzero covolume)");
}

} // namespace

PointSet::PointSet(std::vector<cplx> points) : points_(std::move(points)) {
    std::vector<cplx> sorted = points_;
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            raise(errc::invalid_argument, "PointSet: duplicate point");
}

double StructuredSet::line_distance() const {
    cplx d = std::polar(1.0, -theta) * (z2 - z1);
    return std::abs(d.imag());
}

std::vector<cplx> StructuredSet::progression1() const {
    std::vector<cplx> out;
    out.reserve(2 * truncation + 1);
    cplx dir = std::polar(1.0, theta);
    for (int n = -truncation; n <= truncation; ++n) out.push_back(z1 + rho1 * dir * static_cast<double>(n));
    return out;
}

std::vector<cplx> StructuredSet::progression2() const {
    std::vector<cplx> out;
    out.reserve(2 * truncation + 1);
    cplx dir = std::polar(1.0, theta);
    for (int n = -truncation; n <= truncation; ++n) out.push_back(z2 + rho2 * dir * static_cast<double>(n));
    return out;
}

std::vector<cplx> StructuredSet::all_points() const {
    std::vector<cplx> out = progression1();
    std::vector<cplx> p2 = progression2();
    out.insert(out.end(), p2.begin(), p2.end());
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

void StructuredSet::validate() const {
    if (rho1 <= 0.0 || rho2 <= 0.0)
        raise(errc::invalid_argument, "StructuredSet: spacings must be positive");
    if (truncation < 1) raise(errc::invalid_argument, "StructuredSet: truncation must be >= 1");
    if (line_distance() == 0.0)
        raise(errc::invalid_argument, "StructuredSet: anchors lie on a common line");
    PointSet all(all_points()); // rejects duplicates
    if (all.size() >= 2 && separation(all) <= 0.0)
        raise(errc::invalid_argument, "StructuredSet: degenerate point set");
}

double covolume(const ShiftedLattice& lattice) {
    require_valid(lattice);
    return std::abs(lattice_area(lattice));
}

double exact_lower_density(const ShiftedLattice& lattice) {
    return 1.0 / covolume(lattice);
}

double estimate_lower_density(const PointSet& points, const std::vector<double>& radii,
                              double grid_step, double scan_extent) {
    if (points.size() == 0) raise(errc::too_few_points, "estimate_lower_density: empty set");
    if (radii.empty()) raise(errc::invalid_argument, "estimate_lower_density: no radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            raise(errc::invalid_argument, "estimate_lower_density: radii must increase");
    if (grid_step <= 0.0) raise(errc::invalid_argument, "estimate_lower_density: bad grid step");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (cplx p : points.points()) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    double rmax = radii.back();
    // Scanned windows are [z0 - r/2, z0 + r/2]^2. A data region smaller than
    // one window admits empty windows beyond it, so the infimum is plainly 0.
    if (xmax - xmin < rmax || ymax - ymin < rmax) return 0.0;
    // Otherwise every scanned window corner must stay inside the covered disc.
    double extent = std::min({-xmin, xmax, -ymin, ymax});
    if (scan_extent * std::sqrt(2.0) + rmax / std::sqrt(2.0) > extent + 1e-9)
        raise(errc::insufficient_coverage,
              "estimate_lower_density: point set does not cover the scanned windows");

    std::vector<cplx> pts = points.points();
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    std::vector<double> xs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = pts[i].real();

    double density = std::numeric_limits<double>::infinity();
    int steps = static_cast<int>(std::floor(scan_extent / grid_step + 1e-9));
    for (double r : radii) {
        long best = std::numeric_limits<long>::max();
        for (int ix = 0; ix <= steps; ++ix) {
            for (int iy = 0; iy <= steps; ++iy) {
                double cx = ix * grid_step, cy = iy * grid_step;
                double x0 = cx - r / 2.0, x1 = cx + r / 2.0;
                double y0 = cy - r / 2.0, y1 = cy + r / 2.0;
                auto lo = std::lower_bound(xs.begin(), xs.end(), x0);
                auto hi = std::upper_bound(xs.begin(), xs.end(), x1);
                long count = 0;
                for (auto it = pts.begin() + (lo - xs.begin()); it != pts.begin() + (hi - xs.begin()); ++it) {
                    double y = it->imag();
                    if (y >= y0 && y <= y1) ++count;
                }
                best = std::min(best, count);
            }
        }
        density = std::min(density, static_cast<double>(best) / (r * r));
    }
    return density;
}

double separation(const PointSet& points) {
    const auto& pts = points.points();
    if (pts.size() < 2) raise(errc::too_few_points, "separation: need at least two points");

    std::vector<cplx> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    // seed bound from consecutive points in sort order
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < sorted.size(); ++i)
        bound = std::min(bound, std::abs(sorted[i] - sorted[i - 1]));
    if (bound == 0.0) return 0.0;

    // bucket grid with cell size = seed bound; any closer pair lives in
    // neighboring cells
    struct Key {
        long x, y;
        bool operator==(const Key& o) const { return x == o.x && y == o.y; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return std::hash<long>()(k.x * 73856093L ^ k.y * 19349663L);
        }
    };
    std::unordered_map<Key, std::vector<cplx>, KeyHash> grid;
    grid.reserve(sorted.size());
    double cell = bound;
    auto key_of = [cell](cplx p) {
        return Key{static_cast<long>(std::floor(p.real() / cell)),
                   static_cast<long>(std::floor(p.imag() / cell))};
    };
    double best = bound;
    for (cplx p : sorted) {
        Key k = key_of(p);
        for (long dx = -1; dx <= 1; ++dx) {
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(Key{k.x + dx, k.y + dy});
                if (it == grid.end()) continue;
                for (cplx q : it->second) best = std::min(best, std::abs(p - q));
            }
        }
        grid[k].push_back(p);
    }
    return best;
}

ConditionReport check_lattice_conditions(const ShiftedLattice& lattice, double tau_lower,
                                         double kappa) {
    if (tau_lower < 0.0 || kappa < 0.0)
        raise(errc::invalid_argument, "check_lattice_conditions: thresholds must be >= 0");
    ConditionReport report;
    report.covolume = covolume(lattice);
    report.exact_density = 1.0 / report.covolume;
    report.tau_lower = tau_lower;
    report.kappa = kappa;
    report.density_ok = tau_lower == 0.0 || report.covolume < kPi / (2.0 * tau_lower);
    double spacing = std::abs(lattice.omega2);
    double distance = report.covolume / spacing;
    report.spacing_ok = kappa == 0.0 || spacing < kPi / (2.0 * kappa);
    report.distance_ok = kappa == 0.0 || distance < kPi / (2.0 * kappa);
    report.verdict = report.density_ok && report.spacing_ok && report.distance_ok;
    return report;
}

StructuredSet canonical_progressions(const ShiftedLattice& lattice, int truncation) {
    require_valid(lattice);
    StructuredSet s;
    s.z1 = lattice.z0;
    s.z2 = lattice.z0 + lattice.omega1;
    s.theta = std::arg(lattice.omega2);
    s.rho1 = s.rho2 = std::abs(lattice.omega2);
    s.truncation = truncation;
    s.validate();
    return s;
}

PointSet enumerate_points(const ShiftedLattice& lattice, double radius) {
    require_valid(lattice);
    if (radius < 0.0) raise(errc::invalid_argument, "enumerate_points: negative radius");
    double area = std::abs(lattice_area(lattice));
    double reach = radius + std::abs(lattice.z0);
    long mmax = static_cast<long>(std::floor(reach * std::abs(lattice.omega2) / area)) + 1;
    long nmax = static_cast<long>(std::floor(reach * std::abs(lattice.omega1) / area)) + 1;
    std::vector<cplx> pts;
    for (long m = -mmax; m <= mmax; ++m) {
        for (long n = -nmax; n <= nmax; ++n) {
            cplx z = lattice.z0 + static_cast<double>(m) * lattice.omega1 +
                     static_cast<double>(n) * lattice.omega2;
            if (std::abs(z) <= radius) pts.push_back(z);
        }
    }
    return PointSet(std::move(pts));
}

} // namespace fockpr
