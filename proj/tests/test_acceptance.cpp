// Acceptance suite: every criterion prints one PASS/FAIL line with its
// measured quantities and timing; the process exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fockpr/errors.hpp"
#include "fockpr/retrieval.hpp"
#include "fockpr/serialization.hpp"

using namespace fockpr;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string label)
        : number_(number), label_(std::move(label)),
          started_(std::chrono::steady_clock::now()) {}

    void finish(bool ok, const std::string& detail, double budget_seconds) {
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
        bool in_budget = elapsed < budget_seconds;
        bool pass = ok && in_budget;
        std::printf("%s criterion %d: %s (%s; %.2fs of %.0fs budget)\n",
                    pass ? "PASS" : "FAIL", number_, label_.c_str(), detail.c_str(), elapsed,
                    budget_seconds);
        if (!pass) ++failures;
    }

private:
    int number_;
    std::string label_;
    std::chrono::steady_clock::time_point started_;
};

std::mt19937_64 rng(20250810);

cplx random_in_disc(double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    while (true) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) <= radius) return z;
    }
}

FockPolynomial random_poly(int degree, double min_root_sep) {
    while (true) {
        std::vector<cplx> c(degree + 1);
        for (cplx& x : c) x = random_in_disc(1.0);
        if (std::abs(c.back()) < 0.1) continue;
        FockPolynomial p(c);
        if (p.degree() != degree) continue;
        if (degree >= 2) {
            auto flat = poly_roots(p).expanded();
            double sep = 1e300;
            for (std::size_t i = 0; i < flat.size(); ++i)
                for (std::size_t j = i + 1; j < flat.size(); ++j)
                    sep = std::min(sep, std::abs(flat[i] - flat[j]));
            if (sep < min_root_sep) continue;
        }
        return p;
    }
}

void criterion_1_round_trip() {
    Criterion c(1, "round-trip reconstruction of 50 random polynomials (degree <= 8, N = 22)");
    StructuredSet s =
        canonical_progressions(ShiftedLattice{cplx(0.0), cplx(1.0), cplx(0.0, 1.0)}, 22);
    int ok = 0;
    double worst_tau = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        int degree = 1 + static_cast<int>(rng() % 8);
        FockPolynomial p = random_poly(degree, 0.05);
        try {
            RetrievalResult r = reconstruct(forward_sample(p, s), s, 8);
            auto [same, tau] = phase_equivalent(r.recovered, p, 1e-7);
            if (same) {
                ++ok;
                if (tau) worst_tau = std::max(worst_tau, std::abs(std::abs(*tau) - 1.0));
            }
        } catch (const Error&) {
        }
    }
    c.finish(ok == 50, "recovered " + std::to_string(ok) + "/50 up to phase at 1e-7", 30.0);
}

void criterion_2_hermite_chain() {
    Criterion c(2, "Gabor-magnitude chain for h0 + 2i h3 on the a = 0.9 lattice");
    HermiteExpansion g({cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0, 2.0)});
    FockPolynomial truth = hermite_to_fock(g);

    double a = 0.9;
    ShiftedLattice lattice{cplx(0.0), cplx(a), cplx(0.0, a)};
    StructuredSet s = canonical_progressions(lattice, 11);
    // filler points from the third lattice column exercise the all-samples residual
    for (int n = -11; n <= 11; ++n) s.extra.push_back(cplx(2.0 * a, a * n));

    // gabor magnitudes at time-frequency points (x, w) = (Re z, -Im z), then
    // unweighted back to |Bg| on the Fock side
    std::vector<MagnitudeRecord> records;
    for (cplx z : s.all_points()) {
        TimeFreqPoint pt{z.real(), -z.imag()};
        double mag = gabor_magnitude(g, pt);
        records.push_back({z, mag * std::exp(0.5 * kPi * std::norm(z))});
    }
    bool ok = false;
    std::string detail = "reconstruction failed";
    try {
        RetrievalResult r = reconstruct(MagnitudeSamples(std::move(records)), s, 8);
        auto [same, tau] = phase_equivalent(r.recovered, truth, 1e-6);
        ok = same && r.detected_degree == 3;
        detail = "degree " + std::to_string(r.detected_degree) +
                 (same ? ", phase-equivalent at 1e-6" : ", NOT phase-equivalent");
    } catch (const Error& e) {
        detail = std::string("error: ") + e.code();
    }
    c.finish(ok, detail, 5.0);
}

void criterion_3_counterexample() {
    Criterion c(3, "counterexample pair agrees on-line and defeats every global phase");
    auto pair = counterexample_pair(1.0);
    CounterexampleReport rep = verify_counterexample(pair, 1.0, 1000, 1e-12);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "on-line gap %.2e, off-line phase gap %.3f",
                  rep.online_max_gap, rep.offline_phase_gap);
    c.finish(rep.modulus_agrees && rep.not_phase_equivalent, buf, 1.0);
}

void criterion_4_sharpness() {
    Criterion c(4, "spacing threshold omega2 = pi/(2 kappa) fails while the pair verifies");
    double kappa = kPi / 2.0; // threshold spacing = 1
    ShiftedLattice lattice{cplx(0.0), cplx(0.0, 0.5), cplx(1.0)};
    ConditionReport cond = check_lattice_conditions(lattice, 0.0, kappa);
    auto pair = counterexample_pair(1.0);
    CounterexampleReport rep = verify_counterexample(pair, 1.0, 1000, 1e-12);
    bool ok = !cond.spacing_ok && rep.modulus_agrees && rep.not_phase_equivalent;
    c.finish(ok,
             std::string("spacing_ok = ") + (cond.spacing_ok ? "true" : "false") +
                 ", pair verified = " +
                 ((rep.modulus_agrees && rep.not_phase_equivalent) ? "true" : "false"),
             1.0);
}

void criterion_5_density() {
    Criterion c(5, "density estimator within 5% on two truncated lattices (|z| <= 300)");
    ShiftedLattice unit{cplx(0.0), cplx(1.0), cplx(0.0, 1.0)};
    double est1 = estimate_lower_density(enumerate_points(unit, 300.0), {50.0, 100.0, 200.0}, 0.25);
    ShiftedLattice skew{cplx(0.0), cplx(2.0), cplx(1.0, 1.0)};
    double est2 = estimate_lower_density(enumerate_points(skew, 300.0), {50.0, 100.0, 200.0}, 0.25);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "unit: %.4f (exact 1), skew: %.4f (exact 0.5)", est1, est2);
    c.finish(std::abs(est1 - 1.0) <= 0.05 && std::abs(est2 - 0.5) <= 0.025, buf, 10.0);
}

void criterion_6_transform_fidelity() {
    Criterion c(6, "Bargmann quadrature matches e_n; growth bound holds at random points");
    bool quad_ok = true;
    double worst = 0.0;
    for (int n = 0; n <= 4 && quad_ok; ++n) {
        auto hn = [n](cplx t) { return hermite_function(n, t); };
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                cplx z(-2.0 + i * 1.0, -2.0 + j * 1.0);
                if (std::abs(z) > 2.0) continue;
                cplx en = std::exp(0.5 * (n * std::log(kPi) - std::lgamma(n + 1.0))) *
                          std::pow(z, static_cast<double>(n));
                double err = std::abs(bargmann_quadrature(hn, z) - en);
                worst = std::max(worst, err);
                if (err > 1e-6) quad_ok = false;
            }
        }
    }
    bool growth_ok = true;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20 && growth_ok; ++trial) {
        std::vector<cplx> coeffs(1 + static_cast<std::size_t>(rng() % 7));
        for (cplx& x : coeffs) x = random_in_disc(1.0);
        HermiteExpansion h(coeffs);
        if (h.norm() == 0.0) continue;
        std::vector<cplx> unit_coeffs = h.coeffs();
        for (cplx& x : unit_coeffs) x /= h.norm();
        FockPolynomial p = hermite_to_fock(HermiteExpansion(unit_coeffs));
        for (int k = 0; k < 500; ++k) {
            double r = 5.0 * std::sqrt(u(rng));
            cplx z = std::polar(r, 2.0 * kPi * u(rng));
            if (std::abs(eval_poly(p, z)) > std::exp(0.5 * kPi * r * r) * (1.0 + 1e-12))
                growth_ok = false;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst quadrature error %.2e; growth bound %s", worst,
                  growth_ok ? "held" : "violated");
    c.finish(quad_ok && growth_ok, buf, 10.0);
}

void criterion_7_hadamard_anchor() {
    Criterion c(7, "genus-1 product reproduces sin(pi z) within 1e-3 on |z| <= 2 (N = 10^4)");
    std::vector<ZeroEntry> zeros;
    for (int n = 1; n <= 10000; ++n) {
        zeros.push_back({cplx(static_cast<double>(n)), 1});
        zeros.push_back({cplx(static_cast<double>(-n)), 1});
    }
    HadamardData d = HadamardData::make(1, {cplx(std::log(kPi))}, ZeroMultiset(zeros), 1);
    // truncating the product perturbs the log, so the tolerance is taken
    // against 1 + |sin(pi z)| (the tail bound 4/N is multiplicative)
    double worst = 0.0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) > 2.0) continue;
        cplx truth = std::sin(kPi * z);
        worst = std::max(worst, std::abs(hadamard_eval(d, z, zeros.size()).value - truth) /
                                    (1.0 + std::abs(truth)));
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "worst scaled deviation %.2e", worst);
    c.finish(worst < 1e-3, buf, 5.0);
}

void criterion_8_earl() {
    Criterion c(8, "Earl diagnostic for sin(z) with H = r and a degree-5 polynomial with H = log(1+r)");
    ShiftedLattice unit{cplx(0.0), cplx(1.0), cplx(0.0, 1.0)};
    EarlReport sine = earl_bound_check(ClosedFormFunction::scaled_sine(1.0), unit,
                                       GrowthFunctionKind::Linear, 50.0);
    bool sine_ok = sine.kappa_global <= 1.15 * sine.kappa_lattice;

    std::vector<ZeroEntry> zeros;
    for (int k = 0; k < 5; ++k) zeros.push_back({std::polar(0.3, 2.0 * kPi * k / 5.0), 1});
    auto poly = ClosedFormFunction::polynomial(roots_to_poly(ZeroMultiset(zeros), cplx(1.0)));
    EarlReport pe = earl_bound_check(poly, unit, GrowthFunctionKind::Log1p, 50.0);
    bool poly_ok = std::abs(pe.kappa_lattice - 5.0) <= 0.5 && std::abs(pe.kappa_global - 5.0) <= 0.5;

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "sine: kG %.4f vs 1.15*kL %.4f; poly: kL %.3f kG %.3f (target 5 +- 0.5)",
                  sine.kappa_global, 1.15 * sine.kappa_lattice, pe.kappa_lattice, pe.kappa_global);
    c.finish(sine_ok && poly_ok, buf, 10.0);
}

} // namespace

int main() {
    criterion_1_round_trip();
    criterion_2_hermite_chain();
    criterion_3_counterexample();
    criterion_4_sharpness();
    criterion_5_density();
    criterion_6_transform_fidelity();
    criterion_7_hadamard_anchor();
    criterion_8_earl();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
