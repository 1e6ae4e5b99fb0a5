#include <cmath>
#include <random>

#include <doctest.h>

#include "fockpr/errors.hpp"
#include "fockpr/factorization.hpp"

using namespace fockpr;

namespace {

std::mt19937_64 rng(987654321);

cplx random_in_disc(double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    while (true) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) <= radius) return z;
    }
}

// well-separated random roots for round-trip checks
std::vector<cplx> random_roots(int count, double min_sep) {
    std::vector<cplx> roots;
    while (static_cast<int>(roots.size()) < count) {
        cplx cand = random_in_disc(2.0);
        bool ok = true;
        for (cplx r : roots)
            if (std::abs(r - cand) < min_sep) ok = false;
        if (ok) roots.push_back(cand);
    }
    return roots;
}

} // namespace

TEST_CASE("primary factor values") {
    for (int p : {0, 1, 2}) {
        CHECK(primary_factor(cplx(0.0), p) == cplx(1.0));
        CHECK(std::abs(primary_factor(cplx(1.0), p)) == 0.0);
    }
    CHECK(std::abs(primary_factor(cplx(0.1), 2) - 0.9 * std::exp(0.105)) < 1e-15);
    CHECK_THROWS_AS(primary_factor(cplx(0.5), 3), Error);
}

TEST_CASE("primary factor log path agrees with the direct formula") {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int p : {0, 1, 2}) {
        for (int k = 0; k < 300; ++k) {
            cplx v(u(rng), u(rng));
            if (std::abs(v) > 10.0) continue;
            cplx direct = primary_factor(v, p);
            if (direct == cplx(0.0) || !std::isfinite(std::abs(direct))) continue;
            CHECK(std::abs(log_abs_primary_factor(v, p) - std::log(std::abs(direct))) <=
                  1e-10 * std::max(1.0, std::abs(std::log(std::abs(direct)))));
        }
    }
}

TEST_CASE("hadamard evaluation of sinc data") {
    // sin(pi z)/(pi z): k = 0, P = 0, zeros at +-n, genus 1
    std::vector<ZeroEntry> zeros;
    const int N = 10000;
    for (int n = 1; n <= N; ++n) {
        zeros.push_back({cplx(static_cast<double>(n)), 1});
        zeros.push_back({cplx(static_cast<double>(-n)), 1});
    }
    HadamardData sinc = HadamardData::make(0, {}, ZeroMultiset(zeros), 1);

    cplx z(0.5, 0.0);
    HadamardValue v = hadamard_eval(sinc, z, 2 * N);
    double expected = std::sin(kPi * 0.5) / (kPi * 0.5);
    CHECK(std::abs(v.value - expected) < 1e-3);

    // trailing zeros left out of the truncation produce the advertised tail bound
    HadamardValue partial = hadamard_eval(sinc, z, 1000);
    CHECK(partial.tail_log_bound > 0.0);
    CHECK_THROWS_AS(hadamard_eval(sinc, z, 1000, 1e-12), Error);
}

TEST_CASE("hadamard with no zeros is the exponential factor") {
    HadamardData exp_only = HadamardData::make(0, {cplx(0.0), cplx(0.0, 1.0)}, ZeroMultiset(), 0);
    for (double x : {0.0, 0.7, -2.0}) {
        cplx z(x, 0.3);
        CHECK(std::abs(hadamard_eval(exp_only, z, 0).value - std::exp(cplx(0.0, 1.0) * z)) < 1e-12);
    }
}

TEST_CASE("hadamard vanishes at listed zeros") {
    std::vector<ZeroEntry> zeros{{cplx(2.0, 1.0), 1}, {cplx(-1.0), 1}};
    HadamardData d = HadamardData::make(1, {}, ZeroMultiset(zeros), 0);
    CHECK(std::abs(hadamard_eval(d, cplx(2.0, 1.0), 2).value) == 0.0);
    CHECK(std::abs(hadamard_eval(d, cplx(0.0), 2).value) == 0.0); // k = 1
}

TEST_CASE("hadamard with all roots of a polynomial matches eval_poly") {
    std::vector<cplx> roots = random_roots(6, 0.2);
    cplx lead(0.8, -0.4);
    std::vector<ZeroEntry> zeros;
    for (cplx r : roots) zeros.push_back({r, 1});
    FockPolynomial p = roots_to_poly(ZeroMultiset(zeros), lead);
    HadamardData d = HadamardData::make(0, {std::log(lead)}, ZeroMultiset(zeros).sorted_by_modulus(), 0);
    // genus 0 with P = log(lead): f = lead * prod (1 - z/z_j); rescale to match
    // the monic-from-roots convention prod(z - z_j) = prod(-z_j) prod(1 - z/z_j)
    cplx norm = 1.0;
    for (cplx r : roots) norm *= -r;
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.4, 1.0), cplx(2.2, -0.7)}) {
        cplx via_product = hadamard_eval(d, z, roots.size()).value * norm;
        cplx direct = eval_poly(p, z);
        CHECK(std::abs(via_product - direct) <= 1e-10 * (std::abs(direct) + 1.0));
    }
}

TEST_CASE("poly_roots simple cases") {
    FockPolynomial quad({cplx(1.0), cplx(0.0), cplx(1.0)});
    ZeroMultiset r = poly_roots(quad);
    REQUIRE(r.total_multiplicity() == 2);
    bool has_i = false, has_minus_i = false;
    for (const ZeroEntry& e : r.entries()) {
        if (std::abs(e.z - cplx(0.0, 1.0)) < 1e-12) has_i = true;
        if (std::abs(e.z - cplx(0.0, -1.0)) < 1e-12) has_minus_i = true;
    }
    CHECK(has_i);
    CHECK(has_minus_i);
    CHECK_THROWS_AS(poly_roots(FockPolynomial({cplx(3.0)})), Error);
}

TEST_CASE("poly_roots recovers multiplicities of a constructed polynomial") {
    // (z - (1+i))^2 (z + 2)
    std::vector<ZeroEntry> zeros{{cplx(1.0, 1.0), 2}, {cplx(-2.0), 1}};
    FockPolynomial p = roots_to_poly(ZeroMultiset(zeros), cplx(1.0));
    ZeroMultiset r = poly_roots(p);
    REQUIRE(r.total_multiplicity() == 3);
    for (const ZeroEntry& e : r.entries()) {
        if (e.multiplicity == 2) CHECK(std::abs(e.z - cplx(1.0, 1.0)) < 1e-6);
        if (e.multiplicity == 1) CHECK(std::abs(e.z - cplx(-2.0)) < 1e-10);
    }
}

TEST_CASE("roots_to_poly basics") {
    FockPolynomial c = roots_to_poly(ZeroMultiset(), cplx(5.0));
    CHECK(c.degree() == 0);
    CHECK(c.coeffs()[0] == cplx(5.0));

    std::vector<ZeroEntry> pm_i{{cplx(0.0, 1.0), 1}, {cplx(0.0, -1.0), 1}};
    FockPolynomial quad = roots_to_poly(ZeroMultiset(pm_i), cplx(1.0));
    REQUIRE(quad.degree() == 2);
    CHECK(std::abs(quad.coeffs()[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(quad.coeffs()[1]) < 1e-15);
    CHECK(std::abs(quad.coeffs()[2] - cplx(1.0)) < 1e-15);
}

TEST_CASE("root/coefficient round trip at degree 10") {
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<cplx> roots = random_roots(10, 0.1);
        std::vector<ZeroEntry> zeros;
        for (cplx r : roots) zeros.push_back({r, 1});
        cplx lead = random_in_disc(1.0) + cplx(1.5);
        FockPolynomial p = roots_to_poly(ZeroMultiset(zeros), lead);
        ZeroMultiset rec = poly_roots(p);
        FockPolynomial back = roots_to_poly(rec, p.leading());
        REQUIRE(back.degree() == p.degree());
        for (int i = 0; i <= p.degree(); ++i)
            CHECK(std::abs(back.coeffs()[i] - p.coeffs()[i]) <=
                  1e-8 * std::max(1.0, p.max_coeff()));
    }
}

TEST_CASE("reflect_conjugate") {
    std::vector<ZeroEntry> z{{cplx(1.0, 1.0), 1}};
    ZeroMultiset real_axis = reflect_conjugate(ZeroMultiset(z), Line{cplx(0.0), 0.0});
    CHECK(std::abs(real_axis.entries()[0].z - cplx(1.0, -1.0)) < 1e-15);

    // horizontal line at height 1: 0 -> 2i
    std::vector<ZeroEntry> origin{{cplx(0.0), 1}};
    ZeroMultiset lifted = reflect_conjugate(ZeroMultiset(origin), Line{cplx(0.0, 1.0), 0.0});
    CHECK(std::abs(lifted.entries()[0].z - cplx(0.0, 2.0)) < 1e-15);

    // involution with preserved multiplicities
    std::vector<ZeroEntry> mix{{cplx(0.3, -0.8), 2}, {cplx(-1.0, 0.4), 1}};
    Line line{cplx(0.7, -0.2), 0.6};
    ZeroMultiset twice = reflect_conjugate(reflect_conjugate(ZeroMultiset(mix), line), line);
    REQUIRE(twice.entries().size() == mix.size());
    for (std::size_t i = 0; i < mix.size(); ++i) {
        CHECK(std::abs(twice.entries()[i].z - mix[i].z) < 1e-14);
        CHECK(twice.entries()[i].multiplicity == mix[i].multiplicity);
    }
    CHECK(twice.total_multiplicity() == 3);
}

TEST_CASE("multiset_match") {
    std::vector<ZeroEntry> a{{cplx(0.0), 2}, {cplx(1.0, 1.0), 1}};
    MatchReport self = multiset_match(ZeroMultiset(a), ZeroMultiset(a), 1e-9);
    CHECK(self.complete());

    std::vector<ZeroEntry> b{{cplx(0.0), 1}};
    std::vector<ZeroEntry> a2{{cplx(0.0), 2}};
    MatchReport partial = multiset_match(ZeroMultiset(a2), ZeroMultiset(b), 1e-9);
    CHECK_FALSE(partial.complete());
    CHECK(partial.unmatched_a.total_multiplicity() == 1);
    CHECK(partial.unmatched_b.empty());

    std::vector<ZeroEntry> pert{{cplx(1e-12, -1e-12), 2}, {cplx(1.0, 1.0 + 1e-12), 1}};
    MatchReport close = multiset_match(ZeroMultiset(a), ZeroMultiset(pert), 1e-9);
    CHECK(close.complete());
}

TEST_CASE("genus-1 truncated product reproduces sin(pi z)") {
    std::vector<ZeroEntry> zeros;
    const int N = 10000;
    for (int n = 1; n <= N; ++n) {
        zeros.push_back({cplx(static_cast<double>(n)), 1});
        zeros.push_back({cplx(static_cast<double>(-n)), 1});
    }
    // sin(pi z) = pi z prod (1 - z^2/n^2): k = 1, P = log(pi)
    HadamardData d = HadamardData::make(1, {cplx(std::log(kPi))}, ZeroMultiset(zeros), 1);
    // the truncation error is multiplicative (tail bound ~ 4/N on the log), so
    // the deviation scales with |sin(pi z)|, which reaches ~143 at z = 2i
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) > 2.0) continue;
        cplx truth = std::sin(kPi * z);
        CHECK(std::abs(hadamard_eval(d, z, zeros.size()).value - truth) <
              1e-3 * (1.0 + std::abs(truth)));
    }
}
