#include "fockpr/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fockpr/errors.hpp"

namespace fockpr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClusterTol = 1e-7; // relative root-merging tolerance

// p(z) and p'(z) by Horner.
std::pair<cplx, cplx> horner2(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

// Backward-error scale sum |c_k| |z|^k; a root is converged when
// |p(z)| <= tol * scale(z).
double error_scale(const std::vector<cplx>& c, double az) {
    double s = 0.0, zk = 1.0;
    for (const cplx& ck : c) {
        s += std::abs(ck) * zk;
        zk *= az;
    }
    return s;
}

} // namespace

ZeroMultiset::ZeroMultiset(std::vector<ZeroEntry> entries) : entries_(std::move(entries)) {
    for (const ZeroEntry& e : entries_)
        if (e.multiplicity < 1)
            raise(errc::invalid_argument, "ZeroMultiset: multiplicities must be >= 1");
}

int ZeroMultiset::total_multiplicity() const {
    int total = 0;
    for (const ZeroEntry& e : entries_) total += e.multiplicity;
    return total;
}

std::vector<cplx> ZeroMultiset::expanded() const {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(total_multiplicity()));
    for (const ZeroEntry& e : entries_)
        for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.z);
    return out;
}

ZeroMultiset ZeroMultiset::sorted_by_modulus() const {
    std::vector<ZeroEntry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
        double ma = std::abs(a.z), mb = std::abs(b.z);
        if (ma != mb) return ma < mb;
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return ZeroMultiset(std::move(sorted));
}

HadamardData HadamardData::make(int k, std::vector<cplx> p_coeffs, ZeroMultiset zeros, int genus) {
    if (k < 0) raise(errc::invalid_argument, "HadamardData: k must be >= 0");
    if (genus < 0 || genus > 2) raise(errc::invalid_argument, "HadamardData: genus must be 0, 1 or 2");
    if (p_coeffs.size() > 3) raise(errc::invalid_argument, "HadamardData: deg P must be <= 2");
    for (const ZeroEntry& e : zeros.entries())
        if (e.z == cplx(0.0))
            raise(errc::invalid_argument, "HadamardData: zeros must be nonzero (origin order is k)");
    HadamardData d;
    d.k = k;
    d.p_coeffs = std::move(p_coeffs);
    d.zeros = zeros.sorted_by_modulus();
    d.genus = genus;
    return d;
}

cplx primary_factor(cplx u, int genus) {
    switch (genus) {
        case 0: return 1.0 - u;
        case 1: return (1.0 - u) * std::exp(u);
        case 2: return (1.0 - u) * std::exp(u + 0.5 * u * u);
        default: raise(errc::invalid_argument, "primary_factor: genus must be 0, 1 or 2");
    }
}

double log_abs_primary_factor(cplx u, int genus) {
    cplx one_minus = 1.0 - u;
    double head = one_minus == cplx(0.0) ? -kInf : std::log(std::abs(one_minus));
    switch (genus) {
        case 0: return head;
        case 1: return head + u.real();
        case 2: return head + u.real() + 0.5 * (u * u).real();
        default: raise(errc::invalid_argument, "log_abs_primary_factor: genus must be 0, 1 or 2");
    }
}

HadamardValue hadamard_eval(const HadamardData& data, cplx z, std::size_t truncation,
                            double tail_tol) {
    const auto expanded = data.zeros.expanded();
    if (truncation > expanded.size())
        raise(errc::invalid_argument, "hadamard_eval: truncation exceeds the zero list");

    double az = std::abs(z);
    double tail = 0.0;
    for (std::size_t j = truncation; j < expanded.size(); ++j)
        tail += std::pow(az / std::abs(expanded[j]), data.genus + 1);
    if (tail > tail_tol)
        raise(errc::truncation_too_short, "hadamard_eval: tail bound exceeds tolerance");

    // log-magnitude plus phase accumulation keeps partial products bounded
    double logmag = 0.0, phase = 0.0;
    if (data.k > 0) {
        if (z == cplx(0.0)) return {cplx(0.0), tail};
        logmag += data.k * std::log(az);
        phase += data.k * std::arg(z);
    }
    cplx pz = 0.0;
    for (std::size_t i = data.p_coeffs.size(); i-- > 0;) pz = pz * z + data.p_coeffs[i];
    logmag += pz.real();
    phase += pz.imag();
    for (std::size_t j = 0; j < truncation; ++j) {
        cplx e = primary_factor(z / expanded[j], data.genus);
        if (e == cplx(0.0)) return {cplx(0.0), tail};
        logmag += std::log(std::abs(e));
        phase += std::arg(e);
    }
    if (logmag == -kInf) return {cplx(0.0), tail};
    return {std::exp(logmag) * cplx(std::cos(phase), std::sin(phase)), tail};
}

ZeroMultiset poly_roots(const FockPolynomial& p) {
    std::vector<cplx> c = p.coeffs();
    if (p.degree() < 1 || p.is_zero())
        raise(errc::invalid_argument, "poly_roots: degree must be >= 1");

    // strip exact zeros at the origin
    int origin_mult = 0;
    while (c.size() > 1 && c.front() == cplx(0.0)) {
        c.erase(c.begin());
        ++origin_mult;
    }
    int q = static_cast<int>(c.size()) - 1;

    std::vector<cplx> roots;
    if (q >= 1) {
        roots.resize(q);
        double r0 = std::pow(std::abs(c.front() / c.back()), 1.0 / q);
        if (!(r0 > 0.0) || !std::isfinite(r0)) r0 = 1.0;
        for (int j = 0; j < q; ++j) {
            double angle = 2.0 * kPi * (j + 0.37) / q;
            double radius = r0 * (1.0 + 0.1 * (j + 1) / q);
            roots[j] = std::polar(radius, angle);
        }
        const double eps = std::numeric_limits<double>::epsilon();
        bool converged = false;
        for (int sweep = 0; sweep < 500 && !converged; ++sweep) {
            converged = true;
            for (int i = 0; i < q; ++i) {
                auto [pv, dv] = horner2(c, roots[i]);
                if (std::abs(pv) <= 4.0 * eps * error_scale(c, std::abs(roots[i]))) continue;
                cplx ratio = dv == cplx(0.0) ? cplx(0.0) : pv / dv;
                cplx rep = 0.0;
                for (int k = 0; k < q; ++k)
                    if (k != i) rep += 1.0 / (roots[i] - roots[k]);
                cplx denom = ratio == cplx(0.0) ? cplx(1.0) : 1.0 - ratio * rep;
                cplx step = denom == cplx(0.0) ? ratio : ratio / denom;
                roots[i] -= step;
                if (std::abs(step) > 1e-14 * (1.0 + std::abs(roots[i]))) converged = false;
            }
        }
        if (!converged) {
            // final residual check decides whether the cap was actually harmful
            for (const cplx& r : roots) {
                auto [pv, dv] = horner2(c, r);
                (void)dv;
                if (std::abs(pv) > 1e-10 * std::max(error_scale(c, std::abs(r)), p.max_coeff()))
                    raise(errc::nonconvergence, "poly_roots: Aberth iteration did not converge");
            }
        }
        // Newton polish
        for (cplx& r : roots) {
            for (int it = 0; it < 3; ++it) {
                auto [pv, dv] = horner2(c, r);
                if (dv == cplx(0.0)) break;
                cplx step = pv / dv;
                if (std::abs(step) > 0.5 * (1.0 + std::abs(r))) break;
                r -= step;
            }
        }
    }

    // cluster merge at 1e-7 * (1 + |root|)
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<ZeroEntry> entries;
    for (cplx r : roots) {
        bool merged = false;
        for (ZeroEntry& e : entries) {
            if (std::abs(e.z - r) <= kClusterTol * (1.0 + std::abs(r))) {
                e.z = (e.z * static_cast<double>(e.multiplicity) + r) /
                      static_cast<double>(e.multiplicity + 1);
                ++e.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) entries.push_back({r, 1});
    }
    if (origin_mult > 0) entries.insert(entries.begin(), {cplx(0.0), origin_mult});
    return ZeroMultiset(std::move(entries));
}

FockPolynomial roots_to_poly(const ZeroMultiset& zeros, cplx leading) {
    std::vector<cplx> c{leading};
    for (const ZeroEntry& e : zeros.entries()) {
        for (int i = 0; i < e.multiplicity; ++i) {
            c.push_back(cplx(0.0));
            for (std::size_t k = c.size() - 1; k-- > 0;) {
                cplx keep = c[k];
                c[k + 1] += keep;
                c[k] = -e.z * keep;
            }
        }
    }
    return FockPolynomial(std::move(c));
}

cplx reflect_conjugate(cplx w, Line line) {
    cplx rot = std::polar(1.0, line.angle);
    return line.anchor + rot * std::conj((w - line.anchor) / rot);
}

ZeroMultiset reflect_conjugate(const ZeroMultiset& zeros, Line line) {
    std::vector<ZeroEntry> out;
    out.reserve(zeros.entries().size());
    for (const ZeroEntry& e : zeros.entries()) out.push_back({reflect_conjugate(e.z, line), e.multiplicity});
    return ZeroMultiset(std::move(out));
}

MatchReport multiset_match(const ZeroMultiset& a, const ZeroMultiset& b, double tol) {
    if (tol <= 0.0) raise(errc::invalid_argument, "multiset_match: tolerance must be positive");
    struct Item {
        cplx z;
        int m;
    };
    std::vector<Item> ra, rb;
    for (const ZeroEntry& e : a.entries()) ra.push_back({e.z, e.multiplicity});
    for (const ZeroEntry& e : b.entries()) rb.push_back({e.z, e.multiplicity});

    MatchReport report;
    while (true) {
        double best = kInf;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < ra.size(); ++i) {
            if (ra[i].m == 0) continue;
            for (std::size_t j = 0; j < rb.size(); ++j) {
                if (rb[j].m == 0) continue;
                double d = std::abs(ra[i].z - rb[j].z);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best > tol) break;
        int m = std::min(ra[bi].m, rb[bj].m);
        report.matched.push_back({ra[bi].z, rb[bj].z, m});
        ra[bi].m -= m;
        rb[bj].m -= m;
    }
    std::vector<ZeroEntry> la, lb;
    for (const Item& it : ra)
        if (it.m > 0) la.push_back({it.z, it.m});
    for (const Item& it : rb)
        if (it.m > 0) lb.push_back({it.z, it.m});
    report.unmatched_a = ZeroMultiset(std::move(la));
    report.unmatched_b = ZeroMultiset(std::move(lb));
    return report;
}

} // namespace fockpr
