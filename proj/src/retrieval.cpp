#include "fockpr/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fockpr/errors.hpp"
#include "numerics.hpp"

namespace fockpr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FockPolynomial canonical_phase(const FockPolynomial& p) {
    if (p.is_zero()) return p;
    cplx top = p.leading();
    cplx tau = std::abs(top) / top;
    std::vector<cplx> c = p.coeffs();
    for (cplx& x : c) x *= tau;
    c.back() = cplx(std::abs(top), 0.0); // kill rounding in the anchor coefficient
    return FockPolynomial(std::move(c));
}

// Real-coefficient assembly of lead * prod ((z-a)^2 + b^2) from upper-half-plane
// representatives; exact realness by construction.
FockPolynomial assemble_pair_polynomial(const std::vector<cplx>& reps, double lead) {
    std::vector<double> c{lead};
    for (const cplx& w : reps) {
        double a = w.real(), b2 = w.imag() * w.imag();
        double q0 = a * a + b2, q1 = -2.0 * a;
        std::vector<double> next(c.size() + 2, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k] * q0;
            next[k + 1] += c[k] * q1;
            next[k + 2] += c[k];
        }
        c.swap(next);
    }
    std::vector<cplx> out(c.begin(), c.end());
    return FockPolynomial(std::move(out));
}

std::vector<cplx> pair_up_uhp(const std::vector<cplx>& roots) {
    std::vector<cplx> reps;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        double best = kInf;
        std::size_t bj = i;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(std::conj(roots[i]) - roots[j]);
            if (d < best) {
                best = d;
                bj = j;
            }
        }
        if (bj != i) used[bj] = true;
        cplx z = roots[i];
        reps.push_back(z.imag() >= 0.0 ? z : std::conj(z));
    }
    return reps;
}

ZeroMultiset multiset_from_points(const std::vector<cplx>& pts) {
    std::vector<ZeroEntry> entries;
    for (cplx z : pts) {
        bool merged = false;
        for (ZeroEntry& e : entries) {
            if (std::abs(e.z - z) <= 1e-9 * (1.0 + std::abs(z))) {
                ++e.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) entries.push_back({z, 1});
    }
    return ZeroMultiset(std::move(entries));
}

} // namespace

cplx Frame::to_raw(cplx w) const { return std::polar(1.0, theta) * w + translation; }
cplx Frame::to_normalized(cplx z) const { return std::polar(1.0, -theta) * (z - translation); }

MagnitudeSamples::MagnitudeSamples(std::vector<MagnitudeRecord> records, std::optional<Frame> frame)
    : records_(std::move(records)), frame_(frame) {
    for (const MagnitudeRecord& r : records_)
        if (r.magnitude < 0.0)
            raise(errc::invalid_argument, "MagnitudeSamples: negative magnitude");
}

double MagnitudeSamples::max_magnitude() const {
    double m = 0.0;
    for (const MagnitudeRecord& r : records_) m = std::max(m, r.magnitude);
    return m;
}

double growth_function(GrowthFunctionKind kind, double r) {
    return kind == GrowthFunctionKind::Linear ? r : std::log1p(r);
}

MagnitudeSamples forward_sample(const FockPolynomial& p, const StructuredSet& s) {
    s.validate();
    std::vector<MagnitudeRecord> records;
    for (cplx z : s.all_points()) records.push_back({z, std::abs(eval_poly(p, z))});
    return MagnitudeSamples(std::move(records), Frame{s.theta, s.z1});
}

MagnitudeSamples forward_sample(const FockPolynomial& p, const PointSet& s) {
    std::vector<MagnitudeRecord> records;
    for (cplx z : s.points()) records.push_back({z, std::abs(eval_poly(p, z))});
    return MagnitudeSamples(std::move(records));
}

InterpolationResult interpolate_squared_modulus(const std::vector<std::pair<int, double>>& samples,
                                                double rho, int degree_bound, double rel_tol) {
    if (rho <= 0.0) raise(errc::invalid_argument, "interpolate_squared_modulus: rho must be positive");
    if (degree_bound < 0) raise(errc::invalid_argument, "interpolate_squared_modulus: negative degree");
    if (degree_bound > 15)
        raise(errc::conditioning, "interpolate_squared_modulus: degree bound exceeds the stability envelope (q <= 15)");
    if (samples.size() < static_cast<std::size_t>(2 * degree_bound + 2))
        raise(errc::too_few_points, "interpolate_squared_modulus: need at least 2q+2 samples");

    std::vector<double> nodes, values;
    nodes.reserve(samples.size());
    for (const auto& [n, mag] : samples) {
        if (mag < 0.0) raise(errc::invalid_argument, "interpolate_squared_modulus: negative magnitude");
        nodes.push_back(static_cast<double>(n));
        values.push_back(mag * mag);
    }
    detail::PairFit fit = detail::fit_squared_modulus(nodes, values, degree_bound);
    if (fit.held_out_residual > rel_tol)
        raise(errc::degree_mismatch, "interpolate_squared_modulus: held-out residual exceeds tolerance");

    FockPolynomial f1 = assemble_pair_polynomial(fit.reps, fit.lead);
    // conjugate-symmetric coefficients are structural here; keep the contract assert
    double imag_peak = 0.0;
    for (const cplx& c : f1.coeffs()) imag_peak = std::max(imag_peak, std::abs(c.imag()));
    if (imag_peak > 1e-9 * std::max(f1.max_coeff(), 1e-300))
        raise(errc::degree_mismatch, "interpolate_squared_modulus: coefficients are not real");
    return {std::move(f1), fit.held_out_residual, std::move(fit.reps), fit.lead};
}

ZeroMultiset zero_pairs_from_line(const FockPolynomial& f1, double rho) {
    if (rho <= 0.0) raise(errc::invalid_argument, "zero_pairs_from_line: rho must be positive");
    if (f1.is_zero() || f1.degree() == 0) return ZeroMultiset();

    ZeroMultiset roots = poly_roots(f1);
    std::vector<ZeroEntry> scaled;
    double peak = 0.0;
    for (const ZeroEntry& e : roots.entries()) {
        scaled.push_back({e.z * rho, e.multiplicity});
        peak = std::max(peak, std::abs(e.z * rho));
    }
    ZeroMultiset out(std::move(scaled));

    ZeroMultiset conj_set = reflect_conjugate(out, Line{cplx(0.0), 0.0});
    MatchReport match = multiset_match(out, conj_set, 1e-6 * (1.0 + peak));
    if (!match.complete())
        raise(errc::conjugate_closure, "zero_pairs_from_line: roots do not pair under conjugation");
    return out;
}

namespace {

struct SampleView {
    std::vector<cplx> points;
    std::vector<double> mags;
    double max_mag = 0.0;
};

SampleView view_of(const MagnitudeSamples& samples) {
    SampleView v;
    for (const MagnitudeRecord& r : samples.records()) {
        v.points.push_back(r.point);
        v.mags.push_back(r.magnitude);
        v.max_mag = std::max(v.max_mag, r.magnitude);
    }
    return v;
}

// Least-squares optimal scale s minimizing sum (s * prod_i - mag_i)^2, then the
// max absolute misfit. Scores a candidate zero set against the samples.
double scaled_residual(const SampleView& v, const std::vector<cplx>& roots, double* scale_out) {
    double num = 0.0, den = 0.0;
    std::vector<double> prods(v.points.size());
    for (std::size_t i = 0; i < v.points.size(); ++i) {
        double prod = 1.0;
        for (const cplx& w : roots) prod *= std::abs(v.points[i] - w);
        prods[i] = prod;
        num += prod * v.mags[i];
        den += prod * prod;
    }
    double s = den > 0.0 ? std::max(num / den, 0.0) : 0.0;
    if (scale_out) *scale_out = s;
    double worst = 0.0;
    for (std::size_t i = 0; i < v.points.size(); ++i)
        worst = std::max(worst, std::abs(s * prods[i] - v.mags[i]));
    return worst;
}

} // namespace

DisambiguationResult disambiguate_zeros(const ZeroMultiset& s1, const ZeroMultiset& s2,
                                        Line line2, const MagnitudeSamples& all_samples,
                                        int q, double residual_tol) {
    if (s1.total_multiplicity() != 2 * q || s2.total_multiplicity() != 2 * q)
        raise(errc::invalid_argument, "disambiguate_zeros: multisets must have total multiplicity 2q");
    if (q == 0) return {ZeroMultiset(), false};

    std::vector<cplx> reps = pair_up_uhp(s1.expanded());
    std::vector<cplx> s2_flat = s2.expanded();
    auto member = [&](cplx z, double tol) {
        for (cplx s : s2_flat)
            if (std::abs(s - z) <= tol) return true;
        return false;
    };

    // collapse identical representatives into classes
    std::vector<std::pair<cplx, int>> classes;
    for (cplx w : reps) {
        bool merged = false;
        for (auto& [z, count] : classes) {
            if (std::abs(z - w) <= 1e-9 * (1.0 + std::abs(w))) {
                ++count;
                merged = true;
                break;
            }
        }
        if (!merged) classes.emplace_back(w, 1);
    }

    std::vector<cplx> resolved;
    struct Ambiguous {
        cplx w;
        int count;
    };
    std::vector<Ambiguous> open;
    for (const auto& [w, count] : classes) {
        if (w.imag() <= 1e-9 * (1.0 + std::abs(w))) {
            for (int i = 0; i < count; ++i) resolved.push_back(cplx(w.real(), 0.0));
            continue;
        }
        if (count == 1) {
            double tol = 1e-4 * (1.0 + std::abs(w));
            bool a_ok = member(w, tol) && member(reflect_conjugate(w, line2), tol);
            bool b_ok = member(std::conj(w), tol) && member(reflect_conjugate(std::conj(w), line2), tol);
            if (a_ok && !b_ok) {
                resolved.push_back(w);
                continue;
            }
            if (b_ok && !a_ok) {
                resolved.push_back(std::conj(w));
                continue;
            }
        }
        open.push_back({w, count});
    }

    SampleView v = view_of(all_samples);
    if (open.empty()) {
        std::vector<cplx> all = resolved;
        double res = scaled_residual(v, all, nullptr);
        if (res > residual_tol * std::max(v.max_mag, 1e-300))
            raise(errc::no_consistent_assignment,
                  "disambiguate_zeros: selected zeros exceed the residual tolerance");
        return {multiset_from_points(all), false};
    }
    if (open.size() > 12)
        raise(errc::no_consistent_assignment,
              "disambiguate_zeros: more than 12 unresolved conjugate pairs");

    // enumerate splits alpha_i in [0, count_i]: alpha copies of w, rest conj(w)
    std::vector<int> radix(open.size());
    long total = 1;
    for (std::size_t i = 0; i < open.size(); ++i) {
        radix[i] = open[i].count + 1;
        total *= radix[i];
        if (total > 4096)
            raise(errc::no_consistent_assignment, "disambiguate_zeros: fallback space too large");
    }
    double best = kInf;
    std::vector<cplx> best_set;
    for (long code = 0; code < total; ++code) {
        std::vector<cplx> cand = resolved;
        long rest = code;
        for (std::size_t i = 0; i < open.size(); ++i) {
            int alpha = static_cast<int>(rest % radix[i]);
            rest /= radix[i];
            for (int k = 0; k < alpha; ++k) cand.push_back(open[i].w);
            for (int k = alpha; k < open[i].count; ++k) cand.push_back(std::conj(open[i].w));
        }
        double res = scaled_residual(v, cand, nullptr);
        if (res < best) {
            best = res;
            best_set = std::move(cand);
        }
    }
    if (best > residual_tol * std::max(v.max_mag, 1e-300))
        raise(errc::no_consistent_assignment,
              "disambiguate_zeros: no candidate meets the residual tolerance");
    return {multiset_from_points(best_set), true};
}

namespace {

// progression lookup: (n, magnitude) pairs for every progression point present
// in the sample list
std::vector<std::pair<int, double>> match_progression(const MagnitudeSamples& samples,
                                                      cplx anchor, double rho, double theta,
                                                      int truncation) {
    cplx dir = std::polar(1.0, theta);
    std::vector<std::pair<int, double>> out;
    for (int n = -truncation; n <= truncation; ++n) {
        cplx target = anchor + rho * dir * static_cast<double>(n);
        double tol = 1e-9 * (1.0 + std::abs(target));
        for (const MagnitudeRecord& r : samples.records()) {
            if (std::abs(r.point - target) <= tol) {
                out.emplace_back(n, r.magnitude);
                break;
            }
        }
    }
    return out;
}

struct LadderOutcome {
    std::vector<cplx> roots;
    double lead = 0.0;
    double rel_residual = kInf;
    bool used_fallback = false;
};

double per_point_relative_residual(const SampleView& v, const std::vector<cplx>& roots,
                                   double lead) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.points.size(); ++i) {
        double model = lead;
        for (const cplx& w : roots) model *= std::abs(v.points[i] - w);
        worst = std::max(worst,
                         std::abs(model - v.mags[i]) / std::max(v.mags[i], 1e-9 * v.max_mag));
    }
    return worst;
}

} // namespace

RetrievalResult reconstruct(const MagnitudeSamples& samples, const StructuredSet& s, int q_max) {
    s.validate();
    if (q_max < 0) raise(errc::invalid_argument, "reconstruct: q_max must be >= 0");
    if (q_max > 15) raise(errc::conditioning, "reconstruct: q_max exceeds the stability envelope");

    Frame frame{s.theta, s.z1};
    auto line1 = match_progression(samples, s.z1, s.rho1, s.theta, s.truncation);
    auto line2 = match_progression(samples, s.z2, s.rho2, s.theta, s.truncation);
    // a degree-q fit needs 2q+2 points per line; degrees beyond what the
    // progressions can carry are simply not probed
    int carried = static_cast<int>(std::min(line1.size(), line2.size()));
    int effective_q_max = std::min(q_max, carried / 2 - 1);
    if (effective_q_max < 0)
        raise(errc::too_few_points, "reconstruct: progressions carry too few samples");
    q_max = effective_q_max;

    // normalized frame: L1 = R, L2 horizontal through zeta2
    cplx zeta2 = frame.to_normalized(s.z2);
    Line nline2{zeta2, 0.0};

    std::vector<MagnitudeRecord> normalized;
    for (const MagnitudeRecord& r : samples.records())
        normalized.push_back({frame.to_normalized(r.point), r.magnitude});
    MagnitudeSamples nsamples(std::move(normalized), Frame{0.0, cplx(0.0)});
    SampleView v = view_of(nsamples);

    // degree detection: smallest q passing held-out interpolation on L1, with
    // L2 as the fallback when L1 alone cannot settle the fit
    int q = -1;
    for (int probe = 0; probe <= q_max && q < 0; ++probe) {
        try {
            interpolate_squared_modulus(line1, s.rho1, probe);
            q = probe;
        } catch (const Error& e) {
            if (std::string(e.code()) != errc::degree_mismatch) throw;
        }
    }
    for (int probe = 0; probe <= q_max && q < 0; ++probe) {
        try {
            interpolate_squared_modulus(line2, s.rho2, probe);
            q = probe;
        } catch (const Error& e) {
            if (std::string(e.code()) != errc::degree_mismatch) throw;
        }
    }
    if (q < 0) raise(errc::degree_overflow, "reconstruct: no degree q <= q_max fits the samples");

    RetrievalResult result;
    result.detected_degree = q;
    result.frame = frame;

    if (q == 0 || v.max_mag == 0.0) {
        double lead = 0.0;
        scaled_residual(v, {}, &lead);
        result.recovered = canonical_phase(FockPolynomial({cplx(lead)}));
        result.ambiguity_flag = false;
        double worst = 0.0;
        for (const MagnitudeRecord& r : samples.records())
            worst = std::max(worst, std::abs(std::abs(eval_poly(result.recovered, r.point)) - r.magnitude));
        result.residual = worst;
        return result;
    }

    // per-line interpolation; the zero pairs are carried in factored form (the
    // re-rooted coefficients would lose the clustered pairs)
    InterpolationResult f1 = interpolate_squared_modulus(line1, s.rho1, q, kInf);
    InterpolationResult f2 = interpolate_squared_modulus(line2, s.rho2, q, kInf);

    std::vector<cplx> s1_points, s2_points;
    for (const cplx& rep : f1.pair_reps) {
        s1_points.push_back(s.rho1 * rep);
        s1_points.push_back(s.rho1 * std::conj(rep));
    }
    for (const cplx& rep : f2.pair_reps) {
        s2_points.push_back(zeta2 + s.rho2 * rep);
        s2_points.push_back(zeta2 + s.rho2 * std::conj(rep));
    }
    ZeroMultiset s1 = multiset_from_points(s1_points);
    ZeroMultiset s2 = multiset_from_points(s2_points);

    double lead_guess = std::sqrt(std::max(f1.lead, 0.0)) / std::pow(s.rho1, q);

    LadderOutcome best;
    auto consider = [&](const std::vector<cplx>& roots0, double lead0, bool fallback) {
        detail::JointFit polished = detail::joint_magnitude_fit(v.points, v.mags, roots0, lead0);
        double rel = per_point_relative_residual(v, polished.roots, polished.lead);
        if (rel < best.rel_residual) {
            best.roots = polished.roots;
            best.lead = polished.lead;
            best.rel_residual = rel;
            best.used_fallback = fallback;
        }
        return rel;
    };
    const double accept = 1e-7;

    // rung A: the membership disambiguation
    bool disambiguation_fell_back = false;
    try {
        DisambiguationResult d = disambiguate_zeros(s1, s2, nline2, nsamples, q);
        disambiguation_fell_back = d.used_fallback;
        consider(d.zeros.expanded(), lead_guess, d.used_fallback);
    } catch (const Error& e) {
        if (std::string(e.code()) != errc::no_consistent_assignment) throw;
        disambiguation_fell_back = true;
    }

    // rung B: enumeration over conjugate choices of the line-1 pairs
    if (best.rel_residual > accept) {
        std::vector<cplx> reps = pair_up_uhp(s1.expanded());
        int m = static_cast<int>(reps.size());
        if (m <= 12) {
            std::vector<std::pair<double, std::vector<cplx>>> ranked;
            for (long bits = 0; bits < (1L << m); ++bits) {
                std::vector<cplx> cand(reps.size());
                for (int i = 0; i < m; ++i)
                    cand[i] = (bits >> i) & 1 ? std::conj(reps[i]) : reps[i];
                ranked.emplace_back(scaled_residual(v, cand, nullptr), std::move(cand));
            }
            std::sort(ranked.begin(), ranked.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t i = 0; i < std::min<std::size_t>(ranked.size(), 10); ++i) {
                if (consider(ranked[i].second, lead_guess, true) <= accept) break;
            }
        }
    }

    // rung C: fuse the two lines' multisets; actual zeros appear in both
    if (best.rel_residual > accept) {
        std::vector<cplx> a = s1.expanded();
        std::vector<cplx> b = s2.expanded();
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                pairs.emplace_back(std::abs(a[i] - b[j]), i, j);
        std::sort(pairs.begin(), pairs.end());
        std::vector<bool> ua(a.size(), false), ub(b.size(), false);
        std::vector<cplx> sel;
        for (const auto& [d, i, j] : pairs) {
            if (ua[i] || ub[j]) continue;
            ua[i] = ub[j] = true;
            sel.push_back(0.5 * (a[i] + b[j]));
            if (static_cast<int>(sel.size()) == q) break;
        }
        if (static_cast<int>(sel.size()) == q) consider(sel, lead_guess, true);
    }

    // rung D: deterministic jitter multistart around the best candidate so far
    if (best.rel_residual > accept && !best.roots.empty()) {
        static const cplx kDirs[8] = {{0.70, 0.71}, {-0.90, 0.43}, {0.20, -0.97}, {-0.55, -0.83},
                                      {0.99, 0.10}, {-0.30, 0.95}, {0.60, -0.80}, {-0.80, -0.60}};
        std::vector<cplx> center = best.roots;
        double lead_center = best.lead;
        for (double scale : {0.02, 0.06, 0.15}) {
            for (const cplx& dir : kDirs) {
                std::vector<cplx> cand = center;
                for (std::size_t k = 0; k < cand.size(); ++k)
                    cand[k] += scale * dir * (1.0 + 0.3 * cplx(0.0, 1.0) * static_cast<double>(k));
                if (consider(cand, lead_center, true) <= accept) break;
            }
            if (best.rel_residual <= accept) break;
        }
    }

    if (!std::isfinite(best.rel_residual))
        raise(errc::no_consistent_assignment, "reconstruct: no candidate zero assignment found");

    // assemble in raw coordinates with canonical phase
    std::vector<cplx> raw_roots(best.roots.size());
    for (std::size_t i = 0; i < best.roots.size(); ++i) raw_roots[i] = frame.to_raw(best.roots[i]);
    FockPolynomial recovered =
        canonical_phase(roots_to_poly(multiset_from_points(raw_roots), cplx(best.lead)));

    double worst = 0.0;
    for (const MagnitudeRecord& r : samples.records())
        worst = std::max(worst, std::abs(std::abs(eval_poly(recovered, r.point)) - r.magnitude));

    result.recovered = std::move(recovered);
    result.residual = worst;
    result.ambiguity_flag = disambiguation_fell_back || best.used_fallback;
    return result;
}

std::pair<bool, std::optional<cplx>> phase_equivalent(const FockPolynomial& a,
                                                      const FockPolynomial& b, double tol) {
    if (tol <= 0.0) raise(errc::invalid_argument, "phase_equivalent: tolerance must be positive");
    if (a.is_zero() && b.is_zero()) return {true, cplx(1.0)};
    if (a.is_zero() || b.is_zero() || a.degree() != b.degree()) return {false, std::nullopt};

    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    double scale = 0.0;
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        scale = std::max({scale, std::abs(ca[i]), std::abs(cb[i])});
        double weight = std::abs(ca[i]) + std::abs(cb[i]);
        if (weight > best && cb[i] != cplx(0.0)) {
            best = weight;
            k = i;
        }
    }
    if (best < 0.0) return {false, std::nullopt};
    cplx tau = ca[k] / cb[k];
    if (std::abs(std::abs(tau) - 1.0) > tol) return {false, std::nullopt};
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (std::abs(ca[i] - tau * cb[i]) > tol * scale) return {false, std::nullopt};
    return {true, tau};
}

std::pair<ClosedFormFunction, ClosedFormFunction> counterexample_pair(double a) {
    if (a <= 0.0) raise(errc::invalid_argument, "counterexample_pair: a must be positive");
    double sigma = kPi / (2.0 * a);
    return {ClosedFormFunction::shifted_sine(sigma, kPi / 4.0),
            ClosedFormFunction::shifted_sine(-sigma, kPi / 4.0)};
}

CounterexampleReport verify_counterexample(
    const std::pair<ClosedFormFunction, ClosedFormFunction>& pair, double a, int n_points,
    double tol) {
    if (a <= 0.0) raise(errc::invalid_argument, "verify_counterexample: a must be positive");
    if (n_points < 4) raise(errc::invalid_argument, "verify_counterexample: need at least 4 points");

    const ClosedFormFunction& fp = pair.first;
    const ClosedFormFunction& fm = pair.second;

    // (i) modulus agreement on the vertical-line set a Z + i [-5, 5]
    int half = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_points)) / 2.0)));
    int columns = 2 * half + 1;
    int rows = (n_points + columns - 1) / columns;
    rows = std::max(rows, 2);
    double online_gap = 0.0;
    for (int k = -half; k <= half; ++k) {
        for (int j = 0; j < rows; ++j) {
            double y = -5.0 + 10.0 * j / (rows - 1);
            cplx z(a * k, y);
            online_gap = std::max(online_gap, std::abs(std::abs(fp.value(z)) - std::abs(fm.value(z))));
        }
    }

    // (ii) no unit-modulus tau aligns the functions off the lines
    std::vector<cplx> off;
    for (int k = -3; k <= 2; ++k)
        for (int j = -1; j <= 1; ++j) off.push_back(cplx(a * (k + 0.5), static_cast<double>(j)));
    double min_over_tau = kInf;
    for (int t = 0; t < 360; ++t) {
        cplx tau = std::polar(1.0, 2.0 * kPi * t / 360.0);
        double worst = 0.0;
        for (cplx z : off) worst = std::max(worst, std::abs(fp.value(z) - tau * fm.value(z)));
        min_over_tau = std::min(min_over_tau, worst);
    }

    CounterexampleReport report;
    report.online_max_gap = online_gap;
    report.offline_phase_gap = min_over_tau;
    report.modulus_agrees = online_gap <= tol;
    report.not_phase_equivalent = min_over_tau > 0.1;
    return report;
}

GrowthEstimate growth_type_estimate(const ClosedFormFunction& f, double rho,
                                    const std::vector<double>& radii, int angle_count) {
    if (radii.size() < 3) raise(errc::invalid_argument, "growth_type_estimate: need >= 3 radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1])
            raise(errc::invalid_argument, "growth_type_estimate: radii must increase");
    if (angle_count < 360) raise(errc::invalid_argument, "growth_type_estimate: angle_count >= 360");
    if (rho <= 0.0) raise(errc::invalid_argument, "growth_type_estimate: rho must be positive");

    GrowthEstimate est;
    est.order = rho;
    for (double r : radii) {
        double peak = -kInf;
        for (int k = 0; k < angle_count; ++k) {
            cplx z = std::polar(r, 2.0 * kPi * k / angle_count);
            peak = std::max(peak, f.log_magnitude(z));
        }
        est.per_radius.emplace_back(r, peak / std::pow(r, rho));
    }
    est.type_estimate = est.per_radius.back().second;
    est.tail_monotone = true;
    std::size_t n = est.per_radius.size();
    for (std::size_t i = n >= 3 ? n - 3 : 0; i + 1 < n; ++i)
        if (est.per_radius[i + 1].second > est.per_radius[i].second * 1.02 + 1e-12)
            est.tail_monotone = false;
    return est;
}

EarlReport earl_bound_check(const ClosedFormFunction& f, const ShiftedLattice& lattice,
                            GrowthFunctionKind h, double radius, double slack) {
    double tau = f.tau_lower();
    if (exact_lower_density(lattice) <= 2.0 * tau / kPi)
        raise(errc::density_hypothesis,
              "earl_bound_check: lattice density does not exceed 2 tau / pi");
    if (radius <= 4.0) raise(errc::invalid_argument, "earl_bound_check: radius too small");

    EarlReport report;
    report.h = h;
    report.radius = radius;
    report.slack = slack;

    double kl = -kInf;
    PointSet window = enumerate_points(lattice, radius);
    for (cplx z : window.points()) {
        double az = std::abs(z);
        if (az < 2.0) continue;
        double lm = f.log_magnitude(z);
        if (lm == -kInf) continue;
        kl = std::max(kl, lm / growth_function(h, az));
    }
    double kg = -kInf;
    const int angles = 720;
    for (int k = 0; k < angles; ++k) {
        cplx z = std::polar(radius, 2.0 * kPi * k / angles);
        double lm = f.log_magnitude(z);
        if (lm == -kInf) continue;
        kg = std::max(kg, lm / growth_function(h, radius));
    }
    report.kappa_lattice = kl;
    report.kappa_global = kg;
    report.bound_holds = kg <= kl * (1.0 + slack) + 1e-12;
    return report;
}

} // namespace fockpr
