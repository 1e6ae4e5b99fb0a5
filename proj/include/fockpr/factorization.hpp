#ifndef FOCKPR_FACTORIZATION_HPP
#define FOCKPR_FACTORIZATION_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "fockpr/fock_core.hpp"

namespace fockpr {

struct ZeroEntry {
    cplx z;
    int multiplicity = 1;
};

// Multiset of zeros with multiplicities. Entries are kept distinct up to the
// root-clustering tolerance 1e-7 * (1 + |z|).
class ZeroMultiset {
public:
    ZeroMultiset() = default;
    explicit ZeroMultiset(std::vector<ZeroEntry> entries);

    const std::vector<ZeroEntry>& entries() const noexcept { return entries_; }
    int total_multiplicity() const;
    bool empty() const noexcept { return entries_.empty(); }
    // Flat list with every zero repeated per its multiplicity.
    std::vector<cplx> expanded() const;
    ZeroMultiset sorted_by_modulus() const;

private:
    std::vector<ZeroEntry> entries_;
};

// f(z) = z^k e^{P(z)} prod_j E(z/z_j; genus) with nonzero zeros z_j.
struct HadamardData {
    int k = 0;                     // order of the zero at the origin
    std::vector<cplx> p_coeffs{};  // coefficients of P, degree <= 2
    ZeroMultiset zeros;            // nonzero zeros, sorted by increasing modulus
    int genus = 0;                 // 0, 1 or 2

    static HadamardData make(int k, std::vector<cplx> p_coeffs, ZeroMultiset zeros, int genus);
};

struct HadamardValue {
    cplx value;
    double tail_log_bound = 0.0; // sum_{j>N} |z/z_j|^{genus+1}
};

struct Line {
    cplx anchor;
    double angle = 0.0;
};

struct MatchReport {
    struct Pair {
        cplx a;
        cplx b;
        int multiplicity = 1;
    };
    std::vector<Pair> matched;
    ZeroMultiset unmatched_a;
    ZeroMultiset unmatched_b;

    bool complete() const { return unmatched_a.empty() && unmatched_b.empty(); }
};

// Weierstrass primary factor E(u; p) = (1-u) exp(u + u^2/2 + ... + u^p/p).
cplx primary_factor(cplx u, int genus);
// log|E(u; p)| without forming the (possibly huge) exponential.
double log_abs_primary_factor(cplx u, int genus);

// Truncated Hadamard product over the first `truncation` zeros, evaluated by
// log-magnitude/phase accumulation. Throws truncation-too-short when the tail
// bound exceeds tail_tol.
HadamardValue hadamard_eval(const HadamardData& data, cplx z, std::size_t truncation,
                            double tail_tol = std::numeric_limits<double>::infinity());

// All roots with multiplicity by Aberth-Ehrlich iteration from a perturbed
// circle, Newton-polished, clustered at 1e-7 * (1 + |root|).
ZeroMultiset poly_roots(const FockPolynomial& p);

// leading * prod (z - z_j)^{m_j} by coefficient convolution.
FockPolynomial roots_to_poly(const ZeroMultiset& zeros, cplx leading);

// Reflection across the line (conjugation in the line frame):
// w -> anchor + e^{i angle} conj(e^{-i angle} (w - anchor)).
ZeroMultiset reflect_conjugate(const ZeroMultiset& zeros, Line line);
cplx reflect_conjugate(cplx w, Line line);

// Greedy nearest-pair matching with multiplicity accounting under distance tol.
MatchReport multiset_match(const ZeroMultiset& a, const ZeroMultiset& b, double tol);

} // namespace fockpr

#endif
