#ifndef FOCKPR_SERIALIZATION_HPP
#define FOCKPR_SERIALIZATION_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fockpr/factorization.hpp"
#include "fockpr/fock_core.hpp"
#include "fockpr/lattice_geometry.hpp"
#include "fockpr/retrieval.hpp"

// File formats:
//   expansions      {"basis": "hermite"|"monomial", "coeffs": [[re, im], ...]}
//   lattice         {"z0": [re, im], "omega1": [re, im], "omega2": [re, im]}
//   structured set  {"z1": .., "z2": .., "theta": t, "rho1": .., "rho2": ..,
//                    "extra": [[re, im], ...], "truncation": N}
//   zero multiset   {"zeros": [{"z": [re, im], "m": k}, ...]}
//   point set       CSV, one "re,im" per line
//   samples         CSV, one "re,im,magnitude" per line
//   closed-form     {"kind": "polynomial"|"shifted-sine"|"scaled-sine"|"exp-quadratic", ...}

namespace fockpr {

using json = nlohmann::json;

json to_json(const HermiteExpansion& h);
json to_json(const FockPolynomial& p);
json to_json(const ShiftedLattice& lattice);
json to_json(const StructuredSet& s);
json to_json(const ZeroMultiset& zeros);
json to_json(const ConditionReport& report);
json to_json(const ClosedFormFunction& f);
json to_json(const Frame& frame);
json to_json(const RetrievalResult& result);

HermiteExpansion hermite_from_json(const json& j);
FockPolynomial fock_from_json(const json& j);
// Dispatches on the "basis" field; hermite input is converted to the Fock side.
FockPolynomial signal_as_fock_from_json(const json& j);
ShiftedLattice lattice_from_json(const json& j);
StructuredSet structured_set_from_json(const json& j);
ZeroMultiset zero_multiset_from_json(const json& j);
ClosedFormFunction closed_form_from_json(const json& j);

std::string point_set_to_csv(const PointSet& points);
PointSet point_set_from_csv(const std::string& text);
std::string samples_to_csv(const MagnitudeSamples& samples);
MagnitudeSamples samples_from_csv(const std::string& text);

json load_json_file(const std::string& path);
std::string load_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace fockpr

#endif
