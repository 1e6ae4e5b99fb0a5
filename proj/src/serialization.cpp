#include "fockpr/serialization.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fockpr/errors.hpp"

namespace fockpr {

namespace {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        raise(errc::parse_error, "expected [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

json coeffs_to_json(const std::vector<cplx>& coeffs) {
    json arr = json::array();
    for (cplx c : coeffs) arr.push_back(complex_to_json(c));
    return arr;
}

std::vector<cplx> coeffs_from_json(const json& j) {
    if (!j.is_array()) raise(errc::parse_error, "expected coefficient array");
    std::vector<cplx> out;
    for (const json& e : j) out.push_back(complex_from_json(e));
    return out;
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) raise(errc::parse_error, std::string("missing field: ") + name);
    return *it;
}

} // namespace

json to_json(const HermiteExpansion& h) {
    return json{{"basis", "hermite"}, {"coeffs", coeffs_to_json(h.coeffs())}};
}

json to_json(const FockPolynomial& p) {
    return json{{"basis", "monomial"}, {"coeffs", coeffs_to_json(p.coeffs())}};
}

json to_json(const ShiftedLattice& lattice) {
    return json{{"z0", complex_to_json(lattice.z0)},
                {"omega1", complex_to_json(lattice.omega1)},
                {"omega2", complex_to_json(lattice.omega2)}};
}

json to_json(const StructuredSet& s) {
    json extra = json::array();
    for (cplx z : s.extra) extra.push_back(complex_to_json(z));
    return json{{"z1", complex_to_json(s.z1)}, {"z2", complex_to_json(s.z2)},
                {"theta", s.theta},            {"rho1", s.rho1},
                {"rho2", s.rho2},              {"extra", extra},
                {"truncation", s.truncation}};
}

json to_json(const ZeroMultiset& zeros) {
    json arr = json::array();
    for (const ZeroEntry& e : zeros.entries())
        arr.push_back(json{{"z", complex_to_json(e.z)}, {"m", e.multiplicity}});
    return json{{"zeros", arr}};
}

json to_json(const ConditionReport& report) {
    return json{{"covolume", report.covolume},
                {"exact_density", report.exact_density},
                {"density_ok", report.density_ok},
                {"spacing_ok", report.spacing_ok},
                {"distance_ok", report.distance_ok},
                {"verdict", report.verdict},
                {"tau_lower", report.tau_lower},
                {"kappa", report.kappa}};
}

json to_json(const ClosedFormFunction& f) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FockPolynomial>) {
                return json{{"kind", "polynomial"}, {"coeffs", coeffs_to_json(v.coeffs())}};
            } else if constexpr (std::is_same_v<T, ShiftedSine>) {
                return json{{"kind", "shifted-sine"}, {"scale", v.scale}, {"offset", v.offset}};
            } else if constexpr (std::is_same_v<T, ScaledSine>) {
                return json{{"kind", "scaled-sine"}, {"scale", v.scale}};
            } else {
                return json{{"kind", "exp-quadratic"},
                            {"a2", complex_to_json(v.a2)},
                            {"a1", complex_to_json(v.a1)},
                            {"a0", complex_to_json(v.a0)}};
            }
        },
        f.variant());
}

json to_json(const Frame& frame) {
    return json{{"theta", frame.theta}, {"translation", complex_to_json(frame.translation)}};
}

json to_json(const RetrievalResult& result) {
    return json{{"coeffs", coeffs_to_json(result.recovered.coeffs())},
                {"residual", result.residual},
                {"detected_degree", result.detected_degree},
                {"ambiguity_flag", result.ambiguity_flag},
                {"frame", to_json(result.frame)}};
}

HermiteExpansion hermite_from_json(const json& j) {
    if (field(j, "basis").get<std::string>() != "hermite")
        raise(errc::parse_error, "expected hermite basis");
    return HermiteExpansion(coeffs_from_json(field(j, "coeffs")));
}

FockPolynomial fock_from_json(const json& j) {
    if (field(j, "basis").get<std::string>() != "monomial")
        raise(errc::parse_error, "expected monomial basis");
    return FockPolynomial(coeffs_from_json(field(j, "coeffs")));
}

FockPolynomial signal_as_fock_from_json(const json& j) {
    std::string basis = field(j, "basis").get<std::string>();
    if (basis == "monomial") return fock_from_json(j);
    if (basis == "hermite") return hermite_to_fock(hermite_from_json(j));
    raise(errc::parse_error, "basis must be 'hermite' or 'monomial'");
}

ShiftedLattice lattice_from_json(const json& j) {
    return ShiftedLattice{complex_from_json(field(j, "z0")), complex_from_json(field(j, "omega1")),
                          complex_from_json(field(j, "omega2"))};
}

StructuredSet structured_set_from_json(const json& j) {
    StructuredSet s;
    s.z1 = complex_from_json(field(j, "z1"));
    s.z2 = complex_from_json(field(j, "z2"));
    s.theta = field(j, "theta").get<double>();
    s.rho1 = field(j, "rho1").get<double>();
    s.rho2 = field(j, "rho2").get<double>();
    if (j.contains("extra"))
        for (const json& e : j["extra"]) s.extra.push_back(complex_from_json(e));
    if (j.contains("truncation")) s.truncation = j["truncation"].get<int>();
    s.validate();
    return s;
}

ZeroMultiset zero_multiset_from_json(const json& j) {
    std::vector<ZeroEntry> entries;
    for (const json& e : field(j, "zeros"))
        entries.push_back({complex_from_json(field(e, "z")), field(e, "m").get<int>()});
    return ZeroMultiset(std::move(entries));
}

ClosedFormFunction closed_form_from_json(const json& j) {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "polynomial")
        return ClosedFormFunction::polynomial(FockPolynomial(coeffs_from_json(field(j, "coeffs"))));
    if (kind == "shifted-sine")
        return ClosedFormFunction::shifted_sine(field(j, "scale").get<double>(),
                                                field(j, "offset").get<double>());
    if (kind == "scaled-sine")
        return ClosedFormFunction::scaled_sine(field(j, "scale").get<double>());
    if (kind == "exp-quadratic")
        return ClosedFormFunction::exp_quadratic(complex_from_json(field(j, "a2")),
                                                 complex_from_json(field(j, "a1")),
                                                 complex_from_json(field(j, "a0")));
    raise(errc::parse_error, "unknown closed-form kind: " + kind);
}

std::string point_set_to_csv(const PointSet& points) {
    std::ostringstream out;
    out.precision(17);
    for (cplx z : points.points()) out << z.real() << "," << z.imag() << "\n";
    return out.str();
}

PointSet point_set_from_csv(const std::string& text) {
    std::vector<cplx> pts;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double re, im;
        char comma;
        if (!(row >> re >> comma >> im) || comma != ',')
            raise(errc::parse_error, "point CSV row must be 're,im'");
        pts.push_back(cplx(re, im));
    }
    return PointSet(std::move(pts));
}

std::string samples_to_csv(const MagnitudeSamples& samples) {
    std::ostringstream out;
    out.precision(17);
    for (const MagnitudeRecord& r : samples.records())
        out << r.point.real() << "," << r.point.imag() << "," << r.magnitude << "\n";
    return out.str();
}

MagnitudeSamples samples_from_csv(const std::string& text) {
    std::vector<MagnitudeRecord> records;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double re, im, mag;
        char c1, c2;
        if (!(row >> re >> c1 >> im >> c2 >> mag) || c1 != ',' || c2 != ',')
            raise(errc::parse_error, "sample CSV row must be 're,im,magnitude'");
        records.push_back({cplx(re, im), mag});
    }
    return MagnitudeSamples(std::move(records));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

std::string load_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) raise(errc::io_error, "cannot open " + path + " for writing");
    out << text;
    if (!out) raise(errc::io_error, "failed writing " + path);
}

} // namespace fockpr
