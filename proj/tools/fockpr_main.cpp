// fockpr command line: batch front door over the library. One subcommand per
// workflow, deterministic JSON reports (run time lives in a separate metadata
// field), machine-readable error JSON on stderr.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fockpr/errors.hpp"
#include "fockpr/serialization.hpp"

namespace {

using fockpr::cplx;
using ordered_json = nlohmann::ordered_json;

struct Options {
    std::string lattice_path;
    std::string set_path;
    std::string samples_path;
    std::string function_path;
    std::string out_path;
    int qmax = 8;
    double tau = 0.0;
    double kappa = 0.0;
    double radius = 50.0;
    double tol = 1e-12;
    int truncation = 1000;
    double a = 1.0;
};

void emit(const ordered_json& report, const std::string& out_path, double elapsed_ms) {
    ordered_json full = report;
    full["metadata"] = ordered_json{{"elapsed_ms", elapsed_ms}};
    std::string text = full.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        fockpr::write_text_file(out_path, text);
    }
}

ordered_json ordered(const fockpr::json& j) { return ordered_json::parse(j.dump()); }

ordered_json run_check_lattice(const Options& opt) {
    auto lattice = fockpr::lattice_from_json(fockpr::load_json_file(opt.lattice_path));
    auto report = fockpr::check_lattice_conditions(lattice, opt.tau, opt.kappa);
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "check-lattice";
    out["report"] = ordered(fockpr::to_json(report));
    return out;
}

ordered_json run_density(const Options& opt) {
    auto lattice = fockpr::lattice_from_json(fockpr::load_json_file(opt.lattice_path));
    double exact = fockpr::exact_lower_density(lattice);
    double truncate_radius = opt.radius > 0 ? std::max(opt.radius, 150.0) : 300.0;
    auto points = fockpr::enumerate_points(lattice, truncate_radius);
    std::vector<double> radii{truncate_radius / 6.0, truncate_radius / 3.0, truncate_radius / 1.5};
    double estimate = fockpr::estimate_lower_density(points, radii, 0.25);
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "density";
    out["covolume"] = fockpr::covolume(lattice);
    out["exact_density"] = exact;
    out["estimated_density"] = estimate;
    out["truncation_radius"] = truncate_radius;
    out["radii"] = radii;
    out["points"] = points.size();
    return out;
}

ordered_json run_sample(const Options& opt) {
    auto p = fockpr::signal_as_fock_from_json(fockpr::load_json_file(opt.function_path));
    fockpr::StructuredSet set;
    if (!opt.set_path.empty()) {
        set = fockpr::structured_set_from_json(fockpr::load_json_file(opt.set_path));
    } else if (!opt.lattice_path.empty()) {
        auto lattice = fockpr::lattice_from_json(fockpr::load_json_file(opt.lattice_path));
        set = fockpr::canonical_progressions(lattice, opt.truncation);
    } else {
        fockpr::raise(fockpr::errc::invalid_argument, "sample: need --set or --lattice");
    }
    auto samples = fockpr::forward_sample(p, set);
    if (opt.out_path.empty())
        fockpr::raise(fockpr::errc::invalid_argument, "sample: --out <csv> is required");
    fockpr::write_text_file(opt.out_path, fockpr::samples_to_csv(samples));
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "sample";
    out["count"] = samples.size();
    out["out"] = opt.out_path;
    std::cout << out.dump(2) << "\n";
    return ordered_json(); // already reported
}

ordered_json run_reconstruct(const Options& opt) {
    auto samples = fockpr::samples_from_csv(fockpr::load_text_file(opt.samples_path));
    auto set = fockpr::structured_set_from_json(fockpr::load_json_file(opt.set_path));
    auto result = fockpr::reconstruct(samples, set, opt.qmax);
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "reconstruct";
    out["result"] = ordered(fockpr::to_json(result));
    return out;
}

ordered_json run_counterexample(const Options& opt) {
    auto pair = fockpr::counterexample_pair(opt.a);
    auto report = fockpr::verify_counterexample(pair, opt.a, opt.truncation, opt.tol);
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "counterexample";
    out["a"] = opt.a;
    out["f_plus"] = ordered(fockpr::to_json(pair.first));
    out["f_minus"] = ordered(fockpr::to_json(pair.second));
    out["online_max_gap"] = report.online_max_gap;
    out["offline_phase_gap"] = report.offline_phase_gap;
    out["modulus_agrees"] = report.modulus_agrees;
    out["not_phase_equivalent"] = report.not_phase_equivalent;
    return out;
}

ordered_json run_growth(const Options& opt) {
    auto f = fockpr::closed_form_from_json(fockpr::load_json_file(opt.function_path));
    double rho = f.natural_order();
    std::vector<double> radii;
    for (double r = opt.radius / 8.0; r < opt.radius; r *= 1.5) radii.push_back(r);
    radii.push_back(opt.radius);
    auto est = fockpr::growth_type_estimate(f, rho, radii, 720);
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "growth";
    out["order"] = est.order;
    out["type_estimate"] = est.type_estimate;
    out["tail_monotone"] = est.tail_monotone;
    ordered_json per = ordered_json::array();
    for (auto [r, v] : est.per_radius) per.push_back(ordered_json{{"r", r}, {"value", v}});
    out["per_radius"] = per;
    if (!opt.lattice_path.empty()) {
        auto lattice = fockpr::lattice_from_json(fockpr::load_json_file(opt.lattice_path));
        auto kind = rho >= 2.0 || f.tau_lower() > 0.0 ? fockpr::GrowthFunctionKind::Linear
                    : std::holds_alternative<fockpr::FockPolynomial>(f.variant())
                        ? fockpr::GrowthFunctionKind::Log1p
                        : fockpr::GrowthFunctionKind::Linear;
        auto earl = fockpr::earl_bound_check(f, lattice, kind, opt.radius);
        out["earl"] = ordered_json{
            {"H", kind == fockpr::GrowthFunctionKind::Linear ? "r" : "log1p"},
            {"kappa_lattice", earl.kappa_lattice},
            {"kappa_global", earl.kappa_global},
            {"slack", earl.slack},
            {"bound_holds", earl.bound_holds}};
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor/Bargmann magnitude sampling, lattice diagnostics and polynomial phase retrieval"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--lattice", opt.lattice_path, "lattice JSON path");
        cmd->add_option("--set", opt.set_path, "structured set JSON path");
        cmd->add_option("--samples", opt.samples_path, "magnitude samples CSV path");
        cmd->add_option("--function", opt.function_path, "signal / closed-form function JSON path");
        cmd->add_option("--out", opt.out_path, "output report path (default: stdout)");
        cmd->add_option("--qmax", opt.qmax, "maximum polynomial degree")->check(CLI::Range(0, 15));
        cmd->add_option("--tau", opt.tau, "lower order-2 growth constant")->check(CLI::NonNegativeNumber);
        cmd->add_option("--kappa", opt.kappa, "exponential type bound")->check(CLI::NonNegativeNumber);
        cmd->add_option("--radius", opt.radius, "scan radius")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", opt.tol, "tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--truncation", opt.truncation, "progression / point-count truncation")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--a", opt.a, "counterexample spacing parameter")->check(CLI::PositiveNumber);
    };
    for (const char* name : {"check-lattice", "density", "sample", "reconstruct", "counterexample", "growth"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    auto started = std::chrono::steady_clock::now();
    try {
        ordered_json report;
        if (app.got_subcommand("check-lattice")) report = run_check_lattice(opt);
        else if (app.got_subcommand("density")) report = run_density(opt);
        else if (app.got_subcommand("sample")) return (run_sample(opt), 0);
        else if (app.got_subcommand("reconstruct")) report = run_reconstruct(opt);
        else if (app.got_subcommand("counterexample")) report = run_counterexample(opt);
        else if (app.got_subcommand("growth")) report = run_growth(opt);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        emit(report, opt.out_path, ms);
        return 0;
    } catch (const fockpr::Error& e) {
        ordered_json err{{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
