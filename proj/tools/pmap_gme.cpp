// pmap-gme: command-line front end for the projection-map GME detector.
//
// Exit codes: 0 success, 1 self-test failure, 2 usage error, 3 input
// validation error. Detection verdicts never change the exit code.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmap/detector.hpp"
#include "pmap/io.hpp"
#include "pmap/maps.hpp"
#include "pmap/pauli.hpp"
#include "pmap/selftest.hpp"
#include "pmap/states.hpp"
#include "pmap/witness.hpp"

namespace {

using nlohmann::json;
using namespace pmap;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rounded to 15 significant digits so JSON payloads are stable.
double r15(double v) { return std::strtod(io::format_number(v).c_str(), nullptr); }

json rounded(const std::vector<double>& values) {
    json arr = json::array();
    for (double v : values) arr.push_back(r15(v));
    return arr;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError("bad number '" + item + "' in " + what);
        out.push_back(v);
    }
    if (out.size() != expected) {
        throw UsageError(what + " expects " + std::to_string(expected) + " comma-separated value(s)");
    }
    return out;
}

const char* kBuiltinHelp =
    "ghz3, ghz3-minus, ghz4, w, phi-plus, maximally-mixed, gen-ghz:THETA, werner:P, noisy-ghz3:X, "
    "noisy-ghz4:X, noisy-w:X, bound:P1,P2, gabcd:A,B,C,D";

DensityState builtin_state(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const auto no_args = [&] {
        if (colon != std::string::npos) throw UsageError("builtin '" + name + "' takes no parameters");
    };
    const auto one = [&] { return parse_numbers(args, 1, name).front(); };

    if (name == "ghz3") {
        no_args();
        return ghz(3, GhzPhase::Plus);
    }
    if (name == "ghz3-minus") {
        no_args();
        return ghz(3, GhzPhase::Minus);
    }
    if (name == "ghz4") {
        no_args();
        return ghz(4, GhzPhase::Plus);
    }
    if (name == "w") {
        no_args();
        return w_state();
    }
    if (name == "phi-plus") {
        no_args();
        return werner(1.0);
    }
    if (name == "maximally-mixed") {
        no_args();
        return maximally_mixed(3);
    }
    if (name == "gen-ghz") return gen_ghz(one());
    if (name == "werner") return werner(one());
    if (name == "noisy-ghz3") return white_noise_mix(ghz(3), one());
    if (name == "noisy-ghz4") return white_noise_mix(ghz(4), one());
    if (name == "noisy-w") return white_noise_mix(w_state(), one());
    if (name == "bound") {
        const auto p = parse_numbers(args, 2, name);
        return bound_entangled(p[0], p[1]);
    }
    if (name == "gabcd") {
        const auto p = parse_numbers(args, 4, name);
        return g_abcd(p[0], p[1], p[2], p[3]);
    }
    throw UsageError("unknown state '" + spec + "' (builtins: " + kBuiltinHelp + ")");
}

bool looks_like_file(const std::string& arg) {
    return arg.find('/') != std::string::npos || arg.ends_with(".json") || std::filesystem::exists(arg);
}

DensityState load_state(const std::string& arg) {
    if (looks_like_file(arg)) return io::read_state_file(arg);
    return builtin_state(arg);
}

PhiSpec detector_for(int n_qubits, bool unitary_x) {
    const std::optional<ComplexMatrix> u = unitary_x ? std::optional(pauli::X()) : std::nullopt;
    return n_qubits == 2 ? bipartite_spec(u) : phi_spec(n_qubits, u);
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + io::format_number(values[i]);
    return out;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
    std::string state;
    bool unitary_x = false;
    bool as_json = false;
};

int cmd_detect(const DetectArgs& a) {
    const DensityState rho = load_state(a.state);
    if (rho.n_qubits() < 2) throw std::invalid_argument("detection needs at least 2 qubits");
    const PhiSpec spec = detector_for(rho.n_qubits(), a.unitary_x);
    const DetectionReport report = detect_with(spec, rho);
    if (a.as_json) {
        json doc = {{"state", a.state},
                    {"n_qubits", rho.n_qubits()},
                    {"unitary_x", a.unitary_x},
                    {"terms", spec.terms.size()},
                    {"kappa", spec.kappa},
                    {"min_eigenvalue", r15(report.min_eigenvalue)},
                    {"spectrum", rounded(report.spectrum)},
                    {"detected", report.detected},
                    {"tolerance", report.tolerance}};
        std::cout << doc.dump() << '\n';
        return kExitOk;
    }
    std::cout << "state:          " << a.state << " (" << rho.n_qubits() << " qubits)\n"
              << "detector:       " << (rho.n_qubits() == 2 ? "I (x) P" : "Phi_" + std::to_string(rho.n_qubits()))
              << (a.unitary_x ? " with sigma_x after P" : "") << ", " << spec.terms.size()
              << " term(s), kappa = " << io::format_number(spec.kappa) << '\n'
              << "min_eigenvalue: " << io::format_number(report.min_eigenvalue) << '\n'
              << "spectrum:       " << join(report.spectrum) << '\n'
              << "detected:       " << (report.detected ? "true" : "false") << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ choi

struct ChoiArgs {
    std::string map;
    bool as_json = false;
};

QubitMapSpec parse_map(const std::string& name) {
    if (name == "projection") return QubitMapSpec::projection();
    if (name == "identity") return QubitMapSpec::identity();
    if (name.starts_with("lindblad:")) {
        const auto g = parse_numbers(name.substr(9), 3, "lindblad");
        return lindblad_projection(g[0], g[1], g[2]);
    }
    throw UsageError("unknown map '" + name + "' (use projection, identity or lindblad:G1,G2,G3)");
}

int cmd_choi(const ChoiArgs& a) {
    const ComplexMatrix choi = choi_matrix(parse_map(a.map));
    const auto eig = hermitian_eigenvalues(choi);
    if (a.as_json) {
        json matrix = json::array();
        for (std::size_t i = 0; i < 4; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < 4; ++j) row.push_back({r15(choi(i, j).real()), r15(choi(i, j).imag())});
            matrix.push_back(std::move(row));
        }
        std::cout << json{{"map", a.map}, {"matrix", std::move(matrix)}, {"eigenvalues", rounded(eig)}}.dump() << '\n';
        return kExitOk;
    }
    std::cout << "Choi matrix of " << a.map << ":\n" << to_string(choi, 6) << "eigenvalues: " << join(eig) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------- threshold

struct ThresholdArgs {
    std::string state;
    bool unitary_x = false;
    double tol = 1e-6;
    bool as_json = false;
};

int cmd_threshold(const ThresholdArgs& a) {
    const DensityState pure = load_state(a.state);
    const PhiSpec spec = detector_for(pure.n_qubits(), a.unitary_x);
    const double x = noise_threshold_with(spec, pure, a.tol);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    if (a.as_json) {
        std::cout << json{{"state", a.state}, {"unitary_x", a.unitary_x}, {"threshold", r15(x)}, {"tol", a.tol}}.dump()
                  << '\n';
    } else {
        std::cout << "threshold: " << buf << '\n';
    }
    return kExitOk;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
    std::string target;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<int> steps;
    double b = 0.6;
    std::string out;
};

int cmd_sweep(const SweepArgs& a) {
    struct Defaults {
        double lo, hi;
        int steps;
    };
    Defaults d{};
    if (a.target == "gen-ghz") {
        d = {0.0, std::numbers::pi / 2.0, 158};
    } else if (a.target == "bound") {
        d = {0.0, 1.0, 20};
    } else if (a.target == "gabcd") {
        d = {-std::numbers::sqrt2, std::numbers::sqrt2, 40};
    } else {
        throw UsageError("unknown sweep target '" + a.target + "' (use gen-ghz, bound or gabcd)");
    }
    const double lo = a.lo.value_or(d.lo);
    const double hi = a.hi.value_or(d.hi);
    const int steps = a.steps.value_or(d.steps);
    if (steps < 1 || !(hi > lo)) throw UsageError("empty grid: need --steps >= 1 and --max > --min");
    const auto grid = linear_grid(lo, hi, steps);

    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw std::invalid_argument("cannot write " + a.out);
    }
    std::ostream& csv = a.out.empty() ? std::cout : file;
    // Summary goes to stderr when the CSV occupies stdout.
    std::ostream& log = a.out.empty() ? std::cerr : std::cout;

    if (a.target == "gen-ghz") {
        const auto rows = sweep_gen_ghz(grid);
        io::write_sweep_csv(csv, rows);
        int negative = 0;
        for (const auto& r : rows) negative += r.min_eigenvalue < -kDetectionTol;
        log << "rows: " << rows.size() << ", negative: " << negative << '\n';
        log << "crossings:";
        for (double t : gen_ghz_crossings(rows)) log << ' ' << io::format_number(t);
        log << '\n';
    } else if (a.target == "bound") {
        const auto rows = sweep_bound_entangled(grid, grid);
        io::write_bound_sweep_csv(csv, rows);
        int valid = 0, negative = 0;
        double worst_analytic = 0.0, worst_closed = 0.0;
        for (const auto& r : rows) {
            if (!r.valid) continue;
            ++valid;
            negative += r.numeric_min < -kDetectionTol;
            worst_analytic = std::max(worst_analytic, r.analytic_mismatch);
            worst_closed = std::max(worst_closed, r.closed_form_mismatch);
        }
        log << "rows: " << valid << " valid of " << rows.size() << ", negative (numeric): " << negative << '\n'
            << "max |reference closed form - numeric|: " << io::format_number(worst_analytic) << '\n'
            << "max |derived closed form - numeric|:   " << io::format_number(worst_closed) << '\n';
    } else {
        const auto rows = sweep_g_abcd(grid, grid, a.b);
        io::write_sweep_csv(csv, rows);
        int negative = 0;
        for (const auto& r : rows) negative += r.min_eigenvalue < -kDetectionTol;
        log << "rows: " << rows.size() << ", negative: " << negative << " (b = " << io::format_number(a.b) << ")\n";
    }
    if (file.is_open()) {
        file.close();
        if (!file) throw std::invalid_argument("failed writing " + a.out);
    }
    return kExitOk;
}

// --------------------------------------------------------------- witness

struct WitnessArgs {
    bool as_json = false;
    std::string expect;
    std::string out;
};

int cmd_witness(const WitnessArgs& a) {
    const WitnessOperator w = build_witness(3);
    std::optional<double> value;
    if (!a.expect.empty()) value = expectation(w, load_state(a.expect));

    json terms = json::object();
    for (const auto& [label, c] : w.pauli_terms) terms[label.str()] = r15(c);
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) throw std::invalid_argument("cannot write " + a.out);
        f << json{{"pauli_terms", terms}}.dump(2) << '\n';
    }

    const auto settings = measurement_settings(w);
    if (a.as_json) {
        json doc = {{"pauli_terms", terms}};
        if (value) doc["expectation"] = r15(*value);
        std::cout << doc.dump() << '\n';
        return kExitOk;
    }
    std::cout << "W = Phi_3(|GHZ><GHZ|), Pauli decomposition:\n";
    for (const auto& [label, c] : w.pauli_terms) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %s  %+.15g\n", label.str().c_str(), c);
        std::cout << buf;
    }
    std::cout << "correlations: " << settings.correlations.size() << " (" << settings.xy_type.size()
              << " X/Y-type, " << settings.z_type.size() << " Z-type)\n"
              << "measurement settings: " << settings.settings.size() << " (";
    for (std::size_t i = 0; i < settings.settings.size(); ++i) std::cout << (i ? " " : "") << settings.settings[i].str();
    std::cout << ") vs " << settings.tomography_settings << " for tomography\n";
    if (value) std::cout << "expectation on " << a.expect << ": " << io::format_number(*value) << '\n';
    return kExitOk;
}

// -------------------------------------------------------------- selftest

struct SelftestArgs {
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> kappa3;
};

int cmd_selftest(const SelftestArgs& a) {
    SelftestOptions options;
    if (const char* env = std::getenv("PMAP_GME_SEED"); env && *env) {
        try {
            options.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("PMAP_GME_SEED is not an unsigned integer: ") + env);
        }
    }
    if (a.seed) options.seed = *a.seed;
    options.samples = a.samples;
    options.kappa3_override = a.kappa3;
    if (a.samples && *a.samples < 1) throw UsageError("--samples must be positive");

    std::cout << "seed: " << options.seed << '\n';
    bool all_ok = true;
    for (const auto& suite : run_selftest(options)) {
        all_ok = all_ok && suite.ok();
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %-26s %5d/%-5d worst %.6g\n", suite.ok() ? "PASS" : "FAIL",
                      suite.name.c_str(), suite.passed, suite.checked, suite.worst);
        std::cout << buf;
        if (!suite.ok()) std::cout << "  counterexample: " << suite.failure << '\n';
    }
    return all_ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- export

int cmd_export(const std::string& state, const std::string& out) {
    const DensityState rho = load_state(state);
    if (out.empty()) {
        std::cout << io::state_to_json(rho);
    } else {
        try {
            io::write_state_file(out, rho);
        } catch (const std::runtime_error& e) {
            throw std::invalid_argument(e.what());
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genuine multipartite entanglement detection with the projection map"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    auto* detect = app.add_subcommand("detect", "Apply the detector to a state and report its spectrum");
    detect->add_option("state", detect_args.state, std::string("Builtin (") + kBuiltinHelp + ") or state JSON file")
        ->required();
    detect->add_flag("--unitary-x", detect_args.unitary_x, "Follow each projection with sigma_x");
    detect->add_flag("--json", detect_args.as_json, "Emit JSON");

    ChoiArgs choi_args;
    auto* choi = app.add_subcommand("choi", "Choi matrix of a single-qubit map and its eigenvalues");
    choi->add_option("map", choi_args.map, "projection | identity | lindblad:G1,G2,G3")->required();
    choi->add_flag("--json", choi_args.as_json, "Emit JSON");

    ThresholdArgs threshold_args;
    auto* threshold = app.add_subcommand("threshold", "White-noise threshold for detecting a pure state");
    threshold->add_option("state", threshold_args.state, "Builtin pure state")->required();
    threshold->add_flag("--unitary-x", threshold_args.unitary_x, "Follow each projection with sigma_x");
    threshold->add_option("--tol", threshold_args.tol, "Bisection bracket width")->check(CLI::PositiveNumber);
    threshold->add_flag("--json", threshold_args.as_json, "Emit JSON");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps (CSV)");
    sweep->add_option("target", sweep_args.target, "gen-ghz | bound | gabcd")->required();
    sweep->add_option("--min", sweep_args.lo, "Lower end of every grid axis");
    sweep->add_option("--max", sweep_args.hi, "Upper end of every grid axis");
    sweep->add_option("--steps", sweep_args.steps, "Intervals per axis");
    sweep->add_option("--b", sweep_args.b, "Fixed b for the gabcd sweep")->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "CSV output path (default: stdout)");

    WitnessArgs witness_args;
    auto* witness = app.add_subcommand("witness", "Three-qubit witness and its Pauli decomposition");
    witness->add_flag("--json", witness_args.as_json, "Emit JSON");
    witness->add_option("--expect", witness_args.expect, "Also evaluate Tr(W rho) on this state");
    witness->add_option("--out", witness_args.out, "Write the witness export JSON here");

    SelftestArgs selftest_args;
    auto* selftest = app.add_subcommand("selftest", "Randomized invariant suites");
    selftest->add_option("--seed", selftest_args.seed, "Seed (default: $PMAP_GME_SEED or built-in)");
    selftest->add_option("--samples", selftest_args.samples, "Samples per randomized suite");
    selftest->add_option("--debug-kappa3", selftest_args.kappa3, "Replace kappa_3 (debugging the biseparable suite)");

    std::string export_state, export_out;
    auto* exporter = app.add_subcommand("export", "Write a builtin state as state JSON");
    exporter->add_option("state", export_state, "Builtin state")->required();
    exporter->add_option("--out", export_out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*detect) return cmd_detect(detect_args);
        if (*choi) return cmd_choi(choi_args);
        if (*threshold) return cmd_threshold(threshold_args);
        if (*sweep) return cmd_sweep(sweep_args);
        if (*witness) return cmd_witness(witness_args);
        if (*selftest) return cmd_selftest(selftest_args);
        if (*exporter) return cmd_export(export_state, export_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}
