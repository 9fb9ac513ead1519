// ence_main.cpp — command-line front end: load states and maps from JSON
// files, run detectors and preserver analysis, emit machine-readable reports.
//
// Exit codes: 0 = ran, verdict "detected / ncc / classified / branch found";
//             1 = ran, verdict "not detected / passes / NotEP / violated";
//             2 = input or precondition error.

#include "ence/detect.hpp"
#include "ence/matrix_io.hpp"
#include "ence/preserver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitDetected = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct RunConfig {
    std::uint64_t seed{0};
    int trials{100};
    int samples{200};
    int max_side{ence::kDefaultMaxChenDim};
    double tol_spectra{ence::tol::spectra};
    double tol_commutator{ence::tol::commutator};
    double tol_classify{ence::tol::classify};
    std::string out_path;
};

json config_json(const RunConfig& cfg) {
    return json{{"seed", cfg.seed},
                {"prng", ence::kPrngName},
                {"trials", cfg.trials},
                {"samples", cfg.samples},
                {"tolerances",
                 {{"spectra", cfg.tol_spectra},
                  {"commutator", cfg.tol_commutator},
                  {"classify", cfg.tol_classify}}}};
}

json spectrum_json(const ence::Spectrum& s) {
    json out = json::array();
    for (const auto& z : s.values) out.push_back({z.real(), z.imag()});
    return out;
}

void emit_report(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << std::endl;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::invalid_argument("cannot write report to \"" + out_path + "\"");
    }
    out << report.dump(2) << '\n';
}

ence::BipartiteDims parse_dims(const std::string& text) {
    const auto sep = text.find_first_of("xX");
    if (sep == std::string::npos) {
        throw std::invalid_argument("--dims expects the form AxB, e.g. 2x3");
    }
    try {
        const int da = std::stoi(text.substr(0, sep));
        const int db = std::stoi(text.substr(sep + 1));
        return ence::BipartiteDims{da, db};
    } catch (const std::exception&) {
        throw std::invalid_argument("--dims expects integers, got \"" + text + "\"");
    }
}

ence::BipartiteDims resolve_dims(const ence::MatrixFile& f,
                                 const std::string& dims_flag) {
    if (!dims_flag.empty()) {
        const auto dims = parse_dims(dims_flag);
        if (dims.dim() != f.dim) {
            throw std::invalid_argument("--dims product does not match the file dim");
        }
        return dims;
    }
    if (f.dims) return *f.dims;
    throw std::invalid_argument("no bipartite split: pass --dims or use a file with dims");
}

ence::MatrixFile load_density_file(const std::string& path) {
    ence::MatrixFile f = ence::load_matrix_file(path);
    if (f.kind != ence::FileKind::Density) {
        throw std::invalid_argument("state file \"" + path + "\" has kind \"" +
                                    ence::file_kind_name(f.kind) +
                                    "\", expected \"density\"");
    }
    return f;
}

ence::Superoperator load_superop(const std::string& path) {
    const ence::MatrixFile f = ence::load_matrix_file(path);
    if (f.kind != ence::FileKind::Superoperator) {
        throw std::invalid_argument("map file \"" + path + "\" has kind \"" +
                                    ence::file_kind_name(f.kind) +
                                    "\", expected \"superoperator\"");
    }
    const int d = static_cast<int>(std::lround(std::sqrt(f.dim)));
    return ence::Superoperator{d, f.data};
}

std::string side_name(ence::ReportSide s) {
    switch (s) {
        case ence::ReportSide::A: return "A";
        case ence::ReportSide::B: return "B";
        case ence::ReportSide::Both: return "Both";
    }
    return "B";
}

json commutation_json(const ence::CommutationReport& r) {
    return json{{"passes", r.passes},
                {"max_commutator_norm", r.max_commutator_norm},
                {"pairs_tested", r.pairs_tested},
                {"cons", r.cons}};
}

// ----------------------------------- detect --------------------------------

int run_detect(const std::string& state_path, const std::string& dims_flag,
               const std::string& method, ence::Side side, const RunConfig& cfg) {
    const ence::MatrixFile f = load_density_file(state_path);
    const ence::DensityMatrix rho(f.data);
    const ence::BipartiteDims dims = resolve_dims(f, dims_flag);

    json report{{"command", "detect"},
                {"method", method},
                {"state", state_path},
                {"dims", {dims.d_a, dims.d_b}},
                {"config", config_json(cfg)}};
    int exit_code = kExitNegative;

    if (method == "pt") {
        const auto r = ence::pt_detect(rho, dims, side, cfg.tol_spectra);
        report["side"] = side_name(r.side);
        report["detected"] = r.detected;
        report["deviation"] = r.deviation;
        report["spectrum_before"] = spectrum_json(r.spectrum_before);
        report["spectrum_after"] = spectrum_json(r.spectrum_after);
        exit_code = r.detected ? kExitDetected : kExitNegative;
    } else if (method == "chen") {
        const auto r = ence::chen_test(rho, dims, side, cfg.tol_commutator, cfg.max_side);
        report["classical_side"] = side == ence::Side::A ? "A" : "B";
        report["commutation"] = commutation_json(r);
        report["detected"] = !r.passes;
        exit_code = r.passes ? kExitNegative : kExitDetected;
    } else if (method == "pcc") {
        const auto ra =
            ence::chen_test(rho, dims, ence::Side::A, cfg.tol_commutator, cfg.max_side);
        const auto rb =
            ence::chen_test(rho, dims, ence::Side::B, cfg.tol_commutator, cfg.max_side);
        const bool pcc = ra.passes && rb.passes;
        report["side"] = "Both";
        report["classical_side_a"] = commutation_json(ra);
        report["classical_side_b"] = commutation_json(rb);
        report["pcc"] = pcc;
        report["detected"] = !pcc;
        exit_code = pcc ? kExitNegative : kExitDetected;
    } else {
        throw std::invalid_argument("unknown method \"" + method + "\"");
    }
    emit_report(report, cfg.out_path);
    return exit_code;
}

// ---------------------------------- classify -------------------------------

int run_classify(const std::string& map_path, const RunConfig& cfg) {
    const ence::Superoperator l = load_superop(map_path);
    const ence::EpReport ep =
        ence::check_ep_on_density(l, cfg.samples, ence::Seed{cfg.seed}, cfg.tol_spectra);
    const ence::MapForm form = ence::classify_preserver(l, cfg.tol_classify);

    json report{{"command", "classify"},
                {"map", map_path},
                {"d", l.d},
                {"config", config_json(cfg)}};
    report["ep"] = {{"unital", ep.unital},
                    {"det_trace_preserving", ep.det_trace_preserving},
                    {"ep_on_samples", ep.ep_on_samples},
                    {"worst_spectrum_deviation", ep.worst_spectrum_deviation},
                    {"samples_tested", ep.samples_tested}};
    switch (form.kind) {
        case ence::MapKind::Similarity: report["kind"] = "Similarity"; break;
        case ence::MapKind::TransposeSimilarity:
            report["kind"] = "TransposeSimilarity";
            break;
        case ence::MapKind::NotEP: report["kind"] = "NotEP"; break;
    }
    report["residual"] = form.residual;
    if (form.s) {
        ence::MatrixFile fragment;
        fragment.kind = ence::FileKind::General;
        fragment.dim = static_cast<int>(form.s->rows());
        fragment.data = *form.s;
        report["recovered_s"] = ence::matrix_file_to_json(fragment);
    }
    emit_report(report, cfg.out_path);
    return form.kind == ence::MapKind::NotEP ? kExitNegative : kExitDetected;
}

// ------------------------------- verify-theorem ----------------------------

int run_verify(const std::string& map_path, int d_a, const RunConfig& cfg) {
    const ence::Superoperator l = load_superop(map_path);
    const ence::MainTheoremReport r = ence::verify_main_theorem(
        l, d_a, cfg.trials, ence::Seed{cfg.seed}, cfg.tol_spectra);

    json report{{"command", "verify-theorem"},
                {"map", map_path},
                {"d_a", d_a},
                {"trials", r.trials},
                {"max_deviation", r.max_deviation},
                {"config", config_json(cfg)}};
    switch (r.branch) {
        case ence::TheoremBranch::IdentityBranch:
            report["branch"] = "IdentityBranch";
            break;
        case ence::TheoremBranch::TransposeBranch:
            report["branch"] = "TransposeBranch";
            break;
        case ence::TheoremBranch::Violated: report["branch"] = "Violated"; break;
    }
    emit_report(report, cfg.out_path);
    return r.branch == ence::TheoremBranch::Violated ? kExitNegative : kExitDetected;
}

// ------------------------------------ gen ----------------------------------

int run_gen(const std::string& family, const std::string& dims_flag,
            const std::vector<double>& weights, double p, int dim, int rank,
            const std::string& npt_path, const RunConfig& cfg) {
    if (cfg.out_path.empty()) {
        throw std::invalid_argument("gen requires --out");
    }
    const ence::Seed seed{cfg.seed};
    ence::MatrixFile out;
    out.kind = ence::FileKind::Density;

    if (family == "bell") {
        out.dims = ence::BipartiteDims{2, 2};
        out.data = ence::bell_state().mat;
    } else if (family == "pcc") {
        const auto dims = parse_dims(dims_flag);
        ence::PccSpec spec = ence::random_pcc_spec(dims.d_a, dims.d_b, seed);
        if (!weights.empty()) {
            if (static_cast<int>(weights.size()) != dims.dim()) {
                throw std::invalid_argument("--weights must list d_a*d_b values");
            }
            for (int i = 0; i < dims.d_a; ++i)
                for (int j = 0; j < dims.d_b; ++j)
                    spec.weights(i, j) = weights[static_cast<std::size_t>(i) * dims.d_b + j];
        }
        out.dims = dims;
        out.data = ence::pcc_state(spec).mat;
    } else if (family == "onewcc") {
        const auto dims = parse_dims(dims_flag);
        out.dims = dims;
        out.data = ence::onewcc_state(
                       ence::random_onewcc_spec(dims.d_a, dims.d_b, seed))
                       .mat;
    } else if (family == "rho_p") {
        ence::DensityMatrix npt = ence::bell_state();
        ence::BipartiteDims dims{2, 2};
        if (!npt_path.empty()) {
            const ence::MatrixFile f = ence::load_matrix_file(npt_path);
            if (f.kind != ence::FileKind::Density || !f.dims) {
                throw std::invalid_argument(
                    "--npt-state must be a density file with dims");
            }
            npt = ence::DensityMatrix(f.data);
            dims = *f.dims;
        }
        // The mixture only detects anything when the source really is NPT.
        const auto pt_eigs =
            ence::eig_herm(ence::partial_transpose(npt.mat, dims, ence::Side::B));
        if (pt_eigs.spectrum.real_parts().back() >= -ence::tol::psd) {
            throw std::invalid_argument("NPT source has no negative PT eigenvalue");
        }
        out.dims = dims;
        out.data = ence::rho_p(p, npt).mat;
    } else if (family == "random") {
        int d = dim;
        std::optional<ence::BipartiteDims> dims;
        if (!dims_flag.empty()) {
            dims = parse_dims(dims_flag);
            d = dims->dim();
        }
        if (d < 1) {
            throw std::invalid_argument("gen random needs --dim or --dims");
        }
        out.dims = dims;
        out.data = ence::random_density(d, rank > 0 ? rank : d, seed).mat;
    } else {
        throw std::invalid_argument("unknown family \"" + family + "\"");
    }

    out.dim = static_cast<int>(out.data.rows());
    ence::save_matrix_file(cfg.out_path, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect and quantify bipartite nonclassical correlation via "
                 "eigenvalue changes under partially applied linear maps"};
    app.require_subcommand(1);
    // Global options (--seed, --out, tolerances) may follow the subcommand.
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "PRNG seed")->envname("ENCE_SEED");
    app.add_option("--tol-spectra", cfg.tol_spectra, "spectrum matching tolerance")
        ->envname("ENCE_TOL_SPECTRA")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-commutator", cfg.tol_commutator,
                   "Chen commutator tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-classify", cfg.tol_classify,
                   "classification residual tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_path, "output path (reports default to stdout)");
    std::string format{"json"};
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json"}));

    // detect
    auto* detect = app.add_subcommand("detect", "run a detector on a state file");
    std::string state_path, dims_flag, method{"pt"}, side_flag{"B"};
    detect->add_option("--state", state_path, "density matrix file")->required();
    detect->add_option("--dims", dims_flag, "bipartite split AxB");
    detect->add_option("--method", method, "detector")
        ->check(CLI::IsMember({"pt", "chen", "pcc"}));
    detect->add_option("--side", side_flag,
                       "PT side / Chen classical side")
        ->check(CLI::IsMember({"A", "B"}));
    detect->add_option("--max-side", cfg.max_side,
                       "override the per-side dimension cap of the Chen test")
        ->check(CLI::PositiveNumber);

    // classify
    auto* classify = app.add_subcommand("classify", "classify a superoperator file");
    std::string map_path;
    classify->add_option("--map", map_path, "superoperator file")->required();
    classify->add_option("--samples", cfg.samples, "EP sampling count")
        ->check(CLI::PositiveNumber);

    // verify-theorem
    auto* verify =
        app.add_subcommand("verify-theorem", "two-branch partial-application check");
    int d_a = 2;
    verify->add_option("--map", map_path, "superoperator file")->required();
    verify->add_option("--da", d_a, "identity-side dimension")
        ->check(CLI::PositiveNumber);
    verify->add_option("--trials", cfg.trials, "random states per run")
        ->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "write a state file");
    std::string family;
    std::vector<double> weights;
    double p = 0.5;
    int dim = 0, rank = 0;
    gen->add_option("--family", family, "pcc|onewcc|bell|rho_p|random")->required();
    gen->add_option("--dims", dims_flag, "bipartite split AxB");
    gen->add_option("--weights", weights, "pcc eigenvalues, row-major")->delimiter(',');
    gen->add_option("--p", p, "mixing weight for rho_p");
    gen->add_option("--dim", dim, "total dimension for random");
    gen->add_option("--rank", rank, "rank for random (default: full)");
    std::string npt_path;
    gen->add_option("--npt-state", npt_path, "NPT source for rho_p (default: bell)");

    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        const ence::Side side = side_flag == "A" ? ence::Side::A : ence::Side::B;
        if (detect->parsed()) return run_detect(state_path, dims_flag, method, side, cfg);
        if (classify->parsed()) return run_classify(map_path, cfg);
        if (verify->parsed()) return run_verify(map_path, d_a, cfg);
        if (gen->parsed()) return run_gen(family, dims_flag, weights, p, dim, rank, npt_path, cfg);
    } catch (const ence::not_ep_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitError;
    }
    return kExitError;
}
