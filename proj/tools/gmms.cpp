// gmms: build GMMS candidates, purify them, and emit Husimi grids and metric
// scans as CSV/JSON. Exit codes: 0 ok, 2 bad input, 3 numerical integrity.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "gmms/acceptance.hpp"
#include "gmms/errors.hpp"
#include "gmms/io.hpp"
#include "gmms/kernels.hpp"
#include "gmms/metrics.hpp"
#include "gmms/phasespace.hpp"
#include "gmms/purify.hpp"
#include "gmms/special.hpp"
#include "gmms/states.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace gmms;

struct RunConfig {
    std::string spec_text;
    std::string cutoff = "auto";
    std::string format = "csv";
    std::string out_path;
    double trace_tail = 1e-10;
    bool weights = false;
};

ToleranceProfile tolerances(const RunConfig& cfg) {
    if (!(cfg.trace_tail > 0.0) || cfg.trace_tail >= 1.0)
        throw SpecError("--tol must be in (0, 1)");
    ToleranceProfile tol;
    tol.trace_tail = cfg.trace_tail;
    return tol;
}

int resolve_cutoff(const RunConfig& cfg, const GmmsSpec& spec, const ToleranceProfile& tol,
                   int extra_requirement = 0) {
    int n_max;
    if (cfg.cutoff == "auto") {
        n_max = std::max(auto_cutoff(spec, tol), extra_requirement);
        std::cerr << "auto cutoff: n_max = " << n_max << "\n";
    } else {
        try {
            std::size_t pos = 0;
            n_max = std::stoi(cfg.cutoff, &pos);
            if (pos != cfg.cutoff.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw SpecError("--cutoff expects 'auto' or a non-negative integer, got '" + cfg.cutoff + "'");
        }
        if (n_max < 0) throw SpecError("--cutoff must be non-negative");
    }
    return n_max;
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw SpecError("cannot open output file '" + cfg.out_path + "'");
    f << payload;
}

std::vector<double> parse_value_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw SpecError(std::string(what) + ": bad value '" + item + "'");
        }
    }
    if (out.empty()) throw SpecError(std::string(what) + ": empty list");
    return out;
}

// Family template for scans: the swept parameter may be omitted, e.g.
// "thermal", "cvmms", "squeezed:s=0.2,phi=0".
GmmsSpec parse_family(const std::string& text) {
    const std::string placeholder = "1";
    std::string full = text;
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string fields = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto has_field = [&](const char* name) {
        return fields.find(std::string(name) + "=") != std::string::npos;
    };
    std::string patched = fields;
    auto add_field = [&](const std::string& kv) {
        if (!patched.empty()) patched += ",";
        patched += kv;
    };
    if (kind == "thermal" && !has_field("nbar")) add_field("nbar=" + placeholder);
    if (kind != "thermal" && !has_field("b")) add_field("b=" + placeholder);
    if (kind == "squeezed" && !has_field("s")) add_field("s=0");
    if (kind == "squeezed" && !has_field("phi")) add_field("phi=0");
    if (kind == "riemann" && !has_field("delta")) add_field("delta=0.1");
    return GmmsSpec::parse(kind + ":" + patched);
}

// Replace field values equal to `name` in a spec string, e.g. b=B with B=2.
std::string substitute_spec(const std::string& text, const std::string& name, double value) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) return text;
    std::string out = text.substr(0, colon + 1);
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    bool first = true;
    while (std::getline(ss, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq != std::string::npos && item.substr(eq + 1) == name)
            item = item.substr(0, eq + 1) + format_double(value);
        out += (first ? "" : ",") + item;
        first = false;
    }
    return out;
}

struct BuiltState {
    GmmsSpec spec;
    int n_max;
    FockDensityOperator rho;
};

BuiltState build_state(const RunConfig& cfg, const ToleranceProfile& tol, int extra_requirement = 0) {
    const GmmsSpec spec = GmmsSpec::parse(cfg.spec_text);
    const int n_max = resolve_cutoff(cfg, spec, tol, extra_requirement);
    return {spec, n_max, make_state(spec, FockCutoff{n_max}, tol)};
}

int cmd_state(const RunConfig& cfg) {
    const ToleranceProfile tol = tolerances(cfg);
    const BuiltState built = build_state(cfg, tol);
    const StateReport report = make_report(built.rho, tol);
    const bool squeezed = built.spec.kind == GmmsSpec::Kind::squeezed;

    if (cfg.format == "json") {
        json j;
        j["spec"] = built.spec.to_string();
        j["n_max"] = built.n_max;
        j["trace"] = report.trace;
        j["entropy_nats"] = report.entropy_nats;
        j["purity"] = report.purity;
        j["mean_photon"] = report.mean_photon;
        j["offdiag_hs_mass"] = report.offdiag_hs_mass;
        if (squeezed) {
            j["K"] = squeezed_k_constant(built.spec.s, built.spec.phi);
            if (cfg.weights)
                j["kappa"] = squeezed_kappa(built.rho, built.spec.b, built.spec.s, built.spec.phi);
        }
        if (cfg.weights) j["weights"] = built.rho.diagonal();
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }

    std::ostringstream out;
    if (cfg.weights) {
        Table t;
        const std::vector<double> w = built.rho.diagonal();
        if (squeezed) {
            const std::vector<double> kappa =
                squeezed_kappa(built.rho, built.spec.b, built.spec.s, built.spec.phi);
            t.columns = {"n", "weight", "kappa"};
            for (std::size_t n = 0; n < w.size(); ++n)
                t.rows.push_back({static_cast<double>(n), w[n], kappa[n]});
        } else {
            t.columns = {"n", "weight"};
            for (std::size_t n = 0; n < w.size(); ++n)
                t.rows.push_back({static_cast<double>(n), w[n]});
        }
        write_table_csv(out, t);
    } else {
        Table t;
        t.columns = {"trace", "entropy_nats", "purity", "mean_photon", "offdiag_hs_mass", "n_max"};
        t.rows.push_back({report.trace, report.entropy_nats, report.purity, report.mean_photon,
                          report.offdiag_hs_mass, static_cast<double>(built.n_max)});
        write_table_csv(out, t);
    }
    emit(cfg, out.str());
    return 0;
}

int cmd_purify(const RunConfig& cfg) {
    const ToleranceProfile tol = tolerances(cfg);
    const BuiltState built = build_state(cfg, tol);

    FockDensityOperator rho = built.rho;
    double truncated_mass = 0.0;
    if (!rho.is_diagonal()) {
        auto [diag, cost] = truncate_offdiagonal(rho, tol);
        rho = std::move(diag);
        truncated_mass = cost;
        std::cerr << "off-diagonal HS mass " << format_double(cost) << " truncated before purification\n";
    }
    const SchmidtPureState pure = g_purify(rho, tol);
    const PurificationReport report = verify_purification(pure, rho, 1e-12);

    if (cfg.format == "json") {
        json j;
        j["spec"] = built.spec.to_string();
        j["n_max"] = built.n_max;
        j["offdiag_truncated_hs"] = truncated_mass;
        j["verification"] = {{"max_abs_deviation", report.max_abs_deviation},
                             {"hs_deviation", report.hs_deviation},
                             {"tolerance", report.tolerance},
                             {"pass", report.pass}};
        std::vector<double> coeff(pure.coefficients.size());
        for (std::size_t n = 0; n < coeff.size(); ++n) coeff[n] = pure.coefficients[n].real();
        j["coefficients"] = coeff;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::cerr << "verification: max dev " << format_double(report.max_abs_deviation) << ", HS dev "
                  << format_double(report.hs_deviation) << ", "
                  << (report.pass ? "pass" : "FAIL") << " at " << format_double(report.tolerance)
                  << "\n";
        Table t;
        t.columns = {"n", "coefficient"};
        for (std::size_t n = 0; n < pure.coefficients.size(); ++n)
            t.rows.push_back({static_cast<double>(n), pure.coefficients[n].real()});
        std::ostringstream out;
        write_table_csv(out, t);
        emit(cfg, out.str());
    }
    return report.pass ? 0 : 3;
}

int cmd_husimi(const RunConfig& cfg, double extent, int res) {
    const ToleranceProfile tol = tolerances(cfg);
    if (!(extent > 0.0)) throw SpecError("--extent must be positive");
    if (res < 1) throw SpecError("--res must be >= 1");
    // Corner probes need their own headroom beyond the state's support.
    const double corner = 2.0 * extent * extent;
    const BuiltState built = build_state(cfg, tol, poisson_tail_cutoff(corner, tol.trace_tail));
    const PhaseSpaceGrid grid = husimi_grid(built.rho, extent, res, tol);
    std::ostringstream out;
    write_grid_csv(out, grid);
    emit(cfg, out.str());
    return 0;
}

int emit_table(const RunConfig& cfg, const Table& table) {
    if (cfg.format == "json") {
        json j;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        write_table_csv(out, table);
        emit(cfg, out.str());
    }
    return 0;
}

int cmd_scan_entropy(const RunConfig& cfg, const std::string& grid_text) {
    const ToleranceProfile tol = tolerances(cfg);
    const GmmsSpec family = parse_family(cfg.spec_text);
    const std::vector<double> grid = parse_value_list(grid_text, "--grid");
    const std::vector<ScanRow> rows = entropy_scan(family, grid, tol);
    return emit_table(cfg, scan_table(rows));
}

int cmd_scan_distance(const RunConfig& cfg, const std::string& spec_a, const std::string& spec_b,
                      const std::string& grid_text) {
    const ToleranceProfile tol = tolerances(cfg);
    const std::size_t eq = grid_text.find('=');
    if (eq == std::string::npos)
        throw SpecError("scan distance expects --grid NAME=v1,v2,... (placeholder substitution)");
    const std::string name = grid_text.substr(0, eq);
    const std::vector<double> values = parse_value_list(grid_text.substr(eq + 1), "--grid");

    Table table;
    table.columns = {"param", "hs_distance"};
    for (double v : values) {
        const GmmsSpec a = GmmsSpec::parse(substitute_spec(spec_a, name, v));
        const GmmsSpec b = GmmsSpec::parse(substitute_spec(spec_b, name, v));
        const int n_max = std::max(auto_cutoff(a, tol), auto_cutoff(b, tol));
        const FockCutoff cutoff{n_max};
        table.rows.push_back({v, hs_distance(make_state(a, cutoff, tol), make_state(b, cutoff, tol))});
    }
    return emit_table(cfg, table);
}

int cmd_scan_riemann(const RunConfig& cfg, double b, const std::string& deltas_text) {
    const ToleranceProfile tol = tolerances(cfg);
    if (!(b > 0.0)) throw SpecError("--b must be positive");
    const std::vector<double> deltas = parse_value_list(deltas_text, "--deltas");
    const GmmsSpec target_spec = GmmsSpec::cvmms(b);
    const FockCutoff cutoff{resolve_cutoff(cfg, target_spec, tol)};
    const FockDensityOperator target = cvmms_state(b, cutoff, tol);
    Table table;
    table.columns = {"delta", "hs_distance"};
    for (double d : deltas)
        table.rows.push_back({d, hs_distance(riemann_gmms(b, d, cutoff, tol), target)});
    return emit_table(cfg, table);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated-Fock-space GMMS toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    double extent = 4.0;
    int res = 81;
    std::string grid_text, spec_a, spec_b, deltas_text;
    double riemann_b = 1.0;

    const auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--cutoff", cfg.cutoff, "auto or fixed n_max");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--tol", cfg.trace_tail, "truncation tail budget");
        if (with_format)
            sub->add_option("--format", cfg.format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* state = app.add_subcommand("state", "build a state and report its metrics");
    state->add_option("--spec", cfg.spec_text, "state spec, e.g. thermal:nbar=1")->required();
    state->add_flag("--weights", cfg.weights, "dump diagonal weights instead of the report (csv)");
    add_common(state);

    CLI::App* purify = app.add_subcommand("purify", "g-purify a state and verify the round trip");
    purify->add_option("--spec", cfg.spec_text, "state spec")->required();
    add_common(purify);

    CLI::App* husimi = app.add_subcommand("husimi", "evaluate the Husimi Q function on a grid");
    husimi->add_option("--spec", cfg.spec_text, "state spec")->required();
    husimi->add_option("--extent", extent, "square extent [-e, e]^2");
    husimi->add_option("--res", res, "points per axis");
    add_common(husimi, false);

    CLI::App* scan = app.add_subcommand("scan", "parameter scans");
    scan->require_subcommand(1);
    CLI::App* scan_entropy = scan->add_subcommand("entropy", "entropy across a parameter grid");
    scan_entropy->add_option("--spec", cfg.spec_text, "family, e.g. thermal or squeezed:s=0.2,phi=0")
        ->required();
    scan_entropy->add_option("--grid", grid_text, "comma-separated parameter values")->required();
    add_common(scan_entropy);
    CLI::App* scan_distance = scan->add_subcommand("distance", "HS distance between two spec families");
    scan_distance->add_option("--a", spec_a, "first spec with placeholder, e.g. squeezed:b=B,s=0.2,phi=0")
        ->required();
    scan_distance->add_option("--b", spec_b, "second spec with placeholder, e.g. cvmms:b=B")->required();
    scan_distance->add_option("--grid", grid_text, "NAME=v1,v2,...")->required();
    add_common(scan_distance);
    CLI::App* scan_riemann = scan->add_subcommand("riemann", "Riemann-sum convergence toward cvmms");
    scan_riemann->add_option("--b", riemann_b, "disk radius")->required();
    scan_riemann->add_option("--deltas", deltas_text, "comma-separated grid spacings")->required();
    add_common(scan_riemann);

    CLI::App* acceptance = app.add_subcommand("acceptance", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (state->parsed()) return cmd_state(cfg);
        if (purify->parsed()) return cmd_purify(cfg);
        if (husimi->parsed()) return cmd_husimi(cfg, extent, res);
        if (scan->parsed()) {
            if (scan_entropy->parsed()) return cmd_scan_entropy(cfg, grid_text);
            if (scan_distance->parsed()) return cmd_scan_distance(cfg, spec_a, spec_b, grid_text);
            if (scan_riemann->parsed()) return cmd_scan_riemann(cfg, riemann_b, deltas_text);
        }
        if (acceptance->parsed()) return gmms::run_acceptance(std::cout) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gmms::cli_exit_code(e);
    }
    return 2;
}
