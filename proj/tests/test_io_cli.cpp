#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "gmms/errors.hpp"
#include "gmms/io.hpp"
#include "gmms/phasespace.hpp"
#include "gmms/states.hpp"

using namespace gmms;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(GMMS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

} // namespace

TEST_CASE("format_double: 17 significant digits round-trip exactly") {
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        const double v = std::ldexp(mant(rng), expo(rng));
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(std::stod(format_double(0.1)) == 0.1);
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("table CSV round trips") {
    Table t;
    t.columns = {"a", "b", "c"};
    t.rows = {{1.0, 0.1, -3e-7}, {2.0, 0.25, 17.0}};
    std::ostringstream out;
    write_table_csv(out, t);
    std::istringstream in(out.str());
    const Table back = read_table_csv(in);
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);

    std::ostringstream again;
    write_table_csv(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("grid CSV round trips byte-identically") {
    const FockDensityOperator vac = thermal_state(0.0, FockCutoff{60});
    const PhaseSpaceGrid grid = husimi_grid(vac, 2.0, 5);
    std::ostringstream out;
    write_grid_csv(out, grid);
    std::istringstream in(out.str());
    const PhaseSpaceGrid back = read_grid_csv(in);
    CHECK(back.resolution == grid.resolution);
    CHECK(back.values == grid.values);
    std::ostringstream again;
    write_grid_csv(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("scan CSV uses the documented header and round trips") {
    std::vector<ScanRow> rows{{0.0, 0.0, 1.0, 0.0}, {1.0, 1.5, 0.999, 2.0}};
    const Table t = scan_table(rows);
    CHECK(t.columns == std::vector<std::string>{"param", "entropy_nats", "trace", "mean_photon"});
    std::ostringstream out;
    write_table_csv(out, t);
    std::istringstream in(out.str());
    const auto back = scan_rows_from_table(read_table_csv(in));
    REQUIRE(back.size() == 2);
    CHECK(back[1].entropy_nats == 1.5);
}

TEST_CASE("exit-code contract distinguishes input from integrity failures") {
    CHECK(cli_exit_code(SpecError("x")) == 2);
    CHECK(cli_exit_code(DomainError("x")) == 2);
    CHECK(cli_exit_code(TruncationError("x", 5)) == 2);
    CHECK(cli_exit_code(IntegrityError("x")) == 3);
}

TEST_CASE("cli: state report in json carries the thermal entropy") {
    const CliResult r = run_cli("state --spec thermal:nbar=1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["entropy_nats"].get<double>() - 1.3862943611198906) < 1e-6);
    CHECK(j["offdiag_hs_mass"].get<double>() == 0.0);
}

TEST_CASE("cli: cvmms trace lands in the truncation window") {
    const CliResult r = run_cli("state --spec cvmms:b=1");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    const Table t = read_table_csv(in);
    const double trace = t.rows.at(0).at(0);
    CHECK(trace >= 1.0 - 1e-10);
    CHECK(trace <= 1.0);
}

TEST_CASE("cli: invalid field values exit 2 and name the field") {
    CHECK(run_cli("state --spec cvmms:b=-1").exit_code == 2);
    CHECK(run_cli("state --spec nonsense:x=1").exit_code == 2);
    CHECK(run_cli("state --spec cvmms:b=1 --cutoff wat").exit_code == 2);
}

TEST_CASE("cli: husimi grid of the vacuum matches the closed form per point") {
    const CliResult r = run_cli("husimi --spec thermal:nbar=0 --extent 3 --res 41");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    const PhaseSpaceGrid grid = read_grid_csv(in);
    REQUIRE(grid.resolution == 41);
    for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 41; ++j) {
            const double b2 = grid.re_at(i) * grid.re_at(i) + grid.im_at(j) * grid.im_at(j);
            CHECK(grid.at(i, j) == doctest::Approx(std::exp(-b2) / M_PI).epsilon(1e-12));
        }
}

TEST_CASE("cli: husimi resolution 1 emits a single valid row") {
    const CliResult r = run_cli("husimi --spec thermal:nbar=0 --extent 3 --res 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "re,im,value\n0,0,0.31830988618379069\n");
}

TEST_CASE("cli: purify of thermal(sinh^2 1) reproduces tmsv magnitudes") {
    const CliResult r = run_cli("purify --spec thermal:nbar=1.3811 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verification"]["pass"].get<bool>());
    const auto coeff = j["coefficients"].get<std::vector<double>>();
    const double lambda = std::tanh(1.0);
    const double head = std::sqrt(1.0 - lambda * lambda);
    for (int n = 0; n < 6; ++n)
        CHECK(coeff.at(n) == doctest::Approx(head * std::pow(lambda, n)).epsilon(1e-4));
}

TEST_CASE("cli: scans have the promised shapes") {
    const CliResult entropy_scan = run_cli("scan entropy --spec thermal --grid 0,1,2,4,8");
    REQUIRE(entropy_scan.exit_code == 0);
    std::istringstream in(entropy_scan.out);
    const auto rows = scan_rows_from_table(read_table_csv(in));
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].entropy_nats > rows[i - 1].entropy_nats);

    const CliResult ri = run_cli("scan riemann --b 1 --deltas 0.2,0.1,0.05");
    REQUIRE(ri.exit_code == 0);
    std::istringstream rin(ri.out);
    const Table rt = read_table_csv(rin);
    REQUIRE(rt.rows.size() == 3);
    CHECK(rt.rows[0][1] > rt.rows[1][1]);
    CHECK(rt.rows[1][1] > rt.rows[2][1]);

    // non-increasing distance trend in b at fixed squeezing
    const CliResult dist =
        run_cli("scan distance --a squeezed:b=B,s=0.2,phi=0 --b cvmms:b=B --grid B=1,2,3");
    REQUIRE(dist.exit_code == 0);
    std::istringstream din(dist.out);
    const Table dt = read_table_csv(din);
    REQUIRE(dt.rows.size() == 3);
    CHECK(dt.rows[0][1] > 0.0);
    CHECK(dt.rows[1][1] <= dt.rows[0][1]);
    CHECK(dt.rows[2][1] <= dt.rows[1][1]);

    CHECK(run_cli("scan distance --a cvmms:b=B --b cvmms:b=B --grid 1,2").exit_code == 2);
}

TEST_CASE("cli: identical configuration gives byte-identical output") {
    const std::string cmd = "state --spec squeezed:b=1,s=0.2,phi=0.7854 --format json --cutoff 40";
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const CliResult g1 = run_cli("husimi --spec cvmms:b=1 --extent 4 --res 17");
    const CliResult g2 = run_cli("husimi --spec cvmms:b=1 --extent 4 --res 17");
    CHECK(g1.out == g2.out);
}

TEST_CASE("cli: json key order is stable and insertion-ordered") {
    const CliResult r = run_cli("state --spec thermal:nbar=0.5 --format json");
    REQUIRE(r.exit_code == 0);
    const std::size_t spec_at = r.out.find("\"spec\"");
    const std::size_t nmax_at = r.out.find("\"n_max\"");
    const std::size_t trace_at = r.out.find("\"trace\"");
    CHECK(spec_at < nmax_at);
    CHECK(nmax_at < trace_at);
}

TEST_CASE("cli: husimi grid row count matches res^2") {
    const CliResult r = run_cli("husimi --spec cvmms:b=1 --extent 4 --res 81");
    REQUIRE(r.exit_code == 0);
    std::size_t lines = 0;
    for (char c : r.out) lines += (c == '\n');
    CHECK(lines == 81u * 81u + 1u);  // header + one row per point
    // peak sits on the center row/column
    std::istringstream in(r.out);
    const PhaseSpaceGrid grid = read_grid_csv(in);
    double peak = -1.0;
    int pi_ = -1, pj = -1;
    for (int i = 0; i < 81; ++i)
        for (int j = 0; j < 81; ++j)
            if (grid.at(i, j) > peak) {
                peak = grid.at(i, j);
                pi_ = i;
                pj = j;
            }
    CHECK(pi_ == 40);
    CHECK(pj == 40);
}

TEST_CASE("cli: squeezed purification reports the truncated off-diagonal mass") {
    const CliResult r = run_cli("purify --spec squeezed:b=2,s=0.3,phi=0 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["offdiag_truncated_hs"].get<double>() > 1e-3);
    CHECK(j["verification"]["pass"].get<bool>());
}

TEST_CASE("cli: GMMS_KERNELS=scalar is honored and stays numerically consistent") {
    const CliResult fast = run_cli("state --spec cvmms:b=1 --format json");
    const std::string cmd = std::string("GMMS_KERNELS=scalar ") + GMMS_CLI_PATH +
                            " state --spec cvmms:b=1 --format json 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    REQUIRE(WEXITSTATUS(pclose(pipe)) == 0);
    const auto a = nlohmann::json::parse(fast.out);
    const auto b = nlohmann::json::parse(out);
    CHECK(std::abs(a["entropy_nats"].get<double>() - b["entropy_nats"].get<double>()) < 1e-12);
    CHECK(std::abs(a["trace"].get<double>() - b["trace"].get<double>()) < 1e-13);
}

TEST_CASE("cli: weights dump for a squeezed state carries the kappa report") {
    const CliResult r = run_cli("state --spec squeezed:b=1,s=0.1,phi=0 --weights --cutoff 30");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    const Table t = read_table_csv(in);
    CHECK(t.columns == std::vector<std::string>{"n", "weight", "kappa"});
    REQUIRE(t.rows.size() == 31);
    // kappa = weight * b^2 e^{K b^2}, K = 1 - tanh(s) cos(phi)
    const double k = 1.0 - std::tanh(0.1);
    for (const auto& row : t.rows)
        CHECK(row[2] == doctest::Approx(row[1] * std::exp(k)).epsilon(1e-12));
}
