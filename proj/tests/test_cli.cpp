#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mhdq/cli.hpp"
#include "mhdq/config.hpp"
#include "mhdq/datum.hpp"
#include "mhdq/reflection.hpp"
#include "mhdq/snapshot.hpp"

using namespace mhdq;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "mhdq_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text)
{
    const fs::path p = dir / "scenario.cfg";
    std::ofstream(p) << text << "output_dir = " << (dir / "out").string() << '\n';
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("minimal config fills defaults")
{
    const auto cfg = parse_config_text("domain = half\nn = 24\nt_end = 0.25  # short\n");
    CHECK(cfg.domain == DomainKind::half);
    CHECK(cfg.n == std::array<int, 3>{24, 24, 24});
    CHECK(cfg.t_end == 0.25);
    CHECK(cfg.cfl == 0.5);
    CHECK(cfg.epsilon == 0.02);
    CHECK(cfg.require_compat);
    CHECK(cfg.c == 1.0);
}

TEST_CASE("resolved config parses back to itself")
{
    auto cfg = parse_config_text("eos = polytropic\nbackground_p = 1\ncenter2 = 0.3\namplitude = 0.02\n");
    CHECK(parse_config_text(cfg.to_text()).to_text() == cfg.to_text());
}

TEST_CASE("config errors name the problem")
{
    try {
        parse_config_text("n = 16\ndissipaton = 0.1\n", "a.cfg");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("dissipaton") != std::string::npos);
        CHECK(msg.find("a.cfg:2") != std::string::npos);
    }
    try {
        parse_config_text("c = 0\n");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("'c'") != std::string::npos);
        CHECK(msg.find("open") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("cfl = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("epsilon = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n1 = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("L2 = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("cfl = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("cfl = 0.3\ncfl = 0.4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just words\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("eos = polytropic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(fs::path("/nonexistent/mhdq.cfg")), ConfigError);
}

TEST_CASE("snapshots round trip bit for bit")
{
    DatumRecipe r;
    const auto d = make_admissible_datum(EquationOfState{}, Grid::quarter({1.0, 0.5, 1.0}, {16, 8, 16}), r);
    std::stringstream buf;
    write_snapshot(buf, Snapshot{0.125, d.field});
    const std::string bytes = buf.str();
    CHECK(bytes.rfind("MHDQ-SNAPSHOT 1\n", 0) == 0);
    CHECK(bytes.find("components p u1 u2 u3 H1 H2 H3 S\n") != std::string::npos);
    const auto header_end = bytes.find("end_header\n") + 11;
    CHECK(bytes.size() - header_end == 16u * 8u * 16u * 8u * 8u);

    const Snapshot s = read_snapshot(buf);
    CHECK(s.t == 0.125);
    CHECK(s.field.grid() == d.field.grid());
    CHECK(bitwise_equal_interior(s.field, d.field));

    std::stringstream bad("MHDQ-SNAPSHOT 1\ndomain quarter\n");
    CHECK_THROWS_AS(read_snapshot(bad), SnapshotError);
    std::stringstream truncated(bytes.substr(0, bytes.size() - 8));
    CHECK_THROWS_AS(read_snapshot(truncated), SnapshotError);
}

TEST_CASE("diagnostics CSV columns")
{
    std::vector<DiagnosticRecord> h(2);
    std::ostringstream q, half;
    write_diagnostics_csv(q, h, DomainKind::quarter);
    write_diagnostics_csv(half, h, DomainKind::half);
    CHECK(q.str().rfind("t,divH_max,energy,H0,H1,H2,H3,trace_u3,trace_H3\n", 0) == 0);
    CHECK(half.str().rfind("t,divH_max,energy,H0,H1,H2,H3,trace_u3,trace_H3,parity_defect\n", 0) == 0);
}

TEST_CASE("verify-structure is deterministic")
{
    const auto a = cli({"verify-structure", "--samples", "100", "--seed", "7"});
    const auto b = cli({"verify-structure", "--samples", "100", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({"check-compat"}).code == exit_usage);
    CHECK(cli({"check-compat", "/nonexistent.cfg"}).code == exit_usage);
    CHECK(cli({"--help"}).code == exit_ok);

    const fs::path dir = scratch("usage");
    CHECK(cli({"run", write_config(dir, "n = 8\n").string()}).code == exit_usage);
    CHECK(cli({"check-compat", write_config(dir, "c = 0\n").string()}).code == exit_usage);
}

TEST_CASE("check-compat reports and echoes the config")
{
    const fs::path dir = scratch("compat");
    const auto ok = cli({"check-compat", write_config(dir, "datum = interior-bump\n").string()});
    CHECK(ok.code == exit_ok);
    CHECK(ok.out.find("div_free") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "compat.txt"));
    const auto echoed = parse_config(dir / "out" / "config.resolved");
    CHECK(echoed.datum == "interior-bump");

    const auto bad = cli({"check-compat", write_config(dir, "datum = constant\nc = 0.01\nh1_threshold = 0.5\n").string()});
    CHECK(bad.code == exit_check_failed);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("compare-reflection on constant data")
{
    const fs::path dir = scratch("reflect_const");
    const auto r = cli({"compare-reflection", write_config(dir, "datum = constant\nn = 16\nmax_steps = 5\n").string(),
                        "--serial-reductions"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("max_abs_discrepancy 0.000000e+00") != std::string::npos);
    CHECK(r.out.find("bitwise_equal true") != std::string::npos);
}

TEST_CASE("run writes snapshots, diagnostics and the config echo, and extend reflects them")
{
    const fs::path dir = scratch("run");
    const auto cfg = write_config(dir, "max_steps = 4\noutput_every = 2\nserial_reductions = true\n");
    const auto r = cli({"run", cfg.string()});
    CHECK(r.code == exit_ok);
    const fs::path out = dir / "out";
    CHECK(fs::exists(out / "config.resolved"));
    CHECK(fs::exists(out / "snapshot_000000.mhdq"));
    CHECK(fs::exists(out / "snapshot_000004.mhdq"));
    const std::string csv = slurp(out / "diagnostics.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    // Same config, same bytes.
    const std::string first = slurp(out / "snapshot_000004.mhdq");
    CHECK(cli({"run", cfg.string()}).code == exit_ok);
    CHECK(slurp(out / "snapshot_000004.mhdq") == first);
    CHECK(slurp(out / "diagnostics.csv") == csv);

    const fs::path half = dir / "half.mhdq";
    CHECK(cli({"extend", (out / "snapshot_000004.mhdq").string(), half.string()}).code == exit_ok);
    const Snapshot q = read_snapshot(out / "snapshot_000004.mhdq");
    const Snapshot h = read_snapshot(half);
    CHECK(h.field.grid().cells[2] == 64);
    CHECK(bitwise_equal_interior(restrict(h.field), q.field));
    CHECK(parity_defect(h.field).maxCoeff() == 0.0);
    CHECK(cli({"extend", half.string(), (dir / "again.mhdq").string()}).code == exit_usage);
}

TEST_CASE("run refuses data that fail the compatibility checks")
{
    // The default bump is under-resolved on a 16^3 grid: discrete div H is
    // too large.
    const fs::path dir = scratch("refuse");
    const auto r = cli({"run", write_config(dir, "n = 16\nL2 = 1\n").string()});
    CHECK(r.code == exit_check_failed);
    CHECK(r.out.find("div_free") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out" / "snapshot_000000.mhdq"));
    CHECK(fs::exists(dir / "out" / "config.resolved"));
}
