#include "mhdq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mhdq/config.hpp"
#include "mhdq/parallel.hpp"
#include "mhdq/reflection.hpp"
#include "mhdq/scenario.hpp"
#include "mhdq/snapshot.hpp"
#include "mhdq/structure.hpp"
#include "mhdq/system.hpp"

namespace mhdq {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

fs::path prepare_output(const ScenarioConfig& cfg)
{
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    write_text(dir / "config.resolved", cfg.to_text());
    return dir;
}

void require_run_size(const ScenarioConfig& cfg)
{
    for (int a = 0; a < 3; ++a)
        if (cfg.n[std::size_t(a)] < 16)
            throw ConfigError("invalid value for 'n" + std::to_string(a + 1) + "': runs need at least 16 cells per axis");
}

int cmd_verify_structure(int samples, std::uint64_t seed, const std::string& output_dir, std::ostream& out)
{
    if (samples <= 0) throw UsageError("--samples must be positive");
    const auto results = run_structure_suites(StructureSuiteConfig::from_samples(samples, seed));
    const std::string table = format_suite_table(results);
    out << table;
    const bool ok = std::all_of(results.begin(), results.end(),
                                [](const SuiteResult& r) { return r.pass || r.informational; });
    if (!output_dir.empty()) {
        fs::create_directories(output_dir);
        write_text(fs::path(output_dir) / "structure.txt", table);
        write_text(fs::path(output_dir) / "config.resolved",
                   "samples = " + std::to_string(samples) + "\nseed = " + std::to_string(seed) + "\n");
    }
    return ok ? exit_ok : exit_check_failed;
}

int cmd_check_compat(const std::string& config_path, std::ostream& out)
{
    const ScenarioConfig cfg = parse_config(config_path);
    const InitialDatum datum = scenario_datum(cfg);
    const CompatReport report = check_all(cfg.eos, datum, compat_tolerances(cfg));
    const std::string text = report.to_text();
    out << text;
    write_text(prepare_output(cfg) / "compat.txt", text);
    return report.passed() ? exit_ok : exit_check_failed;
}

int cmd_extend(const std::string& in_path, const std::string& out_path, std::ostream& out)
{
    const Snapshot in = read_snapshot(fs::path(in_path));
    if (in.field.grid().kind != DomainKind::quarter) throw UsageError("extend expects a quarter-box snapshot");
    write_snapshot(fs::path(out_path), Snapshot{in.t, extend(in.field)});
    const Grid g = in.field.grid().reflected();
    out << "extended " << in_path << " -> " << out_path << " (" << g.cells[0] << 'x' << g.cells[1] << 'x'
        << g.cells[2] << " cells)\n";
    return exit_ok;
}

std::string snapshot_name(long step)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%06ld.mhdq", step);
    return buf;
}

int cmd_run(ScenarioConfig cfg, std::ostream& out)
{
    require_run_size(cfg);
    const fs::path dir = prepare_output(cfg);
    const ScenarioRun run = run_scenario(cfg, default_workers(), [&](const RunState& rs) {
        write_snapshot(dir / snapshot_name(rs.steps), Snapshot{rs.t, rs.field});
    });
    write_text(dir / "compat.txt", run.compat.to_text());
    if (!run.result) {
        out << "initial datum fails the compatibility checks; not running\n" << run.compat.to_text();
        return exit_check_failed;
    }
    std::ostringstream csv;
    write_diagnostics_csv(csv, run.result->state.history, cfg.domain);
    write_text(dir / "diagnostics.csv", csv.str());

    const Grid grid = cfg.domain == DomainKind::half ? datum_grid(cfg).reflected() : datum_grid(cfg);
    const auto checks = persistence_checks(cfg, grid, run.result->state.history);
    const std::string table = format_checks(checks);
    write_text(dir / "checks.txt", table);
    out << "steps " << run.result->state.steps << ", t = " << std::setprecision(17) << run.result->state.t << '\n'
        << table;
    return all_pass(checks) ? exit_ok : exit_check_failed;
}

int cmd_compare_reflection(ScenarioConfig cfg, std::ostream& out)
{
    require_run_size(cfg);
    const fs::path dir = prepare_output(cfg);
    const ReflectionComparison cmp = compare_reflection(cfg, default_workers());
    std::ostringstream s;
    s << "steps " << cmp.steps << ", outputs " << cmp.outputs << '\n'
      << std::scientific << std::setprecision(6) << "max_abs_discrepancy " << cmp.max_abs << '\n'
      << "max_rel_discrepancy " << cmp.max_rel << '\n'
      << "bitwise_equal " << (cmp.bitwise_equal ? "true" : "false") << '\n'
      << format_checks(cmp.checks);
    out << s.str();
    write_text(dir / "reflection.txt", s.str());
    return all_pass(cmp.checks) ? exit_ok : exit_check_failed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ideal MHD on the quarter space with perfectly conducting walls", "mhdq"};
    app.require_subcommand(1);
    app.footer(config_help());

    int samples = 1000;
    std::uint64_t seed = 1;
    std::string output_dir;
    auto* verify = app.add_subcommand("verify-structure", "randomized checks of the algebraic structure");
    verify->add_option("--samples", samples, "random states per suite (rank/form use N/2, invariance N/5)");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--output-dir", output_dir, "also write the table here");

    std::string config_path;
    auto* compat = app.add_subcommand("check-compat", "evaluate the compatibility conditions of a datum");
    compat->add_option("config", config_path, "scenario config")->required();

    std::string in_path, out_path;
    auto* ext = app.add_subcommand("extend", "reflect a quarter-box snapshot to the half box");
    ext->add_option("input", in_path, "quarter-box snapshot")->required();
    ext->add_option("output", out_path, "half-box snapshot to write")->required();

    bool serial = false;
    auto* run = app.add_subcommand("run", "integrate a scenario, writing snapshots and diagnostics");
    run->add_option("config", config_path, "scenario config")->required();
    run->add_flag("--serial-reductions", serial, "left-to-right reductions");

    auto* cmp = app.add_subcommand("compare-reflection", "quarter run vs reflected half run");
    cmp->add_option("config", config_path, "scenario config")->required();
    cmp->add_flag("--serial-reductions", serial, "left-to-right reductions");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*verify) return cmd_verify_structure(samples, seed, output_dir, out);
        if (*compat) return cmd_check_compat(config_path, out);
        if (*ext) return cmd_extend(in_path, out_path, out);
        ScenarioConfig cfg = parse_config(config_path);
        if (serial) cfg.serial_reductions = true;
        if (*run) return cmd_run(cfg, out);
        return cmd_compare_reflection(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SnapshotError& e) {
        err << "snapshot error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << '\n';
        return exit_check_failed;
    }
}

}  // namespace mhdq
