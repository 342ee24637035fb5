#include "mhdq/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace mhdq {

namespace {

constexpr const char* magic = "MHDQ-SNAPSHOT 1";
constexpr const char* layout = "float64-le cell-interleaved x1-fastest";

std::string num(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::uint64_t to_le(std::uint64_t v)
{
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
        return r;
    }
    return v;
}

std::string expect_line(std::istream& in, const std::string& key)
{
    std::string line;
    if (!std::getline(in, line)) throw SnapshotError("snapshot header truncated before '" + key + "'");
    if (line.rfind(key, 0) != 0) throw SnapshotError("snapshot header: expected '" + key + "', got '" + line + "'");
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string{};
}

template <typename T>
std::array<T, 3> parse3(const std::string& s, const std::string& key)
{
    std::istringstream in(s);
    std::array<T, 3> out{};
    if (!(in >> out[0] >> out[1] >> out[2])) throw SnapshotError("snapshot header: bad '" + key + "' line");
    return out;
}

}  // namespace

void write_snapshot(std::ostream& out, const Snapshot& snap)
{
    const Grid& g = snap.field.grid();
    out << magic << '\n'
        << "domain " << to_string(g.kind) << '\n'
        << "origin " << num(g.origin[0]) << ' ' << num(g.origin[1]) << ' ' << num(g.origin[2]) << '\n'
        << "extents " << num(g.extent[0]) << ' ' << num(g.extent[1]) << ' ' << num(g.extent[2]) << '\n'
        << "cells " << g.cells[0] << ' ' << g.cells[1] << ' ' << g.cells[2] << '\n'
        << "time " << num(snap.t) << '\n'
        << "components";
    for (const auto& name : component_names) out << ' ' << name;
    out << '\n' << "layout " << layout << '\n' << "end_header\n";

    const auto values = snap.field.interior_values();
    std::vector<std::uint64_t> bits(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) bits[n] = to_le(std::bit_cast<std::uint64_t>(values[n]));
    out.write(reinterpret_cast<const char*>(bits.data()), std::streamsize(bits.size() * sizeof(std::uint64_t)));
    if (!out) throw SnapshotError("failed writing snapshot data");
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SnapshotError("cannot open '" + path.string() + "' for writing");
    write_snapshot(out, snap);
}

Snapshot read_snapshot(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != magic) throw SnapshotError("not a snapshot (bad magic line)");
    Grid g;
    try {
        g.kind = domain_kind_from_string(expect_line(in, "domain"));
    } catch (const std::invalid_argument& e) {
        throw SnapshotError(std::string("snapshot header: ") + e.what());
    }
    g.origin = parse3<double>(expect_line(in, "origin"), "origin");
    g.extent = parse3<double>(expect_line(in, "extents"), "extents");
    g.cells = parse3<int>(expect_line(in, "cells"), "cells");
    for (int a = 0; a < 3; ++a)
        if (g.cells[a] <= 0 || !(g.extent[a] > 0.0)) throw SnapshotError("snapshot header: non-positive grid size");

    Snapshot snap;
    {
        std::istringstream t(expect_line(in, "time"));
        if (!(t >> snap.t)) throw SnapshotError("snapshot header: bad 'time' line");
    }
    std::istringstream comps(expect_line(in, "components"));
    for (const auto& name : component_names) {
        std::string got;
        if (!(comps >> got) || got != name) throw SnapshotError("snapshot header: unexpected component order");
    }
    if (expect_line(in, "layout") != layout) throw SnapshotError("snapshot header: unsupported layout");
    if (!std::getline(in, line) || line != "end_header") throw SnapshotError("snapshot header: missing end_header");

    std::vector<std::uint64_t> bits(g.interior_count() * num_components);
    in.read(reinterpret_cast<char*>(bits.data()), std::streamsize(bits.size() * sizeof(std::uint64_t)));
    if (in.gcount() != std::streamsize(bits.size() * sizeof(std::uint64_t)))
        throw SnapshotError("snapshot data truncated");
    std::vector<double> values(bits.size());
    for (std::size_t n = 0; n < bits.size(); ++n) values[n] = std::bit_cast<double>(to_le(bits[n]));
    snap.field = Field(g);
    snap.field.set_interior_values(values);
    return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open '" + path.string() + "'");
    return read_snapshot(in);
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticRecord>& history, DomainKind kind)
{
    const bool half = kind == DomainKind::half;
    out << "t,divH_max,energy,H0,H1,H2,H3,trace_u3,trace_H3";
    if (half) out << ",parity_defect";
    out << '\n';
    for (const auto& d : history) {
        out << num(d.t) << ',' << num(d.divH_max) << ',' << num(d.energy);
        for (double s : d.sobolev) out << ',' << num(s);
        out << ',' << num(d.trace_u3) << ',' << num(d.trace_H3);
        if (half) out << ',' << num(d.parity_defect);
        out << '\n';
    }
}

}  // namespace mhdq
