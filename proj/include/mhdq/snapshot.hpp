#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "mhdq/field.hpp"
#include "mhdq/solver.hpp"

namespace mhdq {

class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Snapshot {
    double t = 0.0;
    Field field;
};

/// Text header followed by the interior cells as little-endian doubles,
/// x1 fastest, 8 components per cell. See README for the exact layout.
void write_snapshot(std::ostream& out, const Snapshot& snap);
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Diagnostics series as CSV. The parity_defect column is written only
/// for half boxes.
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticRecord>& history, DomainKind kind);

}  // namespace mhdq
