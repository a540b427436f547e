#pragma once

#include <filesystem>

#include "pabn/experiments.hpp"

namespace pabn {

/// Writes `energies.csv` (one row per finished run, sorted by topology then
/// height) and `epsilons.csv` (per-height energy gaps) into `dir`. Floats
/// are the shortest round-trip decimals, so repeated runs with identical
/// results produce byte-identical files. Throws IoError.
void write_csv(const SweepResult& result, const std::filesystem::path& dir);

/// One row per edge, face and vertex diagnostic of a single run.
void write_diagnostics_csv(const RunDiagnostics& diag, const std::filesystem::path& path);

/// Wraps a single run as a one-row sweep so the same writers apply.
SweepResult single_run_result(const RunResult& run, const ElasticConstants& k, int N);

}  // namespace pabn
