#pragma once

#include "gigagap/evolution.hpp"
#include "gigagap/pipeline.hpp"

#include <filesystem>
#include <string>

namespace gigagap::report {

inline constexpr const char* kSummaryFormat = "gigagap-summary/1";
inline constexpr const char* kEvolutionFormat = "gigagap-evolution/1";

/// EUR to billions with one decimal, as printed in summary tables.
std::string billions(double eur);

/// gap_summary.json contents; key order is fixed.
std::string summary_json(const pipeline::RunResult& run);

/// evolution.json contents for a comparison.
std::string evolution_json(const evolution::EvolutionReport& evo);

/// Writes gap_cells.csv, gap_summary.json, histogram.csv, evolution.json,
/// coverage_point.csv and cost_table.csv into `dir`, creating it if needed.
/// A single run's evolution.json holds its one point. Throws IoError.
void write_reports(const pipeline::RunResult& run, const std::filesystem::path& dir);

void write_evolution(const evolution::EvolutionReport& evo, const std::filesystem::path& dir);

/// Reads a gap_summary.json produced by write_reports. Throws IoError for
/// unreadable files and DataError for content that is not a summary.
evolution::VintageSummary read_summary(const std::filesystem::path& path);

/// The printed table: rows T1, T2A, T2B, T2 once T1, T3, T4, EGS (premises),
/// EGS (premises + companies), followed by the operator split when present.
std::string summary_table(const gap::GapReport& report);

std::string evolution_table(const evolution::EvolutionReport& evo);

std::string breakdown_table(const gap::Breakdown& b);

} // namespace gigagap::report
