#pragma once

#include "gigagap/costs.hpp"
#include "gigagap/coverage.hpp"
#include "gigagap/geo.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gigagap::io {

enum class Severity { Warning, Error };

struct Issue {
    Severity severity = Severity::Error;
    std::string file;
    int row = 0; ///< line number in the file, 0 when the issue concerns the whole file
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> issues;

    bool passed() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
    void error(std::string file, int row, std::string message);
    void warning(std::string file, int row, std::string message);
    /// One line per issue: "<severity> <file>:<row>: <message>".
    std::string to_text() const;
};

struct Dataset {
    std::vector<geo::Country> countries;
    std::vector<geo::Region> regions; ///< enterprise counts already allocated
    std::vector<geo::Locality> localities;
    std::map<std::string, SizeClassArray> enterprises;
    std::vector<coverage::CoverageInterval> intervals;
    std::vector<coverage::NationalFigure> national;
    std::vector<costs::CostReference> cost_references;
    costs::PriceIndex price_index;
    std::map<std::string, bool> cohesion; ///< empty when cohesion.csv is absent
    int vintage = 0;
};

/// Location of the bundled default cost data.
std::filesystem::path bundled_defaults_dir();

struct LoadOptions {
    /// Consulted for cost_references.csv and price_index.csv when the dataset
    /// directory has none; empty disables the fallback.
    std::filesystem::path defaults_dir = bundled_defaults_dir();
};

struct LoadResult {
    std::optional<Dataset> dataset; ///< set iff the report passed
    ValidationReport report;
};

/// Loads and cross-validates every input file, collecting all problems before
/// returning. Throws IoError if `dir` is not a readable directory.
LoadResult load_dataset(const std::filesystem::path& dir, const LoadOptions& options = {});

} // namespace gigagap::io
