#pragma once

#include "gigagap/targets.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gigagap::evolution {

/// The part of a run summary needed to compare vintages.
struct VintageSummary {
    targets::Scenario scenario;
    int vintage = 0;
    std::map<std::string, double> totals;          ///< EUR by total key
    std::map<std::string, double> country_headline; ///< EUR of the headline total by country
};

struct CountryIncrease {
    std::string country;
    int from_vintage = 0;
    int to_vintage = 0;
    double before = 0.0;
    double after = 0.0;
};

struct EvolutionReport {
    targets::Scenario scenario;
    std::vector<std::pair<int, double>> points; ///< (vintage, headline EUR), ascending vintage
    std::map<std::string, double> deltas;       ///< latest minus earliest, per total key
    double slope = 0.0;                         ///< EUR per year
    double intercept = 0.0;
    double at_2025 = 0.0;
    std::optional<double> zero_crossing;
    std::optional<int> zero_crossing_year;
    std::vector<CountryIncrease> increases;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares of y on x; needs two or more distinct x.
LinearFit fit_line(const std::vector<std::pair<int, double>>& points);

/// Throws DataError for fewer than two summaries, repeated vintages, or
/// summaries computed under different scenarios.
EvolutionReport compare_vintages(std::vector<VintageSummary> summaries);

} // namespace gigagap::evolution
