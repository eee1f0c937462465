#include "gigagap/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gigagap::evolution {

LinearFit fit_line(const std::vector<std::pair<int, double>>& points)
{
    if (points.size() < 2) {
        throw DataError("a trend needs at least two points");
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0.0) {
        throw DataError("a trend needs at least two distinct years");
    }
    const double slope = sxy / sxx;
    return {slope, mean_y - slope * mean_x};
}

EvolutionReport compare_vintages(std::vector<VintageSummary> summaries)
{
    if (summaries.size() < 2) {
        throw DataError("comparison needs at least two summaries");
    }
    std::sort(summaries.begin(), summaries.end(),
              [](const VintageSummary& a, const VintageSummary& b) { return a.vintage < b.vintage; });
    std::set<int> vintages;
    for (const auto& s : summaries) {
        if (!(s.scenario == summaries.front().scenario)) {
            throw DataError("summaries were computed under different scenarios");
        }
        if (!vintages.insert(s.vintage).second) {
            throw DataError("two summaries share vintage " + std::to_string(s.vintage));
        }
        if (s.totals.count("total") == 0) {
            throw DataError("summary for vintage " + std::to_string(s.vintage) + " has no total");
        }
    }

    EvolutionReport out;
    out.scenario = summaries.front().scenario;
    for (const auto& s : summaries) {
        out.points.emplace_back(s.vintage, s.totals.at("total"));
    }
    const auto& first = summaries.front();
    const auto& last = summaries.back();
    for (const auto& [key, value] : last.totals) {
        if (const auto it = first.totals.find(key); it != first.totals.end()) {
            out.deltas[key] = value - it->second;
        }
    }

    const LinearFit fit = fit_line(out.points);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    out.at_2025 = fit.intercept + fit.slope * 2025.0;
    if (fit.slope < 0.0 && out.points.back().second > 0.0) {
        out.zero_crossing = -fit.intercept / fit.slope;
        out.zero_crossing_year = static_cast<int>(std::lround(*out.zero_crossing));
    }

    for (std::size_t i = 1; i < summaries.size(); ++i) {
        const auto& before = summaries[i - 1];
        const auto& after = summaries[i];
        for (const auto& [country, value] : after.country_headline) {
            const auto it = before.country_headline.find(country);
            if (it != before.country_headline.end() && value > it->second) {
                out.increases.push_back({country, before.vintage, after.vintage, it->second, value});
            }
        }
    }
    return out;
}

} // namespace gigagap::evolution
