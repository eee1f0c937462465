#pragma once

#include "gigagap/costs.hpp"
#include "gigagap/coverage.hpp"
#include "gigagap/geo.hpp"
#include "gigagap/targets.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gigagap::test {

/// A footprint on the premise line [0, 1] with the unit cost of serving it.
struct OraclePath {
    double footprint = 0.0;
    double unit_cost = 0.0;
};

/// Cost per unit of demand: the line is cut at every footprint edge and each
/// piece beyond `served` is priced at the cheapest path reaching all of it,
/// with `new_build` reaching everything.
double partition_cost(double served, const std::vector<OraclePath>& paths, double new_build);

struct OracleTotals {
    double t1 = 0.0;
    double t2_urban = 0.0;
    double t2_transport = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;
    double t2_once_t1 = 0.0;
    double t3_once_t4 = 0.0;
    double egs_households = 0.0;
    double egs_premises = 0.0;
    double egs_premises_companies = 0.0;
};

/// Recomputes every target by enumerating (region, geotype, demand) and its
/// footprint partition directly from the frame, coverage and cost table.
OracleTotals brute_force_totals(const geo::Frame& frame, const coverage::CoverageState& state,
                                const costs::CostTable& table, const targets::Scenario& scenario,
                                const targets::TierSizes& sizes = {});

/// Greedy pool consumption by sorting cells per pool and sweeping prefix sums.
struct SweepCell {
    double unit_cost = 0.0;
    double investment = 0.0;
    bool wireless = false;
};
std::vector<double> sweep_consumption(const std::vector<SweepCell>& cells, double fixed_pool, double wireless_pool);

} // namespace gigagap::test
