#pragma once

#include "gigagap/costs.hpp"
#include "gigagap/coverage.hpp"
#include "gigagap/geo.hpp"
#include "gigagap/targets.hpp"
#include "gigagap/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gigagap::gap {

struct GapCell {
    Target target = Target::T1;
    Segment segment = Segment::Households;
    std::string region;
    std::string country;
    Geotype geotype = Geotype::Urban;
    Unit unit = Unit::Premises;
    CostAction action = CostAction::FtthNew;
    double quantity = 0.0; ///< premises (or equivalents, or km) still to serve by `action`
    double locations = 0.0; ///< enterprise locations behind an equivalents quantity
    double unit_cost = 0.0;
    double investment = 0.0;
};

/// Orders cells by (region, target, geotype, segment, unit, action).
bool cell_less(const GapCell& a, const GapCell& b);
void sort_cells(std::vector<GapCell>& cells);

/// Sum of investment in the given (already sorted) order.
double total_investment(std::span<const GapCell> cells);

/// Splits the item over its footprints: the part already served costs nothing,
/// every other premise goes to the cheapest path whose footprint reaches it,
/// and the remainder to new build. Returns one cell per path that serves a
/// nonzero share; an empty result means the item is fully covered.
std::vector<GapCell> gap_for_item(const targets::DemandItem& item, const coverage::CoverageState& state,
                                  const costs::CostTable& table);

/// Share of the item already served at no cost.
double served_share(const targets::DemandItem& item, const coverage::CoverageState& state);

struct TargetResult {
    Target target = Target::T1;
    int vintage = 0;
    std::vector<GapCell> cells;
};

/// Evaluates every item (in parallel when threads > 1) and returns sorted cells.
TargetResult evaluate_target(Target target, std::span<const targets::DemandItem> items,
                             const coverage::CoverageState& state, const costs::CostTable& table,
                             unsigned threads = 1);

/// Fraction of a T3 cell that remains once T4 has passed its locations: one
/// household-equivalent per enterprise location is already paid for, except in
/// the extremely rural geotype where T3 keeps its fibre demand in full.
double t3_remaining_fraction(const GapCell& t3_cell);

/// Composes the five target results in the order T1, T2, T4, T3 and returns the
/// deduplicated cells, sorted. Throws DataError if a target is missing or the
/// vintages differ.
std::vector<GapCell> compose_egs(std::span<const TargetResult> results, const targets::Scenario& scenario,
                                 std::span<const geo::Country> countries);

struct OperatorInvestment {
    double fixed_per_year = 10.4e9;
    double fixed_effective_fraction = 2.0 / 3.0;
    double wireless_per_year = 22.0e9;
    double horizon_years = 6.0;

    /// Pools are rounded to whole cents.
    double fixed_gross() const;
    double fixed_pool() const;
    double wireless_pool() const;
    void validate() const;
};

struct OperatorOutcome {
    OperatorInvestment inputs;
    double fixed_pool = 0.0;
    double wireless_pool = 0.0;
    double fixed_consumed = 0.0;
    double wireless_consumed = 0.0;
    double total = 0.0;
    double residual = 0.0;
    /// Per headline cell, in cell order.
    std::vector<double> consumed;
    std::map<std::string, double> residual_by_country;
    /// Amount by which a country's residual would have dropped below zero.
    std::map<std::string, double> clamped_by_country;
};

/// Greedy consumption of the fixed pool by fixed cells and the wireless pool by
/// 5G cells, cheapest unit cost first, ties broken by cell order.
OperatorOutcome subtract_operator_investment(std::span<const GapCell> cells, const OperatorInvestment& op);

struct RegionStat {
    std::string region;
    std::string country;
    double population = 0.0;
    double premises = 0.0;
    /// Premises not yet reached by any gigabit-capable footprint.
    double gigabit_gap = 0.0;

    double gap_share() const { return premises > 0.0 ? gigabit_gap / premises : 0.0; }
};

std::vector<RegionStat> region_gigabit_gaps(const geo::Frame& frame, const coverage::CoverageState& state);

struct HistogramBucket {
    double low = 0.0;
    double high = 0.0;
    int regions = 0;
    double population_share = 0.0;
};

struct Histogram {
    std::vector<HistogramBucket> buckets;
    int at_most_half_regions = 0;
    double at_most_half_population_share = 0.0;
    int above_half_regions = 0;
    double above_half_population_share = 0.0;
};

/// Ten 10%-wide buckets of regional gap share; a share of exactly 1 falls in the last.
Histogram histogram_gap_shares(std::span<const RegionStat> regions);

/// Canonical keys of the headline totals, in report order.
inline constexpr std::array<std::string_view, 12> kTotalKeys{
    "T1",          "T2A",        "T2B",          "T2",
    "T2_once_T1",  "T3",         "T3_once_T4",   "T4",
    "EGS_households", "EGS_premises", "EGS_premises_companies", "total"};

using Totals = std::map<std::string, double>;

struct GapReport {
    targets::Scenario scenario;
    int vintage = 0;
    bool composed = false;
    std::vector<Target> computed;
    std::map<Target, std::vector<GapCell>> standalone;
    /// Composed cells for an EGS run, otherwise every standalone cell; sorted.
    std::vector<GapCell> cells;
    Totals totals;
    std::map<std::string, Totals> country_totals;
    std::optional<OperatorOutcome> operators;
    std::vector<RegionStat> regions;
    std::map<std::string, bool> cohesion;
};

/// Fills totals and country_totals from the standalone and composed cells.
void summarize(GapReport& report);

enum class Dimension { Geotype, UrbanRural, Cohesion, Country, HouseholdsVsPremises };
std::string_view to_string(Dimension d);
std::optional<Dimension> parse_dimension(std::string_view text);

struct BreakdownRow {
    std::string category;
    double investment = 0.0;
    double share = 0.0;
    double quantity = 0.0;       ///< premises-unit quantity; km cells are left out
    double average_per_unit = 0.0; ///< premises-unit investment divided by quantity
};

struct Breakdown {
    Dimension dimension = Dimension::Geotype;
    std::optional<Target> target;
    double total = 0.0;
    std::vector<BreakdownRow> rows;
};

/// Breaks the headline cells (or one target's standalone cells) down by a
/// dimension. Throws DataError for COHESION without flags for every region, and
/// for HOUSEHOLDS_VS_PREMISES on a report that was not composed.
Breakdown breakdown(const GapReport& report, Dimension dimension, std::optional<Target> target = {});

} // namespace gigagap::gap
