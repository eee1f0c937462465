#include "gigagap/gap.hpp"

#include "gigagap/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

namespace gigagap::gap {

namespace {

double round_cents(double eur) { return std::round(eur * 100.0) / 100.0; }

struct Path {
    double footprint;
    double unit_cost;
    CostAction action;
    int order;
};

bool is_fixed(const GapCell& c) { return !is_wireless(c.action); }

bool has_target(const std::map<Target, std::vector<GapCell>>& m, Target t) { return m.count(t) != 0; }

void add_to(Totals& t, const std::string& key, double v) { t[key] += v; }

} // namespace

bool cell_less(const GapCell& a, const GapCell& b)
{
    return std::tie(a.region, a.target, a.geotype, a.segment, a.unit, a.action) <
           std::tie(b.region, b.target, b.geotype, b.segment, b.unit, b.action);
}

void sort_cells(std::vector<GapCell>& cells) { std::stable_sort(cells.begin(), cells.end(), cell_less); }

double total_investment(std::span<const GapCell> cells)
{
    double sum = 0.0;
    for (const auto& c : cells) {
        sum += c.investment;
    }
    return sum;
}

double served_share(const targets::DemandItem& item, const coverage::CoverageState& state)
{
    double served = std::clamp(item.known_coverage, 0.0, 1.0);
    for (const TechClass t : item.satisfied_by) {
        served = std::max(served, state.at(item.region, item.geotype, t));
    }
    return served;
}

std::vector<GapCell> gap_for_item(const targets::DemandItem& item, const coverage::CoverageState& state,
                                  const costs::CostTable& table)
{
    if (item.quantity < 0.0) {
        throw DataError("negative demand quantity in region " + item.region);
    }
    std::vector<Path> paths;
    int order = 0;
    for (const auto& r : item.reuse) {
        paths.push_back({state.at(item.region, item.geotype, r.from),
                         table.unit_cost(r.action, item.geotype, item.country), r.action, order++});
    }
    paths.push_back({1.0, table.unit_cost(item.required_action, item.geotype, item.country) + item.extra_unit_cost,
                     item.required_action, order++});
    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
        return std::tie(a.unit_cost, a.order) < std::tie(b.unit_cost, b.order);
    });

    // Footprints overlap as much as possible, so each path only adds the premises
    // its footprint reaches beyond everything cheaper.
    std::vector<GapCell> out;
    double reached = served_share(item, state);
    for (const auto& p : paths) {
        const double share = p.footprint - reached;
        if (share <= 0.0) {
            continue;
        }
        reached = p.footprint;
        GapCell cell;
        cell.target = item.target;
        cell.segment = item.segment;
        cell.region = item.region;
        cell.country = item.country;
        cell.geotype = item.geotype;
        cell.unit = item.unit;
        cell.action = p.action;
        cell.quantity = item.quantity * share;
        cell.locations = item.locations * share;
        cell.unit_cost = p.unit_cost;
        cell.investment = cell.quantity * cell.unit_cost;
        if (cell.quantity > 0.0) {
            out.push_back(std::move(cell));
        }
    }
    return out;
}

TargetResult evaluate_target(Target target, std::span<const targets::DemandItem> items,
                             const coverage::CoverageState& state, const costs::CostTable& table,
                             unsigned threads)
{
    std::vector<std::vector<GapCell>> per_item(items.size());
    parallel_for(items.size(), threads,
                 [&](std::size_t i) { per_item[i] = gap_for_item(items[i], state, table); });
    TargetResult result{target, state.vintage(), {}};
    for (auto& cells : per_item) {
        for (auto& c : cells) {
            result.cells.push_back(std::move(c));
        }
    }
    sort_cells(result.cells);
    return result;
}

double t3_remaining_fraction(const GapCell& cell)
{
    if (cell.geotype == Geotype::ExtremelyRural || !(cell.quantity > 0.0)) {
        return 1.0;
    }
    return std::max(0.0, 1.0 - cell.locations / cell.quantity);
}

std::vector<GapCell> compose_egs(std::span<const TargetResult> results, const targets::Scenario& scenario,
                                 std::span<const geo::Country> countries)
{
    std::map<Target, const TargetResult*> by_target;
    for (const auto& r : results) {
        by_target[r.target] = &r;
    }
    for (const Target t : kTargets) {
        if (by_target.count(t) == 0) {
            throw DataError("composition needs target " + std::string(to_string(t)));
        }
    }
    const int vintage = results.front().vintage;
    for (const auto& r : results) {
        if (r.vintage != vintage) {
            throw DataError("targets were computed on different coverage vintages (" + std::to_string(vintage) +
                            " and " + std::to_string(r.vintage) + ")");
        }
    }

    std::set<std::string> capitals;
    for (const auto& c : countries) {
        capitals.insert(c.capital_region);
    }
    // Nominal 5G in the capital does not meet a guaranteed-quality T2.
    const bool t1_serves_t2 =
        scenario.t1_quality == scenario.t2_quality || scenario.t1_quality == Quality::Guaranteed;

    std::vector<GapCell> out;
    for (const Target t : {Target::T1, Target::T2Urban, Target::T2Transport, Target::T4, Target::T3}) {
        for (const auto& c : by_target[t]->cells) {
            if (t == Target::T2Urban && t1_serves_t2 && capitals.count(c.region) != 0 &&
                is_urban_side(c.geotype)) {
                continue;
            }
            if (t == Target::T3) {
                const double keep = t3_remaining_fraction(c);
                if (keep <= 0.0) {
                    continue;
                }
                GapCell kept = c;
                kept.quantity = c.quantity * keep;
                kept.locations = c.locations * keep;
                kept.investment = kept.quantity * kept.unit_cost;
                out.push_back(std::move(kept));
                continue;
            }
            out.push_back(c);
        }
    }
    sort_cells(out);
    return out;
}

double OperatorInvestment::fixed_gross() const { return round_cents(fixed_per_year * horizon_years); }

double OperatorInvestment::fixed_pool() const
{
    return round_cents(fixed_per_year * horizon_years * fixed_effective_fraction);
}

double OperatorInvestment::wireless_pool() const { return round_cents(wireless_per_year * horizon_years); }

void OperatorInvestment::validate() const
{
    if (!(fixed_per_year >= 0.0) || !(wireless_per_year >= 0.0) || !(horizon_years >= 0.0)) {
        throw DataError("operator investment figures must be non-negative");
    }
    if (!(fixed_effective_fraction >= 0.0 && fixed_effective_fraction <= 1.0)) {
        throw DataError("operator effective fraction must lie in [0, 1]");
    }
}

OperatorOutcome subtract_operator_investment(std::span<const GapCell> cells, const OperatorInvestment& op)
{
    op.validate();
    OperatorOutcome out;
    out.inputs = op;
    out.fixed_pool = op.fixed_pool();
    out.wireless_pool = op.wireless_pool();
    out.consumed.assign(cells.size(), 0.0);

    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cells[a].unit_cost != cells[b].unit_cost) {
            return cells[a].unit_cost < cells[b].unit_cost;
        }
        return cell_less(cells[a], cells[b]);
    });

    // Track what each pool has paid out; the remainder is always pool - used.
    double fixed_used = 0.0;
    double wireless_used = 0.0;
    for (const std::size_t i : order) {
        const bool fixed = is_fixed(cells[i]);
        double& used = fixed ? fixed_used : wireless_used;
        const double pool = fixed ? out.fixed_pool : out.wireless_pool;
        const double take = std::clamp(pool - used, 0.0, cells[i].investment);
        if (take <= 0.0) {
            continue;
        }
        out.consumed[i] = take;
        used += take;
    }

    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        out.total += c.investment;
        (is_fixed(c) ? out.fixed_consumed : out.wireless_consumed) += out.consumed[i];
        out.residual += c.investment - out.consumed[i];
        out.residual_by_country[c.country] += c.investment - out.consumed[i];
    }
    for (auto& [country, residual] : out.residual_by_country) {
        // Consumption is capped per cell, so this only absorbs rounding noise.
        out.clamped_by_country[country] = residual < 0.0 ? -residual : 0.0;
        residual = std::max(0.0, residual);
    }
    out.residual = std::max(0.0, out.residual);
    return out;
}

std::vector<RegionStat> region_gigabit_gaps(const geo::Frame& frame, const coverage::CoverageState& state)
{
    std::vector<RegionStat> out;
    for (const auto& r : frame.regions) {
        RegionStat s{r.id, r.country, r.population, 0.0, 0.0};
        const GeoArray premises = frame.premises.at(r.id).total();
        for (const Geotype g : kGeotypes) {
            const double p = premises(index_of(g));
            s.premises += p;
            s.gigabit_gap += p * (1.0 - coverage::effective_footprint(state, r.id, g, Tier::Gbps1));
        }
        out.push_back(std::move(s));
    }
    return out;
}

Histogram histogram_gap_shares(std::span<const RegionStat> regions)
{
    Histogram h;
    for (int k = 0; k < 10; ++k) {
        h.buckets.push_back({k / 10.0, (k + 1) / 10.0, 0, 0.0});
    }
    double population = 0.0;
    for (const auto& r : regions) {
        population += r.population;
    }
    for (const auto& r : regions) {
        const double share = r.gap_share();
        int k = 9;
        while (k > 0 && share < k / 10.0) {
            --k;
        }
        const double pop_share = population > 0.0 ? r.population / population : 0.0;
        h.buckets[k].regions += 1;
        h.buckets[k].population_share += pop_share;
        if (share <= 0.5) {
            h.at_most_half_regions += 1;
            h.at_most_half_population_share += pop_share;
        } else {
            h.above_half_regions += 1;
            h.above_half_population_share += pop_share;
        }
    }
    return h;
}

void summarize(GapReport& report)
{
    report.totals.clear();
    report.country_totals.clear();
    auto add = [&](const GapCell& c, const std::string& key) {
        add_to(report.totals, key, c.investment);
        add_to(report.country_totals[c.country], key, c.investment);
    };
    auto ensure = [&](const std::string& key) {
        report.totals.try_emplace(key, 0.0);
        for (auto& [country, t] : report.country_totals) {
            t.try_emplace(key, 0.0);
        }
    };

    const std::pair<Target, const char*> standalone_keys[] = {{Target::T1, "T1"},
                                                              {Target::T2Urban, "T2A"},
                                                              {Target::T2Transport, "T2B"},
                                                              {Target::T3, "T3"},
                                                              {Target::T4, "T4"}};
    for (const auto& [t, key] : standalone_keys) {
        if (!has_target(report.standalone, t)) {
            continue;
        }
        for (const auto& c : report.standalone.at(t)) {
            add(c, key);
            if (t == Target::T2Urban || t == Target::T2Transport) {
                add(c, "T2");
            }
            if (!report.composed) {
                add(c, "total");
            }
        }
    }

    if (report.composed) {
        for (const auto& c : report.cells) {
            switch (c.target) {
            case Target::T1:
                break;
            case Target::T2Urban:
            case Target::T2Transport:
                add(c, "T2_once_T1");
                break;
            case Target::T3:
                add(c, "T3_once_T4");
                break;
            case Target::T4:
                break;
            }
            if (c.target != Target::T3) {
                add(c, "EGS_premises");
                if (c.segment != Segment::EnterpriseLocations) {
                    add(c, "EGS_households");
                }
            }
            add(c, "EGS_premises_companies");
            add(c, "total");
        }
    }

    // Keys that apply to this run are always present, even when zero.
    std::vector<std::string> keys{"total"};
    for (const auto& [t, key] : standalone_keys) {
        if (has_target(report.standalone, t)) {
            keys.emplace_back(key);
        }
    }
    if (has_target(report.standalone, Target::T2Urban) || has_target(report.standalone, Target::T2Transport)) {
        keys.emplace_back("T2");
    }
    if (report.composed) {
        for (const char* k : {"T2_once_T1", "T3_once_T4", "EGS_households", "EGS_premises", "EGS_premises_companies"}) {
            keys.emplace_back(k);
        }
    }
    for (const auto& r : report.regions) {
        report.country_totals.try_emplace(r.country);
    }
    for (const auto& k : keys) {
        ensure(k);
    }
}

std::string_view to_string(Dimension d)
{
    switch (d) {
    case Dimension::Geotype:
        return "GEOTYPE";
    case Dimension::UrbanRural:
        return "URBAN_RURAL";
    case Dimension::Cohesion:
        return "COHESION";
    case Dimension::Country:
        return "COUNTRY";
    case Dimension::HouseholdsVsPremises:
        return "HOUSEHOLDS_VS_PREMISES";
    }
    return "?";
}

std::optional<Dimension> parse_dimension(std::string_view text)
{
    std::string u(text);
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const Dimension d : {Dimension::Geotype, Dimension::UrbanRural, Dimension::Cohesion, Dimension::Country,
                              Dimension::HouseholdsVsPremises}) {
        if (to_string(d) == u) {
            return d;
        }
    }
    return std::nullopt;
}

Breakdown breakdown(const GapReport& report, Dimension dimension, std::optional<Target> target)
{
    Breakdown out;
    out.dimension = dimension;
    out.target = target;

    if (dimension == Dimension::HouseholdsVsPremises) {
        if (!report.composed) {
            throw DataError("the households vs premises breakdown needs a composed EGS report");
        }
        const double premises = report.totals.at("EGS_premises");
        for (const char* key : {"EGS_households", "EGS_premises", "EGS_premises_companies"}) {
            const double v = report.totals.at(key);
            out.rows.push_back({key, v, premises > 0.0 ? v / premises : 0.0, 0.0, 0.0});
        }
        out.total = premises;
        return out;
    }

    const std::vector<GapCell>* cells = &report.cells;
    if (target) {
        const auto it = report.standalone.find(*target);
        if (it == report.standalone.end()) {
            throw DataError("target " + std::string(to_string(*target)) + " was not computed");
        }
        cells = &it->second;
    }

    auto category = [&](const GapCell& c) -> std::string {
        switch (dimension) {
        case Dimension::Geotype:
            return std::string(gigagap::to_string(c.geotype));
        case Dimension::UrbanRural:
            return is_urban_side(c.geotype) ? "URBAN_SUBURBAN" : "RURAL";
        case Dimension::Cohesion: {
            const auto it = report.cohesion.find(c.region);
            if (it == report.cohesion.end()) {
                throw DataError("no cohesion flag for region " + c.region);
            }
            return it->second ? "COHESION" : "NON_COHESION";
        }
        case Dimension::Country:
            return c.country;
        case Dimension::HouseholdsVsPremises:
            break;
        }
        return "";
    };

    std::vector<std::string> categories;
    switch (dimension) {
    case Dimension::Geotype:
        for (const Geotype g : kGeotypes) {
            categories.emplace_back(gigagap::to_string(g));
        }
        break;
    case Dimension::UrbanRural:
        categories = {"URBAN_SUBURBAN", "RURAL"};
        break;
    case Dimension::Cohesion:
        if (report.cohesion.empty()) {
            throw DataError("cohesion flags were not loaded");
        }
        categories = {"COHESION", "NON_COHESION"};
        break;
    case Dimension::Country:
        for (const auto& [code, t] : report.country_totals) {
            categories.push_back(code);
        }
        break;
    case Dimension::HouseholdsVsPremises:
        break;
    }

    std::map<std::string, BreakdownRow> rows;
    std::map<std::string, double> premises_investment;
    for (const auto& name : categories) {
        rows[name].category = name;
    }
    for (const auto& c : *cells) {
        auto& row = rows[category(c)];
        row.category = category(c);
        row.investment += c.investment;
        out.total += c.investment;
        if (c.unit == Unit::Premises) {
            row.quantity += c.quantity;
            premises_investment[row.category] += c.investment;
        }
    }
    for (const auto& name : categories) {
        auto row = rows.at(name);
        row.share = out.total > 0.0 ? row.investment / out.total : 0.0;
        row.average_per_unit = row.quantity > 0.0 ? premises_investment[name] / row.quantity : 0.0;
        out.rows.push_back(row);
    }
    return out;
}

} // namespace gigagap::gap
